#include "pbessel/quadrature.hpp"

#include <array>
#include <string>

namespace pbessel {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0) || !(rel_tol > 0))
    throw DomainError("quadrature tolerances must be positive");
  if (max_depth < 1 || max_depth > 40)
    throw DomainError("quadrature max_depth out of range: " + std::to_string(max_depth));
}

namespace detail {
namespace {

std::vector<TanhSinhNode> build_level(int level) {
  std::vector<TanhSinhNode> nodes;
  const double step = std::ldexp(1.0, -level);
  // level 0 holds t = 1, 2, ...; level L adds the odd multiples of 2^-L
  const int stride = level == 0 ? 1 : 2;
  for (int j = 1;; j += stride) {
    const double t = j * step;
    if (t > kTanhSinhTMax) break;
    const double s = 0.5 * M_PI * std::sinh(t);
    const double cs = std::cosh(s);
    const double gap = std::exp(-s) / cs;
    const double weight = 0.5 * M_PI * std::cosh(t) / (cs * cs);
    nodes.push_back({t, gap, weight});
  }
  return nodes;
}

}  // namespace

const std::vector<TanhSinhNode>& tanh_sinh_level(int level) {
  static const std::array<std::vector<TanhSinhNode>, kTanhSinhMaxLevel + 1> table = [] {
    std::array<std::vector<TanhSinhNode>, kTanhSinhMaxLevel + 1> t;
    for (int l = 0; l <= kTanhSinhMaxLevel; ++l) t[l] = build_level(l);
    return t;
  }();
  return table.at(static_cast<size_t>(level));
}

}  // namespace detail
}  // namespace pbessel
