#pragma once

// Tanh-sinh and adaptive Gauss-Kronrod (7/15) engines for real or complex
// integrands on finite intervals.
//
// An integrand may take either f(x) or f(x, x - a, b - x). The three-argument
// form receives the distances to both endpoints without cancellation, which
// matters for weights like (1 - u^p)^alpha near u = 1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <queue>
#include <type_traits>
#include <vector>

#include "pbessel/special.hpp"

namespace pbessel {

enum class QuadratureScheme { gauss_kronrod, tanh_sinh };

struct QuadratureSpec {
  QuadratureScheme scheme = QuadratureScheme::tanh_sinh;
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  int max_depth = 10;

  void validate() const;
};

template <class T>
struct QuadResult {
  T value{};
  double err = 0.0;
  bool converged = true;
  long evaluations = 0;
};

namespace detail {

struct TanhSinhNode {
  double t;
  double gap;  // 1 - x, x = tanh(pi/2 sinh t)
  double weight;
};

inline constexpr int kTanhSinhMaxLevel = 12;
inline constexpr double kTanhSinhTMax = 6.0;

// Nodes first appearing at the given level (t > 0 only).
const std::vector<TanhSinhNode>& tanh_sinh_level(int level);

template <class F>
decltype(auto) call3(F& f, double x, double from_a, double to_b) {
  if constexpr (std::is_invocable_v<F&, double, double, double>)
    return f(x, from_a, to_b);
  else
    return f(x);
}

template <class F>
using integrand_value_t = std::decay_t<decltype(call3(std::declval<F&>(), 0.0, 0.0, 0.0))>;

template <class T>
bool finite_value(const T& v) {
  if constexpr (std::is_arithmetic_v<T>)
    return std::isfinite(v);
  else
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

struct Gk15Rule {
  static constexpr double xk[8] = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr double wk[8] = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr double wg[4] = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

template <class T>
struct Gk15Panel {
  double a, b;
  T kronrod;
  double err;
  double l1;
  int depth;
  bool operator<(const Gk15Panel& o) const { return err < o.err; }
};

// Offsets of the panel [a, b] from the outer endpoints lo and hi are passed on
// so that three-argument integrands keep their accurate gaps.
template <class F>
auto gk15_panel(F& f, double a, double b, double lo, double hi, int depth) {
  using T = integrand_value_t<F>;
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double off_a = a - lo;
  const double off_b = hi - b;
  T kr{};
  T ga{};
  double l1 = 0;
  for (int i = 0; i < 8; ++i) {
    const double xi = Gk15Rule::xk[i];
    if (i == 7) {
      T v = call3(f, c, off_a + h, off_b + h);
      kr += Gk15Rule::wk[7] * v;
      ga += Gk15Rule::wg[3] * v;
      l1 += Gk15Rule::wk[7] * std::abs(v);
      continue;
    }
    T v1 = call3(f, c - h * xi, off_a + h * (1 - xi), off_b + h * (1 + xi));
    T v2 = call3(f, c + h * xi, off_a + h * (1 + xi), off_b + h * (1 - xi));
    kr += Gk15Rule::wk[i] * (v1 + v2);
    l1 += Gk15Rule::wk[i] * (std::abs(v1) + std::abs(v2));
    if (i % 2 == 1) ga += Gk15Rule::wg[i / 2] * (v1 + v2);
  }
  return Gk15Panel<T>{a, b, kr * h, std::abs((kr - ga) * h), l1 * h, depth};
}

}  // namespace detail

template <class F>
auto integrate_gauss_kronrod(F&& f, double a, double b, const QuadratureSpec& spec) {
  using T = detail::integrand_value_t<F>;
  QuadResult<T> out;
  if (a == b) return out;
  std::priority_queue<detail::Gk15Panel<T>> open;
  auto first = detail::gk15_panel(f, a, b, a, b, 0);
  T total = first.kronrod;
  double err = first.err;
  double l1 = first.l1;
  double frozen_err = 0;
  open.push(first);
  out.evaluations = 15;
  constexpr int kMaxPanels = 4000;
  int panels = 1;
  while (true) {
    const double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    if (err <= target || open.empty() || panels >= kMaxPanels) {
      out.value = total;
      out.err = err + 50 * 2.2e-16 * l1;
      out.converged = err <= target;
      return out;
    }
    auto worst = open.top();
    open.pop();
    if (worst.depth >= spec.max_depth) {
      frozen_err += worst.err;
      if (open.empty()) err = frozen_err;
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    auto lhs = detail::gk15_panel(f, worst.a, mid, a, b, worst.depth + 1);
    auto rhs = detail::gk15_panel(f, mid, worst.b, a, b, worst.depth + 1);
    total += (lhs.kronrod + rhs.kronrod) - worst.kronrod;
    err += (lhs.err + rhs.err) - worst.err;
    l1 += (lhs.l1 + rhs.l1) - worst.l1;
    open.push(lhs);
    open.push(rhs);
    out.evaluations += 30;
    ++panels;
  }
}

template <class F>
auto integrate_tanh_sinh(F&& f, double a, double b, const QuadratureSpec& spec) {
  using T = detail::integrand_value_t<F>;
  QuadResult<T> out;
  if (a == b) return out;
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const int max_level = std::min(spec.max_depth, detail::kTanhSinhMaxLevel);
  constexpr int kMinLevel = 3;

  auto right = [&](const detail::TanhSinhNode& n) {
    const double g = h * n.gap;
    return detail::call3(f, b - g, 2 * h - g, g);
  };
  auto left = [&](const detail::TanhSinhNode& n) {
    const double g = h * n.gap;
    return detail::call3(f, a + g, g, 2 * h - g);
  };

  T sum = detail::call3(f, c, h, h) * (M_PI / 2);
  double l1 = std::abs(sum);
  out.evaluations = 1;
  if (!detail::finite_value(sum)) {
    out.value = sum;
    out.converged = false;
    out.err = INFINITY;
    return out;
  }

  // Level 0 decides how far out each side has to be sampled.
  double t_cut_left = 0;
  double t_cut_right = 0;
  {
    const auto& lvl = detail::tanh_sinh_level(0);
    std::vector<T> lv(lvl.size()), rv(lvl.size());
    double biggest = std::abs(sum);
    for (size_t i = 0; i < lvl.size(); ++i) {
      lv[i] = left(lvl[i]) * lvl[i].weight;
      rv[i] = right(lvl[i]) * lvl[i].weight;
      out.evaluations += 2;
      if (detail::finite_value(lv[i])) biggest = std::max(biggest, std::abs(lv[i]));
      if (detail::finite_value(rv[i])) biggest = std::max(biggest, std::abs(rv[i]));
    }
    const double floor = 1e-18 * biggest;
    auto accept = [&](std::vector<T>& vals, double& t_cut) {
      for (size_t i = 0; i < lvl.size(); ++i) {
        if (!detail::finite_value(vals[i])) break;
        sum += vals[i];
        l1 += std::abs(vals[i]);
        t_cut = lvl[i].t;
        const bool rest_small = std::all_of(vals.begin() + i + 1, vals.end(), [&](const T& v) {
          return detail::finite_value(v) && std::abs(v) <= floor;
        });
        if (rest_small && std::abs(vals[i]) <= floor) break;
      }
    };
    accept(lv, t_cut_left);
    accept(rv, t_cut_right);
    t_cut_left += 0.5;
    t_cut_right += 0.5;
  }

  T prev = sum * h;
  double step = 1.0;
  for (int level = 1; level <= max_level; ++level) {
    step *= 0.5;
    for (const auto& n : detail::tanh_sinh_level(level)) {
      if (n.t <= t_cut_left) {
        T v = left(n) * n.weight;
        ++out.evaluations;
        if (detail::finite_value(v)) {
          sum += v;
          l1 += std::abs(v);
        }
      }
      if (n.t <= t_cut_right) {
        T v = right(n) * n.weight;
        ++out.evaluations;
        if (detail::finite_value(v)) {
          sum += v;
          l1 += std::abs(v);
        }
      }
    }
    const T cur = sum * (h * step);
    const double diff = std::abs(cur - prev);
    const double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(cur));
    out.value = cur;
    out.err = diff + 8 * 2.2e-16 * l1 * h * step;
    if (level >= kMinLevel && diff <= target) {
      out.converged = true;
      return out;
    }
    prev = cur;
  }
  out.converged = false;
  return out;
}

template <class F>
auto integrate(F&& f, double a, double b, const QuadratureSpec& spec) {
  if (spec.scheme == QuadratureScheme::gauss_kronrod)
    return integrate_gauss_kronrod(std::forward<F>(f), a, b, spec);
  return integrate_tanh_sinh(std::forward<F>(f), a, b, spec);
}

/// Integrates over [a, b] split at the given interior breakpoints, one
/// quadrature per panel, with compensated summation of the panel values.
template <class F>
auto integrate_panels(F&& f, const std::vector<double>& cuts, const QuadratureSpec& spec) {
  using T = detail::integrand_value_t<F>;
  QuadResult<T> out;
  if (cuts.size() < 2) return out;
  const double lo = cuts.front();
  const double hi = cuts.back();
  const size_t panels = cuts.size() - 1;
  QuadratureSpec local = spec;
  local.abs_tol = std::max(spec.abs_tol / static_cast<double>(panels), 1e-300);
  T sum{};
  T comp{};
  for (size_t i = 0; i < panels; ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    const double off_a = a - lo;
    const double off_b = hi - b;
    auto shifted = [&](double x, double da, double db) {
      return detail::call3(f, x, off_a + da, off_b + db);
    };
    auto r = integrate(shifted, a, b, local);
    // Kahan step
    const T y = r.value - comp;
    const T t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    out.err += r.err;
    out.converged = out.converged && r.converged;
    out.evaluations += r.evaluations;
  }
  out.value = sum;
  return out;
}

}  // namespace pbessel
