#pragma once

// Scalar kernels every other module builds on: the exponent p = 2/q, the
// evaluation result type, Gamma/Beta, and a classical Bessel J oracle.

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pbessel/quad.hpp"

namespace pbessel {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A representation that exists only for some exponents (Poisson form, p-cosine).
class UnsupportedRepresentation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exponent p of the p-circle, always held through the integer q = 2/p.
class PExponent {
 public:
  static PExponent from_q(int q);
  /// Accepts "2/3", "1/2", "2", "1". Decimal literals are rejected.
  static PExponent parse(std::string_view text);

  int q() const { return q_; }
  double p() const { return 2.0 / q_; }
  quad p_quad() const { return quad(2) / q_; }
  bool q_odd() const { return q_ % 2 == 1; }

  // p as a reduced fraction num/den.
  int p_num() const { return q_odd() ? 2 : 1; }
  int p_den() const { return q_odd() ? q_ : q_ / 2; }
  std::string to_string() const;

  bool operator==(const PExponent& o) const { return q_ == o.q_; }

 private:
  explicit PExponent(int q) : q_(q) {}
  int q_;
};

enum class Method {
  series,
  double_integral,  // nested real integral over the p-disc quadrant
  poisson,
  axis_integral,
  asymptotic,
  order_raise,
  closed_form,  // classical J or an elementary transform
};

std::string_view method_name(Method m);

template <class T>
struct ValueWithError {
  T value{};
  double err_estimate = 0.0;
  Method method = Method::series;
  bool reliable = true;
};

using RealResult = ValueWithError<double>;
using ComplexResult = ValueWithError<std::complex<double>>;

double log_gamma(double x);
double beta(double a, double b);
double log_beta(double a, double b);

// binary128 counterparts; x > 0.
quad log_gamma_q(quad x);
quad log_beta_q(quad a, quad b);

/// Classical Bessel function of the first kind, omega >= -1/2, r >= 0.
/// Power series below r = 18, Hankel asymptotic expansion above.
double classical_bessel_j(double omega, double r);

namespace detail {
inline constexpr double kBesselSwitch = 18.0;
double bessel_j_series(double omega, double r);
double bessel_j_hankel(double omega, double r);
}  // namespace detail

}  // namespace pbessel
