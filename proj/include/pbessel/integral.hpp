#pragma once

// Real and complex integral representations of the p-Bessel functions. These
// take over from the series once r is large enough for the series to cancel
// away its accuracy.

#include <complex>
#include <functional>
#include <vector>

#include "pbessel/phi.hpp"
#include "pbessel/quadrature.hpp"

namespace pbessel {

struct IntegralMethodConfig {
  QuadratureSpec outer{QuadratureScheme::tanh_sinh, 1e-12, 1e-12, 10};
  QuadratureSpec inner{QuadratureScheme::tanh_sinh, 1e-13, 1e-13, 10};
  // split [0, 1] at the zeros of the cosine factors once their frequency
  // exceeds split_threshold
  bool oscillation_split = true;
  double split_threshold = 30.0;

  void validate() const;
};

/// Omega > 0: nested integral over u in [0, 1] (outer) and s in [0, 1] (inner).
/// The inner integral depends on u only through x1 (1 - u^p)^{1/p}; it is
/// replaced by a Chebyshev interpolant in that variable. At omega = 1 the
/// inner integral is elementary and used directly.
RealResult pbessel_double_integral(const PExponent& p, double omega, const DistortedAngle& phi,
                                   double r, const IntegralMethodConfig& cfg = {});

/// Omega = 0: single integral with weight (1 - u^p)^{1/p - 1}.
RealResult pbessel_order0_integral(const PExponent& p, const DistortedAngle& phi, double r,
                                   const IntegralMethodConfig& cfg = {});

/// Value on the coordinate axes (phi a multiple of pi/2).
RealResult pbessel_axis(const PExponent& p, double omega, double r,
                        const IntegralMethodConfig& cfg = {});

/// Order omega + gamma from order omega values:
/// r^g / (p^{g-1} Gamma(g)) int_0^1 base(tau r) tau^{(p-1)omega+1} (1-tau^p)^{g-1} dtau
RealResult order_raise(const PExponent& p, double omega_base, double gamma,
                       const DistortedAngle& phi, double r,
                       const std::function<double(double)>& base,
                       const IntegralMethodConfig& cfg = {});

/// Poisson-type integral over theta in [0, pi/2] with the p-cosine as kernel.
/// Needs 2/p odd.
ComplexResult pbessel_poisson(const PExponent& p, double omega, const DistortedAngle& phi,
                              std::complex<double> z, const IntegralMethodConfig& cfg = {});

/// int_0^1 cos(a u) (1 - u^p)^alpha du, alpha > -1.
QuadResult<double> cosine_transform(double a, double alpha, const PExponent& p,
                                    const QuadratureSpec& spec, bool split = true,
                                    double split_threshold = 30.0);

namespace detail {

// 1 - u^p given u and its distance g = 1 - u, accurate for small g
double one_minus_pow(double u, double g, double p);

// [0, 1] cut at u = (j + 1/2) pi / a and at the points where a1 (1-u^p)^{1/p}
// crosses (j + 1/2) pi
std::vector<double> oscillation_cuts(double a_lin, double a_curve, double p);

}  // namespace detail

}  // namespace pbessel
