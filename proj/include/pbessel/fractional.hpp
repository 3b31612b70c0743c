#pragma once

// Erdelyi-Kober type fractional integral and derivative with exponent p:
//
//   I^g_eta f(r) = p / Gamma(g) int_0^1 tau^{p(eta+1)-1} f(tau r) (1 - tau^p)^{g-1} dtau
//   D^g_eta f(r) = r^{-p eta} (1/(p r^{p-1})) d/dr [ r^{p(1+eta)} I^{1-g}_{eta+g} f(r) ]
//
// Each operator has two implementations: quadrature plus finite differences
// for arbitrary f, and a term-wise one for f a p-Bessel function, where every
// series term r^a is mapped by an explicit Gamma ratio.

#include <functional>

#include "pbessel/quadrature.hpp"
#include "pbessel/series.hpp"

namespace pbessel {

using RealFunction = std::function<double(double)>;

struct EKParams {
  double gamma;
  double eta;
  PExponent p;
};

struct FractionalConfig {
  QuadratureSpec quad{QuadratureScheme::tanh_sinh, 1e-15, 1e-15, 12};
  // f(t) ~ t^a as t -> 0; used to reject non-integrable combinations
  double f_exponent_at_zero = 0;
};

/// eta(p, omega) = (1 - 1/p) omega + 2/p - 2
double ode_eta(const PExponent& p, double omega);

RealResult ek_integral(const RealFunction& f, const EKParams& params, double r,
                       const FractionalConfig& cfg = {});

/// 0 < gamma < 1. The derivative comes from central differences at steps h
/// and h/2 around r, h = max(1e-4, 1e-3 r), combined by one Richardson step.
RealResult ek_derivative(const RealFunction& f, const EKParams& params, double r,
                         const FractionalConfig& cfg = {});

/// gamma = 1 read as two nested first derivatives:
/// r^{-p eta} ((1/(p r^{p-1})) d/dr)^2 [ r^{p(1+eta)} I^1_{eta+1} f ].
RealResult ek_derivative_unit(const RealFunction& f, double eta, const PExponent& p, double r,
                              const FractionalConfig& cfg = {});

// Images of the monomial r^a.
double ek_integral_monomial(double a, const EKParams& params, double r);
double ek_derivative_monomial(double a, const EKParams& params, double r);
double ek_derivative_unit_monomial(double a, double eta, const PExponent& p, double r);

// Term-wise images of the order-omega p-Bessel function.
RealResult ek_integral_termwise(const DistortedAngle& phi, double omega, const EKParams& params,
                                double r);
RealResult ek_derivative_termwise(const DistortedAngle& phi, double omega, const EKParams& params,
                                  double r);
RealResult ek_derivative_unit_termwise(const DistortedAngle& phi, double omega, double eta,
                                       double r);

struct Residual {
  double residual = 0;  // |lhs - rhs|
  double scale = 1;     // what the residual is compared against
  bool reliable = true;
  double lhs = 0;
  double rhs = 0;

  double relative() const { return residual / scale; }
};

/// I^g_eta J_omega = (p/r)^g J_{omega+g}, eta = (1-1/p) omega + 2/p - 1.
/// scale = max(1, |J_{omega+g}|).
Residual verify_ek_integral_identity(const PExponent& p, double omega, double gamma,
                                     const DistortedAngle& phi, double r,
                                     const FractionalConfig& cfg = {});

/// D^g_eta J_{omega+g} = (r/p)^g J_omega, eta = (1-1/p) omega + (2-g)/p - 1,
/// 0 < g < 1. scale = max(1, |(r/p)^g J_omega|).
Residual verify_ek_derivative_identity(const PExponent& p, double omega, double gamma,
                                       const DistortedAngle& phi, double r,
                                       const FractionalConfig& cfg = {});

/// d/dr[r^{1+(p-1)omega} J_{omega+1}] = r^{1+(p-1)omega} J_omega with the left
/// side from Richardson-extrapolated central differences of step h_rel max(1, r).
/// scale = max(1, |rhs|).
Residual verify_order_lower(const PExponent& p, double omega, const DistortedAngle& phi, double r,
                            double h_rel = 1e-3);

/// Residual of p r^p D^1 u + r d/dr[(I^1 - E) u] + (p-1)(omega-2)(I^1 - E) u
/// for u = J_omega, D^1 and I^1 taken at eta(p, omega) and eta(p, omega) + 1.
/// scale = largest of the three term magnitudes.
Residual verify_fractional_ode(const PExponent& p, double omega, const DistortedAngle& phi,
                               double r, const FractionalConfig& cfg = {});

}  // namespace pbessel
