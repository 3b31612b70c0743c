#pragma once

// Power-series evaluation of the p-Bessel functions and of the p-cosine and
// p-sine. Terms are accumulated in binary128; the error estimate carries the
// certified tail plus a cancellation penalty eps_q * max|t_k| * kappa_k, where
// kappa_k bounds the relative error of the k-th term.

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "pbessel/phi.hpp"

namespace pbessel {

inline constexpr double kDefaultSeriesTol = 1e-14;

namespace detail {

struct SeriesSum {
  QComplex value;
  double err = 0;
  bool reliable = true;
  int terms = 0;
};

// front * sum_k coeff(k) w^k with the truncation certificate. `coeff` must
// return the binary128 coefficient; it is called with increasing k.
SeriesSum sum_power_series(const std::function<quad(int)>& coeff, const QComplex& w,
                           const QComplex& front, quad tol, int k_limit = 4000);

struct NegativeOrderTag {};

}  // namespace detail

/// Coefficients of the order-omega series for one (p, phi), extended lazily.
/// Not thread-safe; use one evaluator per thread.
class SeriesEvaluator {
 public:
  SeriesEvaluator(const DistortedAngle& phi, double omega);
  // admits omega = -1/p only; used by the p-cosine reduction and its tests
  SeriesEvaluator(const DistortedAngle& phi, double omega, detail::NegativeOrderTag);

  RealResult eval(double r, double tol = kDefaultSeriesTol) const;
  ComplexResult eval(std::complex<double> z, double tol = kDefaultSeriesTol) const;

  /// sum_k c_k weight(a_k) r^{a_k + shift}, a_k = 2k + omega. The term-wise
  /// image of the series under an operator acting diagonally on monomials.
  RealResult eval_weighted(double r, const std::function<quad(quad)>& weight, quad shift,
                           double tol = kDefaultSeriesTol) const;

  /// coefficient of r^{2k+omega}
  quad coefficient(int k) const;
  double omega() const { return omega_; }
  const DistortedAngle& angle() const { return phi_; }

 private:
  void init();
  quad phi_value(int k) const;

  DistortedAngle phi_;
  double omega_;
  quad log_front_ = 0;
  mutable std::shared_ptr<const PhiTable> table_;
  mutable std::vector<quad> coeffs_;
};

RealResult pbessel_series(const PExponent& p, double omega, const DistortedAngle& phi, double r,
                          double tol = kDefaultSeriesTol);

RealResult pbessel_xy_series(const PExponent& p, double omega, const PlanePoint& x,
                             double tol = kDefaultSeriesTol);

/// Principal-branch continuation to z off (-inf, 0]. Orders with a nonzero
/// imaginary part are rejected.
ComplexResult pbessel_complex(const PExponent& p, std::complex<double> omega,
                              const DistortedAngle& phi, std::complex<double> z,
                              double tol = kDefaultSeriesTol);

ComplexResult p_cosine(const PExponent& p, const DistortedAngle& phi, std::complex<double> z,
                       double tol = kDefaultSeriesTol);
ComplexResult p_sine(const PExponent& p, const DistortedAngle& phi, std::complex<double> z,
                     double tol = kDefaultSeriesTol);

/// Order -1/p function expressed through the p-cosine, z off the cut.
ComplexResult pbessel_minus_inv_p(const PExponent& p, const DistortedAngle& phi,
                                  std::complex<double> z, double tol = kDefaultSeriesTol);
/// Order 1/p function expressed through the p-sine, z off the cut.
ComplexResult pbessel_inv_p(const PExponent& p, const DistortedAngle& phi, std::complex<double> z,
                            double tol = kDefaultSeriesTol);

/// Reusable p-cosine for many arguments at one (p, phi). Not thread-safe.
class PCosineEvaluator {
 public:
  explicit PCosineEvaluator(const DistortedAngle& phi);
  ComplexResult eval(std::complex<double> z, double tol = kDefaultSeriesTol) const;
  detail::SeriesSum eval_q(const QComplex& z, quad tol) const;

 private:
  quad coefficient(int k) const;
  DistortedAngle phi_;
  mutable std::shared_ptr<const PhiTable> table_;
  mutable std::vector<quad> coeffs_;
};

namespace detail {
// direct order -1/p series at a point off the cut
ComplexResult pbessel_minus_inv_p_series(const PExponent& p, const DistortedAngle& phi,
                                         std::complex<double> z, double tol = kDefaultSeriesTol);
}  // namespace detail

}  // namespace pbessel
