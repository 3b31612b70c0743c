#pragma once

// The angular coefficients Phi_k(p, phi) and the geometry of the p-circle
// parametrisation x = r (sgn cos phi |cos phi|^q, sgn sin phi |sin phi|^q).

#include <memory>
#include <vector>

#include "pbessel/special.hpp"

namespace pbessel {

/// Angle phi in [0, 2pi) together with its p-dependent powers.
/// |cos phi| or |sin phi| below 1e-15 is snapped to 0 so that the axes are
/// hit exactly.
class DistortedAngle {
 public:
  DistortedAngle(PExponent p, double phi);

  double phi() const { return phi_; }
  const PExponent& p() const { return p_; }

  quad cos2() const { return cos2_; }  // cos^2 phi
  quad sin2() const { return sin2_; }
  quad cos_pow() const { return cos_pow_; }  // |cos phi|^{4/p}
  quad sin_pow() const { return sin_pow_; }  // |sin phi|^{4/p}

  // |cos phi|^{2/p}, |sin phi|^{2/p}: the Cartesian point at radius 1.
  double x1_unit() const { return x1_unit_; }
  double x2_unit() const { return x2_unit_; }
  int cos_sign() const { return cos_sign_; }
  int sin_sign() const { return sin_sign_; }

  bool on_x_axis() const { return sin2_ == 0; }
  bool on_y_axis() const { return cos2_ == 0; }

 private:
  PExponent p_;
  double phi_;
  quad cos2_, sin2_, cos_pow_, sin_pow_;
  double x1_unit_, x2_unit_;
  int cos_sign_, sin_sign_;
};

struct PlanePoint {
  double x1 = 0;
  double x2 = 0;

  static PlanePoint from_polar(double r, const DistortedAngle& phi);
  /// (|x1|^p + |x2|^p)^{1/p}
  double p_norm(const PExponent& p) const;
};

/// Phi_k for k = 0..k_max, built from the Beta-ratio form in log space and
/// stored in binary128 (the values overflow double for small p).
class PhiTable {
 public:
  PhiTable(const DistortedAngle& phi, int k_max);

  int k_max() const { return static_cast<int>(values_.size()) - 1; }
  quad value_q(int k) const { return values_.at(static_cast<size_t>(k)); }
  double value(int k) const { return static_cast<double>(value_q(k)); }
  const DistortedAngle& angle() const { return angle_; }

 private:
  DistortedAngle angle_;
  std::vector<quad> values_;
};

/// Shared, lazily extended tables keyed by (q, phi). Safe to call from
/// several threads.
std::shared_ptr<const PhiTable> cached_phi_table(const DistortedAngle& phi, int k_needed);

double phi_beta_form(const PExponent& p, int k, double phi);
double phi_gamma_form(const PExponent& p, int k, double phi);

namespace detail {
quad phi_beta_form_q(const DistortedAngle& phi, int k);
quad phi_gamma_form_q(const DistortedAngle& phi, int k);
}  // namespace detail

}  // namespace pbessel
