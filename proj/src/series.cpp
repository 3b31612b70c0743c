#include "pbessel/series.hpp"

#include <algorithm>
#include <cmath>

namespace pbessel {

namespace detail {

SeriesSum sum_power_series(const std::function<quad(int)>& coeff, const QComplex& w,
                           const QComplex& front, quad tol, int k_limit) {
  SeriesSum out;
  const quad front_abs = front.abs();
  if (front_abs == 0) return out;
  QComplex wk(1);
  QComplex sum;
  quad max_pen = 0;
  quad prev = -1;
  quad tail = 0;
  bool converged = false;
  int k = 0;
  for (; k <= k_limit; ++k) {
    const quad c = coeff(k);
    const QComplex t = front * (wk * c);
    const quad t_abs = t.abs();
    sum += t;
    if (c != 0) {
      const quad kappa = 8 + k + qabs(logq(qabs(c)));
      max_pen = fmaxq(max_pen, t_abs * kappa);
    }
    // an exactly vanishing coefficient says nothing about the tail
    if (c == 0) {
      wk *= w;
      continue;
    }
    if (prev >= 0 && prev < tol / 10 && t_abs <= prev / 2) {
      tail = t_abs;
      converged = true;
      break;
    }
    prev = t_abs;
    wk *= w;
  }
  const quad penalty = kQuadEps * max_pen;
  out.value = sum;
  out.terms = k + 1;
  out.err = static_cast<double>(tail + penalty + sum.abs() * 1.2e-16Q);
  out.reliable = converged && penalty <= tol;
  if (!converged) out.err = INFINITY;
  return out;
}

}  // namespace detail

namespace {

void check_tol(double tol) {
  if (!(tol > 0)) throw DomainError("series tolerance must be positive");
}

void check_same_p(const PExponent& p, const DistortedAngle& phi) {
  if (!(p == phi.p())) throw DomainError("angle was built for a different p");
}

void check_off_cut(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("argument must be finite");
  if (z.imag() == 0 && z.real() <= 0) throw DomainError("argument lies on the cut (-inf, 0]");
}

RealResult to_real(const detail::SeriesSum& s) {
  return {static_cast<double>(s.value.re), s.err, Method::series, s.reliable};
}

ComplexResult to_complex(const detail::SeriesSum& s) {
  return {s.value.to_std(), s.err, Method::series, s.reliable};
}

// r^a for r >= 0 with 0^0 = 1
quad real_power(double r, quad a) {
  if (r == 0) {
    if (a == 0) return 1;
    if (a > 0) return 0;
    throw DomainError("negative power at r = 0");
  }
  return expq(a * logq(quad(r)));
}

}  // namespace

SeriesEvaluator::SeriesEvaluator(const DistortedAngle& phi, double omega)
    : phi_(phi), omega_(omega) {
  if (!(omega >= 0) || !std::isfinite(omega)) throw DomainError("order must be finite and >= 0");
  init();
}

SeriesEvaluator::SeriesEvaluator(const DistortedAngle& phi, double omega,
                                 detail::NegativeOrderTag)
    : phi_(phi), omega_(omega) {
  if (omega != -1.0 / phi.p().p()) throw DomainError("only the order -1/p is admitted here");
  init();
}

void SeriesEvaluator::init() {
  const quad q = phi_.p().q();
  const quad w = omega_;
  log_front_ = (2 + w) * logq(q) + logq(kQuadPi) - 2 * log_gamma_q(q / 2) - w * logq(2.0Q);
}

quad SeriesEvaluator::phi_value(int k) const {
  if (!table_ || table_->k_max() < k)
    table_ = cached_phi_table(phi_, std::max(k, table_ ? 2 * table_->k_max() : 64));
  return table_->value_q(k);
}

quad SeriesEvaluator::coefficient(int k) const {
  const quad q = phi_.p().q();
  while (static_cast<int>(coeffs_.size()) <= k) {
    const int j = static_cast<int>(coeffs_.size());
    const quad lc = log_front_ + logq(phi_value(j)) - log_gamma_q(j + 1) -
                    log_gamma_q(q * (j + 1) + quad(omega_)) - 2 * j * logq(2.0Q);
    coeffs_.push_back((j % 2 == 0 ? 1 : -1) * expq(lc));
  }
  return coeffs_[static_cast<size_t>(k)];
}

RealResult SeriesEvaluator::eval(double r, double tol) const {
  check_tol(tol);
  if (!(r >= 0) || !std::isfinite(r)) throw DomainError("radius must be finite and >= 0");
  const quad x = r;
  auto s = detail::sum_power_series([this](int k) { return coefficient(k); }, QComplex(x * x),
                                    QComplex(real_power(r, omega_)), tol);
  return to_real(s);
}

ComplexResult SeriesEvaluator::eval(std::complex<double> z, double tol) const {
  check_tol(tol);
  check_off_cut(z);
  const QComplex zq(z);
  auto s = detail::sum_power_series([this](int k) { return coefficient(k); }, zq * zq,
                                    principal_pow(zq, omega_), tol);
  return to_complex(s);
}

RealResult SeriesEvaluator::eval_weighted(double r, const std::function<quad(quad)>& weight,
                                          quad shift, double tol) const {
  check_tol(tol);
  if (!(r >= 0) || !std::isfinite(r)) throw DomainError("radius must be finite and >= 0");
  const quad x = r;
  auto coeff = [&](int k) { return coefficient(k) * weight(2 * k + quad(omega_)); };
  auto s = detail::sum_power_series(coeff, QComplex(x * x),
                                    QComplex(real_power(r, omega_ + shift)), tol);
  return to_real(s);
}

RealResult pbessel_series(const PExponent& p, double omega, const DistortedAngle& phi, double r,
                          double tol) {
  check_same_p(p, phi);
  return SeriesEvaluator(phi, omega).eval(r, tol);
}

RealResult pbessel_xy_series(const PExponent& p, double omega, const PlanePoint& x, double tol) {
  check_tol(tol);
  if (!(omega >= 0) || !std::isfinite(omega)) throw DomainError("order must be finite and >= 0");
  if (!std::isfinite(x.x1) || !std::isfinite(x.x2)) throw DomainError("point must be finite");
  const quad q = p.q();
  const quad w = omega;
  const double norm = x.p_norm(p);
  const quad front = real_power(norm, w) *
                     expq(2 * logq(q) - w * logq(p.p_quad()) - 2 * log_gamma_q(q / 2));
  const quad l1 = x.x1 != 0 ? 2 * logq(qabs(quad(x.x1))) : -HUGE_VALQ;
  const quad l2 = x.x2 != 0 ? 2 * logq(qabs(quad(x.x2))) : -HUGE_VALQ;
  std::vector<quad> a1, a2;  // log of Gamma(q(m+1/2)) x_i^{2m} / (2m)!
  auto extend = [&](std::vector<quad>& a, quad l, int m) {
    while (static_cast<int>(a.size()) <= m) {
      const int j = static_cast<int>(a.size());
      const quad pw = j == 0 ? quad(0) : j * l;
      a.push_back(log_gamma_q(q * (j + 0.5Q)) - log_gamma_q(2 * j + 1) + pw);
    }
  };
  std::vector<quad> terms;
  auto coeff = [&](int k) {
    extend(a1, l1, k);
    extend(a2, l2, k);
    terms.clear();
    for (int m1 = 0; m1 <= k; ++m1) {
      const quad lt = a1[m1] + a2[k - m1];
      if (lt != -HUGE_VALQ) terms.push_back(expq(lt));
    }
    std::sort(terms.begin(), terms.end(), [](quad u, quad v) { return u > v; });
    quad inner = 0;
    for (quad t : terms) inner += t;
    const quad c = inner * expq(-log_gamma_q(q * (k + 1) + w));
    return k % 2 == 0 ? c : -c;
  };
  return to_real(detail::sum_power_series(coeff, QComplex(1), QComplex(front), tol));
}

ComplexResult pbessel_complex(const PExponent& p, std::complex<double> omega,
                              const DistortedAngle& phi, std::complex<double> z, double tol) {
  check_same_p(p, phi);
  if (omega.imag() != 0) throw DomainError("orders with nonzero imaginary part are not supported");
  return SeriesEvaluator(phi, omega.real()).eval(z, tol);
}

PCosineEvaluator::PCosineEvaluator(const DistortedAngle& phi) : phi_(phi) {
  if (!phi.p().q_odd())
    throw UnsupportedRepresentation("p-cosine needs 2/p odd, got p = " + phi.p().to_string());
}

quad PCosineEvaluator::coefficient(int k) const {
  const quad q = phi_.p().q();
  while (static_cast<int>(coeffs_.size()) <= k) {
    const int j = static_cast<int>(coeffs_.size());
    if (!table_ || table_->k_max() < j)
      table_ = cached_phi_table(phi_, std::max(j, table_ ? 2 * table_->k_max() : 64));
    const quad lc = 0.5Q * logq(kQuadPi) + logq(table_->value_q(j)) - log_gamma_q(j + 1) -
                    log_gamma_q(q * (j + 0.5Q)) - 2 * j * logq(2.0Q);
    coeffs_.push_back((j % 2 == 0 ? 1 : -1) * expq(lc));
  }
  return coeffs_[static_cast<size_t>(k)];
}

detail::SeriesSum PCosineEvaluator::eval_q(const QComplex& z, quad tol) const {
  return detail::sum_power_series([this](int k) { return coefficient(k); }, z * z, QComplex(1),
                                  tol);
}

ComplexResult PCosineEvaluator::eval(std::complex<double> z, double tol) const {
  check_tol(tol);
  return to_complex(eval_q(QComplex(z), tol));
}

ComplexResult p_cosine(const PExponent& p, const DistortedAngle& phi, std::complex<double> z,
                       double tol) {
  check_same_p(p, phi);
  return PCosineEvaluator(phi).eval(z, tol);
}

ComplexResult p_sine(const PExponent& p, const DistortedAngle& phi, std::complex<double> z,
                     double tol) {
  check_same_p(p, phi);
  check_tol(tol);
  if (!p.q_odd()) throw UnsupportedRepresentation("p-sine needs 2/p odd, got p = " + p.to_string());
  const quad q = p.q();
  std::shared_ptr<const PhiTable> table;
  auto coeff = [&](int k) {
    if (!table || table->k_max() < k)
      table = cached_phi_table(phi, std::max(k, table ? 2 * table->k_max() : 64));
    const quad lc = 0.5Q * logq(kQuadPi) + logq(table->value_q(k)) - log_gamma_q(k + 1) -
                    log_gamma_q(q * (k + 1.5Q)) - (2 * k + 1) * logq(2.0Q);
    return (k % 2 == 0 ? 1 : -1) * expq(lc);
  };
  const QComplex zq(z);
  return to_complex(detail::sum_power_series(coeff, zq * zq, zq, tol));
}

ComplexResult pbessel_minus_inv_p(const PExponent& p, const DistortedAngle& phi,
                                  std::complex<double> z, double tol) {
  check_off_cut(z);
  auto c = p_cosine(p, phi, z, tol);
  const quad pq = p.p_quad();
  const quad pref =
      4 * sqrtq(kQuadPi) / (powq(pq, 2 - 1 / pq) * expq(2 * log_gamma_q(1 / pq)));
  const QComplex scale = principal_pow(QComplex(z), -1 / pq) * pref;
  const QComplex v = scale * QComplex(c.value);
  return {v.to_std(), static_cast<double>(scale.abs()) * c.err_estimate + 2.2e-16 * std::abs(v.to_std()),
          Method::series, c.reliable};
}

ComplexResult pbessel_inv_p(const PExponent& p, const DistortedAngle& phi, std::complex<double> z,
                            double tol) {
  check_off_cut(z);
  auto s = p_sine(p, phi, z, tol);
  const quad pq = p.p_quad();
  const quad pref =
      8 * sqrtq(kQuadPi) / (powq(pq, 2 + 1 / pq) * expq(2 * log_gamma_q(1 / pq)));
  const QComplex scale = principal_pow(QComplex(z), 1 / pq - 1) * pref;
  const QComplex v = scale * QComplex(s.value);
  return {v.to_std(), static_cast<double>(scale.abs()) * s.err_estimate + 2.2e-16 * std::abs(v.to_std()),
          Method::series, s.reliable};
}

namespace detail {

ComplexResult pbessel_minus_inv_p_series(const PExponent& p, const DistortedAngle& phi,
                                         std::complex<double> z, double tol) {
  check_same_p(p, phi);
  return SeriesEvaluator(phi, -1.0 / p.p(), NegativeOrderTag{}).eval(z, tol);
}

}  // namespace detail

}  // namespace pbessel
