#include "pbessel/integral.hpp"

#include <algorithm>
#include <cmath>

#include "pbessel/series.hpp"

namespace pbessel {

void IntegralMethodConfig::validate() const {
  outer.validate();
  inner.validate();
  if (inner.abs_tol > outer.abs_tol / 10 || inner.rel_tol > outer.rel_tol / 10)
    throw DomainError("inner quadrature tolerances must be at most outer / 10");
  if (!(split_threshold > 0)) throw DomainError("split_threshold must be positive");
}

namespace detail {

double one_minus_pow(double u, double g, double p) {
  if (g < 0.5) return -std::expm1(p * std::log1p(-g));
  return 1.0 - std::pow(u, p);
}

std::vector<double> oscillation_cuts(double a_lin, double a_curve, double p) {
  std::vector<double> cuts{0.0, 1.0};
  if (a_lin > 0) {
    for (int j = 0;; ++j) {
      const double u = (j + 0.5) * M_PI / a_lin;
      if (u >= 1) break;
      cuts.push_back(u);
    }
  }
  if (a_curve > 0) {
    for (int j = 0;; ++j) {
      const double v = (j + 0.5) * M_PI / a_curve;
      if (v >= 1) break;
      cuts.push_back(std::pow(-std::expm1(p * std::log(v)), 1.0 / p));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> out;
  for (double c : cuts) {
    if (!out.empty() && c - out.back() < 1e-12) continue;
    out.push_back(c);
  }
  if (out.back() != 1.0) {
    if (1.0 - out.back() < 1e-12)
      out.back() = 1.0;
    else
      out.push_back(1.0);
  }
  return out;
}

}  // namespace detail

namespace {

bool wants_split(const IntegralMethodConfig& cfg, double freq) {
  return cfg.oscillation_split && freq > cfg.split_threshold;
}

// int_0^1 (1 - u^p)^beta du = B(1/p, beta + 1) / p
double weight_mass(double p, double b) { return b > -1 ? beta(1 / p, b + 1) / p : INFINITY; }

// Chebyshev interpolant of K(y), y in [-1, 1], on first-kind nodes.
class ChebyshevFit {
 public:
  template <class F>
  ChebyshevFit(F&& k, int n) : c_(static_cast<size_t>(n)) {
    std::vector<double> vals(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) vals[j] = k(std::cos(M_PI * (j + 0.5) / n));
    for (int m = 0; m < n; ++m) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += vals[j] * std::cos(M_PI * m * (j + 0.5) / n);
      c_[m] = 2.0 * s / n;
    }
    c_[0] *= 0.5;
  }

  double operator()(double y) const {
    double b1 = 0, b2 = 0;
    for (size_t m = c_.size(); m-- > 1;) {
      const double b0 = 2 * y * b1 - b2 + c_[m];
      b2 = b1;
      b1 = b0;
    }
    return y * b1 - b2 + c_[0];
  }

  // largest of the last four coefficients
  double tail() const {
    double t = 0;
    for (size_t m = c_.size() - std::min<size_t>(4, c_.size()); m < c_.size(); ++m)
      t = std::max(t, std::abs(c_[m]));
    return t;
  }

 private:
  std::vector<double> c_;
};

std::vector<double> unit_cuts(const IntegralMethodConfig& cfg, double lin, double curve, double p) {
  if (wants_split(cfg, std::max(lin, curve))) return detail::oscillation_cuts(lin, curve, p);
  return {0.0, 1.0};
}

}  // namespace

QuadResult<double> cosine_transform(double a, double alpha, const PExponent& p,
                                    const QuadratureSpec& spec, bool split,
                                    double split_threshold) {
  if (!(alpha > -1)) throw DomainError("cosine_transform needs alpha > -1");
  const double pp = p.p();
  auto f = [&](double u, double, double g) {
    const double w = detail::one_minus_pow(u, g, pp);
    return std::cos(a * u) * std::pow(w, alpha);
  };
  const double aa = std::abs(a);
  if (split && aa > split_threshold)
    return integrate_panels(f, detail::oscillation_cuts(aa, 0, pp), spec);
  return integrate(f, 0.0, 1.0, spec);
}

RealResult pbessel_double_integral(const PExponent& p, double omega, const DistortedAngle& phi,
                                   double r, const IntegralMethodConfig& cfg) {
  cfg.validate();
  if (!(omega > 0) || !std::isfinite(omega)) throw DomainError("double integral needs omega > 0");
  if (!(r >= 0) || !std::isfinite(r)) throw DomainError("radius must be finite and >= 0");
  if (!(p == phi.p())) throw DomainError("angle was built for a different p");
  RealResult out{0.0, 0.0, Method::double_integral, true};
  if (r == 0) return out;
  const double pp = p.p();
  const double q = p.q();
  const double x1 = r * phi.x1_unit();
  const double x2 = r * phi.x2_unit();
  const double pref = std::exp(2 * std::log(q) + omega * std::log(r) - (omega - 1) * std::log(pp) -
                               log_gamma(omega) - 2 * log_gamma(1 / pp));

  // Inner integral G(a) = int_0^1 cos(a s^{1/p}) s^{1/p-1} (1-s)^{omega-1} ds
  //                     = p int_0^1 cos(a t) (1 - t^p)^{omega-1} dt.
  // It is even and entire in a, so it is interpolated in y = 2 v^2 - 1 with
  // a = x1 v.
  double inner_err = 0;
  bool inner_ok = true;
  double cheb_err = 0;
  std::function<double(double)> h_of_w;  // G(x1 v) as a function of w = v^p
  ChebyshevFit fit([](double) { return 0.0; }, 1);
  if (omega == 1.0) {
    h_of_w = [x1, pp](double w) {
      const double a = x1 * std::pow(w, 1 / pp);
      return a < 1e-8 ? pp * (1 - a * a / 6) : pp * std::sin(a) / a;
    };
  } else if (x1 == 0) {
    auto g0 = cosine_transform(0, omega - 1, p, cfg.inner, false);
    inner_err = pp * g0.err;
    inner_ok = g0.converged;
    const double value = pp * g0.value;
    h_of_w = [value](double) { return value; };
  } else {
    auto g = [&](double y) {
      const double v = std::sqrt(std::max(0.0, 0.5 * (y + 1)));
      auto res = cosine_transform(x1 * v, omega - 1, p, cfg.inner, cfg.oscillation_split,
                                  cfg.split_threshold);
      inner_err = std::max(inner_err, pp * res.err);
      inner_ok = inner_ok && res.converged;
      return pp * res.value;
    };
    int n = 32 + static_cast<int>(std::ceil(1.5 * x1));
    constexpr int kMaxNodes = 8192;
    while (true) {
      fit = ChebyshevFit(g, n);
      cheb_err = fit.tail();
      if (cheb_err <= 1e-13 || n >= kMaxNodes) break;
      n *= 2;
    }
    if (cheb_err > 1e-11) inner_ok = false;
    h_of_w = [&fit, pp](double w) { return fit(2 * std::pow(w, 2 / pp) - 1); };
  }

  const double alpha = 1 / pp + omega - 1;
  auto outer = [&](double u, double, double gap) {
    const double w = detail::one_minus_pow(u, gap, pp);
    return h_of_w(w) * std::cos(x2 * u) * std::pow(w, alpha);
  };
  auto res = integrate_panels(outer, unit_cuts(cfg, x2, x1, pp), cfg.outer);
  const double mass = weight_mass(pp, alpha);
  out.value = pref * res.value;
  out.err_estimate = std::abs(pref) * (res.err + (cheb_err + inner_err) * mass) +
                     2.2e-16 * std::abs(out.value);
  out.reliable = res.converged && inner_ok;
  return out;
}

RealResult pbessel_order0_integral(const PExponent& p, const DistortedAngle& phi, double r,
                                   const IntegralMethodConfig& cfg) {
  cfg.validate();
  if (!(r >= 0) || !std::isfinite(r)) throw DomainError("radius must be finite and >= 0");
  if (!(p == phi.p())) throw DomainError("angle was built for a different p");
  const double pp = p.p();
  const double x1 = r * phi.x1_unit();
  const double x2 = r * phi.x2_unit();
  const double pref = 4 / (pp * std::exp(2 * log_gamma(1 / pp)));
  auto f = [&](double u, double, double gap) {
    const double w = detail::one_minus_pow(u, gap, pp);
    return std::cos(x1 * std::pow(w, 1 / pp)) * std::cos(x2 * u) * std::pow(w, 1 / pp - 1);
  };
  auto res = integrate_panels(f, unit_cuts(cfg, x2, x1, pp), cfg.outer);
  RealResult out{pref * res.value, 0.0, Method::double_integral, res.converged};
  out.err_estimate = pref * res.err + 2.2e-16 * std::abs(out.value);
  return out;
}

RealResult pbessel_axis(const PExponent& p, double omega, double r,
                        const IntegralMethodConfig& cfg) {
  cfg.validate();
  if (!(omega >= 0) || !std::isfinite(omega)) throw DomainError("order must be finite and >= 0");
  if (!(r >= 0) || !std::isfinite(r)) throw DomainError("radius must be finite and >= 0");
  const double pp = p.p();
  const double q = p.q();
  RealResult out{0.0, 0.0, Method::axis_integral, true};
  if (r == 0 && omega > 0) return out;
  const double log_r = r == 0 ? 0.0 : std::log(r);
  const double pref = std::exp(2 * std::log(q) + omega * log_r - (omega - 1) * std::log(pp) -
                               log_gamma(omega + 1 / pp) - log_gamma(1 / pp));
  auto res = cosine_transform(r, 1 / pp + omega - 1, p, cfg.outer, cfg.oscillation_split,
                              cfg.split_threshold);
  out.value = pref * res.value;
  out.err_estimate = pref * res.err + 2.2e-16 * std::abs(out.value);
  out.reliable = res.converged;
  return out;
}

RealResult order_raise(const PExponent& p, double omega_base, double gamma,
                       const DistortedAngle& phi, double r,
                       const std::function<double(double)>& base,
                       const IntegralMethodConfig& cfg) {
  cfg.validate();
  if (!(gamma > 0) || !std::isfinite(gamma)) throw DomainError("order_raise needs gamma > 0");
  if (!(omega_base >= 0)) throw DomainError("order must be >= 0");
  if (!(r > 0) || !std::isfinite(r)) throw DomainError("order_raise needs r > 0");
  if (!(p == phi.p())) throw DomainError("angle was built for a different p");
  const double pp = p.p();
  const double pref = std::exp(gamma * std::log(r) - (gamma - 1) * std::log(pp) - log_gamma(gamma));
  const double e = (pp - 1) * omega_base + 1;
  auto f = [&](double tau, double, double gap) {
    const double w = detail::one_minus_pow(tau, gap, pp);
    return base(tau * r) * std::pow(tau, e) * std::pow(w, gamma - 1);
  };
  std::vector<double> cuts{0.0, 1.0};
  if (wants_split(cfg, r)) {
    cuts.pop_back();
    for (int j = 1; j * M_PI < r; ++j) cuts.push_back(j * M_PI / r);
    if (1.0 - cuts.back() < 1e-12) cuts.pop_back();
    cuts.push_back(1.0);
  }
  auto res = integrate_panels(f, cuts, cfg.outer);
  RealResult out{pref * res.value, 0.0, Method::order_raise, res.converged};
  out.err_estimate = pref * res.err + 2.2e-16 * std::abs(out.value);
  return out;
}

ComplexResult pbessel_poisson(const PExponent& p, double omega, const DistortedAngle& phi,
                              std::complex<double> z, const IntegralMethodConfig& cfg) {
  cfg.validate();
  if (!p.q_odd())
    throw UnsupportedRepresentation("Poisson-type form needs 2/p odd, got p = " + p.to_string());
  if (!(omega >= 0) || !std::isfinite(omega)) throw DomainError("order must be finite and >= 0");
  if (!(p == phi.p())) throw DomainError("angle was built for a different p");
  if (z.imag() == 0 && z.real() <= 0) throw DomainError("argument lies on the cut (-inf, 0]");
  const int q = p.q();
  const quad pq = p.p_quad();
  const quad lead = sqrtq(kQuadPi) * 2 *
                    expq((2 + quad(omega)) * logq(quad(q)) - 2 * log_gamma_q(1 / pq) -
                         log_gamma_q(quad(omega) + 1 / pq));
  const QComplex front = principal_pow(QComplex(z / 2.0), omega) * lead;

  PCosineEvaluator kernel(phi);
  bool kernel_ok = true;
  const QComplex zq(z);
  auto f = [&](double, double from0, double to_half_pi) {
    const double s = std::sin(from0);
    const double c = std::sin(to_half_pi);
    const quad cq = powq(quad(c), q);
    auto k = kernel.eval_q(zq * cq, 1e-18Q);
    kernel_ok = kernel_ok && k.reliable;
    double w = std::pow(c * s, q - 1);
    if (omega != 0) w *= std::pow(s, 2 * omega);
    return k.value.to_std() * w;
  };
  const double mod = std::abs(z);
  std::vector<double> cuts{0.0, M_PI / 2};
  if (wants_split(cfg, mod)) {
    cuts = {0.0};
    std::vector<double> inner;
    for (int j = 0; (j + 0.5) * M_PI < mod; ++j)
      inner.push_back(std::acos(std::pow((j + 0.5) * M_PI / mod, 1.0 / q)));
    std::sort(inner.begin(), inner.end());
    for (double t : inner)
      if (t - cuts.back() > 1e-12) cuts.push_back(t);
    cuts.push_back(M_PI / 2);
  }
  auto res = integrate_panels(f, cuts, cfg.outer);
  const QComplex v = front * QComplex(res.value);
  ComplexResult out{v.to_std(), 0.0, Method::poisson, res.converged && kernel_ok};
  out.err_estimate = static_cast<double>(front.abs()) * res.err + 2.2e-16 * std::abs(out.value);
  return out;
}

}  // namespace pbessel
