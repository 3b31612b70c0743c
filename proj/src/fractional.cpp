#include "pbessel/fractional.hpp"

#include <cmath>

namespace pbessel {

namespace {

struct Derivative {
  double value;
  double spread;  // |D(h/2) - D(h)|
};

// Central differences at h and h/2 combined by one Richardson step.
template <class G>
Derivative first_derivative(G& g, double r, double h) {
  const double gp = g(r + h), gm = g(r - h);
  const double hp = g(r + h / 2), hm = g(r - h / 2);
  const double d_h = (gp - gm) / (2 * h);
  const double d_h2 = (hp - hm) / h;
  return {(4 * d_h2 - d_h) / 3, std::abs(d_h2 - d_h)};
}

template <class G>
Derivative second_derivative(G& g, double r, double h) {
  const double g0 = g(r);
  const double d_h = (g(r + h) - 2 * g0 + g(r - h)) / (h * h);
  const double d_h2 = (g(r + h / 2) - 2 * g0 + g(r - h / 2)) / (h * h / 4);
  return {(4 * d_h2 - d_h) / 3, std::abs(d_h2 - d_h)};
}

double first_step(double r) { return std::max(1e-4, 1e-3 * r); }
double second_step(double r) { return std::max(1e-3, 1e-2 * r); }

bool spread_ok(const Derivative& d) { return d.spread <= 1e-4 * std::max(1.0, std::abs(d.value)); }

void check_radius(double r) {
  if (!(r > 0) || !std::isfinite(r)) throw DomainError("fractional operators need r > 0");
}

quad gamma_ratio(quad top, quad bottom) { return expq(log_gamma_q(top) - log_gamma_q(bottom)); }

}  // namespace

double ode_eta(const PExponent& p, double omega) {
  const double pp = p.p();
  return (1 - 1 / pp) * omega + 2 / pp - 2;
}

RealResult ek_integral(const RealFunction& f, const EKParams& params, double r,
                       const FractionalConfig& cfg) {
  check_radius(r);
  const double g = params.gamma;
  if (!(g > 0)) throw DomainError("fractional integral needs gamma > 0");
  const double pp = params.p.p();
  const double e = pp * (params.eta + 1) - 1;
  if (!(e + 1 + cfg.f_exponent_at_zero > 0))
    throw DomainError("integrand is not integrable at tau = 0 for this eta");
  auto integrand = [&](double tau, double, double gap) {
    const double w = -std::expm1(pp * std::log1p(-gap));
    const double weight = g == 1 ? 1.0 : std::pow(gap < 0.5 ? w : 1 - std::pow(tau, pp), g - 1);
    return std::pow(tau, e) * f(tau * r) * weight;
  };
  auto res = integrate(integrand, 0.0, 1.0, cfg.quad);
  const double scale = pp * std::exp(-log_gamma(g));
  RealResult out{scale * res.value, scale * res.err, Method::series, res.converged};
  return out;
}

RealResult ek_derivative(const RealFunction& f, const EKParams& params, double r,
                         const FractionalConfig& cfg) {
  check_radius(r);
  const double g = params.gamma;
  if (!(g > 0 && g < 1)) throw DomainError("fractional derivative needs 0 < gamma < 1");
  const double h = first_step(r);
  if (r - h <= 0) throw DomainError("difference stencil would cross r = 0");
  const double pp = params.p.p();
  const EKParams inner{1 - g, params.eta + g, params.p};
  bool ok = true;
  double quad_err = 0;
  auto big_g = [&](double rho) {
    auto v = ek_integral(f, inner, rho, cfg);
    ok = ok && v.reliable;
    quad_err = std::max(quad_err, v.err_estimate * std::pow(rho, pp * (1 + params.eta)));
    return std::pow(rho, pp * (1 + params.eta)) * v.value;
  };
  const Derivative d = first_derivative(big_g, r, h);
  const double front = std::pow(r, -pp * params.eta) / (pp * std::pow(r, pp - 1));
  RealResult out{front * d.value, 0.0, Method::series, ok && spread_ok(d)};
  out.err_estimate = std::abs(front) * (d.spread / 15 + quad_err / h);
  return out;
}

RealResult ek_derivative_unit(const RealFunction& f, double eta, const PExponent& p, double r,
                              const FractionalConfig& cfg) {
  check_radius(r);
  const double h1 = first_step(r);
  const double h2 = second_step(r);
  if (r - h2 <= 0) throw DomainError("difference stencil would cross r = 0");
  const double pp = p.p();
  const EKParams inner{1.0, eta + 1, p};
  bool ok = true;
  double quad_err = 0;
  auto big_g = [&](double rho) {
    auto v = ek_integral(f, inner, rho, cfg);
    ok = ok && v.reliable;
    quad_err = std::max(quad_err, v.err_estimate * std::pow(rho, pp * (1 + eta)));
    return std::pow(rho, pp * (1 + eta)) * v.value;
  };
  const Derivative d1 = first_derivative(big_g, r, h1);
  const Derivative d2 = second_derivative(big_g, r, h2);
  const double inner_d = ((1 - pp) * std::pow(r, -pp) * d1.value + std::pow(r, 1 - pp) * d2.value) / pp;
  const double front = std::pow(r, -pp * eta) / (pp * std::pow(r, pp - 1));
  RealResult out{front * inner_d, 0.0, Method::series, ok && spread_ok(d1) && spread_ok(d2)};
  out.err_estimate = std::abs(front) / pp *
                     (std::abs(1 - pp) * std::pow(r, -pp) * (d1.spread / 15 + quad_err / h1) +
                      std::pow(r, 1 - pp) * (d2.spread / 15 + 4 * quad_err / (h2 * h2)));
  return out;
}

double ek_integral_monomial(double a, const EKParams& params, double r) {
  const double base = params.eta + 1 + a / params.p.p();
  if (!(base > 0)) throw DomainError("monomial image undefined: eta + 1 + a/p <= 0");
  return std::exp(log_gamma(base) - log_gamma(base + params.gamma)) * std::pow(r, a);
}

double ek_derivative_monomial(double a, const EKParams& params, double r) {
  const double base = params.eta + 1 + a / params.p.p();
  if (!(base > 0)) throw DomainError("monomial image undefined: eta + 1 + a/p <= 0");
  return std::exp(log_gamma(base + params.gamma) - log_gamma(base)) * std::pow(r, a);
}

double ek_derivative_unit_monomial(double a, double eta, const PExponent& p, double r) {
  const double pp = p.p();
  const double b = pp * (1 + eta) + a;
  return b * (b - pp) / (pp * pp * (eta + 2 + a / pp)) * std::pow(r, a - pp);
}

RealResult ek_integral_termwise(const DistortedAngle& phi, double omega, const EKParams& params,
                                double r) {
  check_radius(r);
  const quad q = params.p.q();
  const quad eta = params.eta, g = params.gamma;
  SeriesEvaluator ev(phi, omega);
  auto w = [&](quad a) { return gamma_ratio(eta + 1 + a * q / 2, eta + 1 + a * q / 2 + g); };
  return ev.eval_weighted(r, w, 0);
}

RealResult ek_derivative_termwise(const DistortedAngle& phi, double omega, const EKParams& params,
                                  double r) {
  check_radius(r);
  const quad q = params.p.q();
  const quad eta = params.eta, g = params.gamma;
  SeriesEvaluator ev(phi, omega);
  auto w = [&](quad a) { return gamma_ratio(eta + 1 + a * q / 2 + g, eta + 1 + a * q / 2); };
  return ev.eval_weighted(r, w, 0);
}

RealResult ek_derivative_unit_termwise(const DistortedAngle& phi, double omega, double eta,
                                       double r) {
  check_radius(r);
  const quad pq = phi.p().p_quad();
  const quad e = eta;
  SeriesEvaluator ev(phi, omega);
  auto w = [&](quad a) {
    const quad b = pq * (1 + e) + a;
    return b * (b - pq) / (pq * pq * (e + 2 + a / pq));
  };
  return ev.eval_weighted(r, w, -pq);
}

Residual verify_ek_integral_identity(const PExponent& p, double omega, double gamma,
                                     const DistortedAngle& phi, double r,
                                     const FractionalConfig& cfg) {
  const double pp = p.p();
  const double eta = (1 - 1 / pp) * omega + 2 / pp - 1;
  SeriesEvaluator ev(phi, omega);
  FractionalConfig local = cfg;
  local.f_exponent_at_zero = omega;
  auto lhs = ek_integral([&](double x) { return ev.eval(x).value; }, {gamma, eta, p}, r, local);
  auto raised = pbessel_series(p, omega + gamma, phi, r);
  const double rhs = std::pow(pp / r, gamma) * raised.value;
  return {std::abs(lhs.value - rhs), std::max(1.0, std::abs(raised.value)),
          lhs.reliable && raised.reliable, lhs.value, rhs};
}

Residual verify_ek_derivative_identity(const PExponent& p, double omega, double gamma,
                                       const DistortedAngle& phi, double r,
                                       const FractionalConfig& cfg) {
  const double pp = p.p();
  const double eta = (1 - 1 / pp) * omega + (2 - gamma) / pp - 1;
  SeriesEvaluator ev(phi, omega + gamma);
  FractionalConfig local = cfg;
  local.f_exponent_at_zero = omega + gamma;
  auto lhs = ek_derivative([&](double x) { return ev.eval(x).value; }, {gamma, eta, p}, r, local);
  auto base = pbessel_series(p, omega, phi, r);
  const double rhs = std::pow(r / pp, gamma) * base.value;
  return {std::abs(lhs.value - rhs), std::max(1.0, std::abs(rhs)), lhs.reliable && base.reliable,
          lhs.value, rhs};
}

Residual verify_order_lower(const PExponent& p, double omega, const DistortedAngle& phi, double r,
                            double h_rel) {
  check_radius(r);
  if (!(h_rel > 0)) throw DomainError("h_rel must be positive");
  const double pp = p.p();
  const double e = 1 + (pp - 1) * omega;
  SeriesEvaluator upper(phi, omega + 1);
  auto f = [&](double rho) { return std::pow(rho, e) * upper.eval(rho).value; };
  const double h = h_rel * std::max(1.0, r);
  if (r - h <= 0) throw DomainError("difference stencil would cross r = 0");
  const Derivative d = first_derivative(f, r, h);
  auto base = pbessel_series(p, omega, phi, r);
  const double rhs = std::pow(r, e) * base.value;
  return {std::abs(d.value - rhs), std::max(1.0, std::abs(rhs)), base.reliable && spread_ok(d),
          d.value, rhs};
}

Residual verify_fractional_ode(const PExponent& p, double omega, const DistortedAngle& phi,
                               double r, const FractionalConfig& cfg) {
  check_radius(r);
  const double pp = p.p();
  const double eta = ode_eta(p, omega);
  SeriesEvaluator ev(phi, omega);
  FractionalConfig local = cfg;
  local.f_exponent_at_zero = omega;
  auto u = [&](double x) { return ev.eval(x).value; };
  bool ok = true;
  auto k = [&](double rho) {
    auto i1 = ek_integral(u, {1.0, eta + 1, p}, rho, local);
    ok = ok && i1.reliable;
    return i1.value - u(rho);
  };
  auto d1 = ek_derivative_unit(u, eta, p, r, local);
  const Derivative dk = first_derivative(k, r, first_step(r));
  const double t1 = pp * std::pow(r, pp) * d1.value;
  const double t2 = r * dk.value;
  const double t3 = (pp - 1) * (omega - 2) * k(r);
  const double sum = t1 + t2 + t3;
  const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
  return {std::abs(sum), scale, ok && d1.reliable && spread_ok(dk), t1 + t2, -t3};
}

}  // namespace pbessel
