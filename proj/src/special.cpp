#include "pbessel/special.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

namespace pbessel {

PExponent PExponent::from_q(int q) {
  if (q < 1) throw DomainError("q = 2/p must be a positive integer");
  return PExponent(q);
}

PExponent PExponent::parse(std::string_view text) {
  auto to_int = [&](std::string_view s) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v <= 0)
      throw DomainError("cannot parse exponent '" + std::string(text) + "'");
    return v;
  };
  long num = 0;
  long den = 1;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = to_int(text.substr(0, slash));
    den = to_int(text.substr(slash + 1));
  } else {
    num = to_int(text);
  }
  // p = num/den = 2/q  =>  q = 2 den / num
  if ((2 * den) % num != 0)
    throw DomainError("p = " + std::string(text) + " is not of the form 2/q");
  return from_q(static_cast<int>(2 * den / num));
}

std::string PExponent::to_string() const {
  if (p_den() == 1) return std::to_string(p_num());
  return std::to_string(p_num()) + "/" + std::to_string(p_den());
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::series: return "series";
    case Method::double_integral: return "double-integral";
    case Method::poisson: return "poisson";
    case Method::axis_integral: return "axis-integral";
    case Method::asymptotic: return "asymptotic";
    case Method::order_raise: return "order-raise";
    case Method::closed_form: return "closed-form";
  }
  return "unknown";
}

double log_gamma(double x) {
  if (!(x > 0) || !std::isfinite(x)) throw DomainError("log_gamma needs x > 0");
  return std::lgamma(x);
}

double log_beta(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double beta(double a, double b) { return std::exp(log_beta(a, b)); }

quad log_gamma_q(quad x) {
  if (!(x > 0)) throw DomainError("log_gamma needs x > 0");
  return lgammaq(x);
}

quad log_beta_q(quad a, quad b) {
  return log_gamma_q(a) + log_gamma_q(b) - log_gamma_q(a + b);
}

namespace detail {

double bessel_j_series(double omega, double r) {
  if (r == 0) return omega == 0 ? 1.0 : 0.0;
  const quad half = quad(r) / 2;
  const quad h2 = half * half;
  quad term = expq(quad(omega) * logq(half) - lgammaq(quad(omega) + 1));
  quad sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= -h2 / (quad(k) * (quad(k) + quad(omega)));
    sum += term;
    if (qabs(term) < 1e-36Q * qabs(sum) && quad(k) > half) break;
  }
  return static_cast<double>(sum);
}

double bessel_j_hankel(double omega, double r) {
  const double mu = 4.0 * omega * omega;
  double p_sum = 0;
  double q_sum = 0;
  double a = 1.0;  // a_k(omega) / r^k
  double prev = INFINITY;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      const double odd = 2.0 * k - 1.0;
      a *= (mu - odd * odd) / (k * 8.0 * r);
    }
    const double mag = std::abs(a);
    if (mag > prev) break;  // optimal truncation
    prev = mag;
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0)
      p_sum += sign * a;
    else
      q_sum += sign * a;
    if (mag < 1e-18 * (std::abs(p_sum) + std::abs(q_sum))) break;
  }
  const double chi = r - (0.5 * omega + 0.25) * M_PI;
  return std::sqrt(2.0 / (M_PI * r)) * (p_sum * std::cos(chi) - q_sum * std::sin(chi));
}

}  // namespace detail

double classical_bessel_j(double omega, double r) {
  if (!(omega >= -0.5)) throw DomainError("classical_bessel_j needs omega >= -1/2");
  if (!(r >= 0) || !std::isfinite(r)) throw DomainError("classical_bessel_j needs r >= 0");
  const double cut = std::max(detail::kBesselSwitch, omega * omega);
  return r < cut ? detail::bessel_j_series(omega, r) : detail::bessel_j_hankel(omega, r);
}

}  // namespace pbessel
