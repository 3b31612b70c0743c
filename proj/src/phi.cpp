#include "pbessel/phi.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace pbessel {

namespace {

constexpr double kAxisSnap = 1e-15;

quad int_pow(quad x, int n) {
  quad r = 1;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// log of x^n with 0^0 = 1; -inf for 0^n, n > 0
quad log_pow(quad log_x, int n) { return n == 0 ? quad(0) : n * log_x; }

quad safe_log(quad x) { return x > 0 ? logq(x) : -HUGE_VALQ; }

}  // namespace

DistortedAngle::DistortedAngle(PExponent p, double phi) : p_(p) {
  if (!std::isfinite(phi)) throw DomainError("angle must be finite");
  double t = std::fmod(phi, 2 * M_PI);
  if (t < 0) t += 2 * M_PI;
  if (t >= 2 * M_PI) t = 0;
  phi_ = t;
  quad c = cosq(quad(t));
  quad s = sinq(quad(t));
  if (qabs(c) < kAxisSnap) {
    c = 0;
    s = s > 0 ? 1 : -1;
  } else if (qabs(s) < kAxisSnap) {
    s = 0;
    c = c > 0 ? 1 : -1;
  }
  cos_sign_ = c > 0 ? 1 : (c < 0 ? -1 : 0);
  sin_sign_ = s > 0 ? 1 : (s < 0 ? -1 : 0);
  cos2_ = c * c;
  sin2_ = s * s;
  const int q = p.q();
  cos_pow_ = int_pow(cos2_, q);
  sin_pow_ = int_pow(sin2_, q);
  x1_unit_ = static_cast<double>(int_pow(qabs(c), q));
  x2_unit_ = static_cast<double>(int_pow(qabs(s), q));
}

PlanePoint PlanePoint::from_polar(double r, const DistortedAngle& phi) {
  return {phi.cos_sign() * r * phi.x1_unit(), phi.sin_sign() * r * phi.x2_unit()};
}

double PlanePoint::p_norm(const PExponent& p) const {
  const quad pq = p.p_quad();
  const quad a = qabs(quad(x1));
  const quad b = qabs(quad(x2));
  const quad m = a > b ? a : b;
  if (m == 0) return 0;
  const quad s = powq(a / m, pq) + powq(b / m, pq);
  return static_cast<double>(m * powq(s, 1 / pq));
}

namespace detail {

quad phi_beta_form_q(const DistortedAngle& phi, int k) {
  if (k < 0) throw DomainError("Phi index must be nonnegative");
  const quad q = phi.p().q();
  const quad lc = safe_log(phi.cos_pow());
  const quad ls = safe_log(phi.sin_pow());
  const quad half = 0.5Q;
  quad sum = 0;
  for (int n = 0; n <= k; ++n) {
    const quad lp = log_pow(lc, n) + log_pow(ls, k - n);
    if (lp == -HUGE_VALQ) continue;
    const quad lt = log_gamma_q(q * (k + 1)) - log_gamma_q(n + 1) - log_gamma_q(k - n + 1) +
                    log_beta_q(q * (n + half), q * (k - n + half)) -
                    log_beta_q(n + half, k - n + half) + lp;
    sum += expq(lt);
  }
  return sum;
}

quad phi_gamma_form_q(const DistortedAngle& phi, int k) {
  if (k < 0) throw DomainError("Phi index must be nonnegative");
  const quad q = phi.p().q();
  const quad lc = safe_log(phi.cos_pow());
  const quad ls = safe_log(phi.sin_pow());
  const quad front = log_gamma_q(k + 1) + 2 * k * logq(2.0Q) - logq(kQuadPi);
  quad sum = 0;
  for (int m1 = 0; m1 <= k; ++m1) {
    const int m2 = k - m1;
    const quad lp = log_pow(lc, m1) + log_pow(ls, m2);
    if (lp == -HUGE_VALQ) continue;
    const quad lt = log_gamma_q(q * (2 * m1 + 1) / 2) + log_gamma_q(q * (2 * m2 + 1) / 2) -
                    log_gamma_q(2 * m1 + 1) - log_gamma_q(2 * m2 + 1) + lp;
    sum += expq(front + lt);
  }
  return sum;
}

}  // namespace detail

double phi_beta_form(const PExponent& p, int k, double phi) {
  return static_cast<double>(detail::phi_beta_form_q(DistortedAngle(p, phi), k));
}

double phi_gamma_form(const PExponent& p, int k, double phi) {
  return static_cast<double>(detail::phi_gamma_form_q(DistortedAngle(p, phi), k));
}

PhiTable::PhiTable(const DistortedAngle& phi, int k_max) : angle_(phi) {
  if (k_max < 0) throw DomainError("k_max must be nonnegative");
  // Same log-space terms as phi_beta_form_q, with the Gamma values shared
  // across rows: A(m) = lgG(q(m+1/2)) - lgG(m+1/2) - lgG(m+1), and
  // term(k,n) = lgG(k+1) + A(n) + A(k-n) + powers.
  const quad q = phi.p().q();
  const quad lc = safe_log(phi.cos_pow());
  const quad ls = safe_log(phi.sin_pow());
  std::vector<quad> a(static_cast<size_t>(k_max) + 1);
  for (int m = 0; m <= k_max; ++m)
    a[m] = log_gamma_q(q * (m + 0.5Q)) - log_gamma_q(m + 0.5Q) - log_gamma_q(m + 1);
  values_.resize(static_cast<size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    const quad lk = log_gamma_q(k + 1);
    quad sum = 0;
    for (int n = 0; n <= k; ++n) {
      const quad lp = log_pow(lc, n) + log_pow(ls, k - n);
      if (lp == -HUGE_VALQ) continue;
      sum += expq(lk + a[n] + a[k - n] + lp);
    }
    values_[k] = sum;
  }
}

std::shared_ptr<const PhiTable> cached_phi_table(const DistortedAngle& phi, int k_needed) {
  using Key = std::pair<int, long long>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const PhiTable>> cache;
  const Key key{phi.p().q(), std::llround(phi.phi() * 1e15)};
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end() && it->second->k_max() >= k_needed) return it->second;
  int k_max = std::max(k_needed, 64);
  if (it != cache.end()) k_max = std::max(k_max, 2 * it->second->k_max());
  auto table = std::make_shared<const PhiTable>(phi, k_max);
  if (cache.size() > 4096) cache.clear();
  cache[key] = table;
  return table;
}

}  // namespace pbessel
