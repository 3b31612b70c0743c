#include "pbessel/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace pbessel {

namespace {

constexpr double kTieWindow = 1e-12;

using i128 = __int128;

// m with m^q == a^2, if a^{2/q} is an integer
std::optional<std::int64_t> integer_root(std::int64_t a, int q) {
  if (a == 0) return 0;
  const i128 target = static_cast<i128>(a) * a;
  const auto guess = static_cast<std::int64_t>(std::llround(std::pow(static_cast<long double>(a), 2.0L / q)));
  for (std::int64_t m = std::max<std::int64_t>(guess - 1, 1); m <= guess + 1; ++m) {
    i128 v = 1;
    bool over = false;
    for (int i = 0; i < q && !over; ++i) {
      v *= m;
      over = v > target;
    }
    if (!over && v == target) return m;
  }
  return std::nullopt;
}

quad level_q(const PExponent& p, std::int64_t a, std::int64_t b) {
  const quad e = p.p_quad();
  const quad ta = a == 0 ? 0 : powq(static_cast<quad>(a), e);
  const quad tb = b == 0 ? 0 : powq(static_cast<quad>(b), e);
  return ta + tb;
}

int sign_of(quad d) { return d > 0 ? 1 : (d < 0 ? -1 : 0); }

std::optional<std::int64_t> integral_level(const PExponent& p, std::int64_t a, std::int64_t b) {
  auto ma = integer_root(a, p.q());
  auto mb = integer_root(b, p.q());
  if (!ma || !mb) return std::nullopt;
  return *ma + *mb;
}

// mirror images of (a, b) with a, b >= 0
void push_signed(std::vector<LatticePoint>& out, std::int64_t a, std::int64_t b) {
  for (int sa : {1, -1}) {
    if (a == 0 && sa < 0) continue;
    for (int sb : {1, -1}) {
      if (b == 0 && sb < 0) continue;
      out.push_back({sa * a, sb * b});
    }
  }
}

std::int64_t multiplicity(std::int64_t a, std::int64_t b) {
  if (a == b) return 4;  // a = b = 0 never reaches here
  if (a == 0 || b == 0) return 4;
  return 8;
}

}  // namespace

double area_term(const PExponent& p, double r) {
  if (!(r >= 0)) throw DomainError("radius must be >= 0");
  const double pp = p.p();
  return 2 / pp * std::exp(2 * log_gamma(1 / pp) - log_gamma(2 / pp)) * r * r;
}

int compare_pnorm(const PExponent& p, std::int64_t a, std::int64_t b, double r) {
  const quad s = powq(static_cast<quad>(r), p.p_quad());
  const quad v = level_q(p, a, b);
  const quad d = v - s;
  if (qabs(d) > kTieWindow * fmaxq(1, s)) return sign_of(d);
  if (auto n = integral_level(p, a, b)) {
    // (a^p + b^p)^{1/p} = n^{q/2}
    const quad rad = powq(static_cast<quad>(*n), static_cast<quad>(p.q()) / 2);
    const quad gap = rad - static_cast<quad>(r);
    const double ulp = std::nextafter(r, INFINITY) - r;
    if (qabs(gap) <= 4 * static_cast<quad>(ulp)) return 0;
    return sign_of(gap);
  }
  // an irrational sum never equals r^p exactly
  return d >= 0 ? 1 : -1;
}

int compare_plevel(const PExponent& p, std::int64_t a, std::int64_t b, double s) {
  const quad v = level_q(p, a, b);
  const quad d = v - static_cast<quad>(s);
  if (qabs(d) > kTieWindow * fmaxq(1, static_cast<quad>(s))) return sign_of(d);
  if (auto n = integral_level(p, a, b)) {
    const long double ns = static_cast<long double>(*n);
    if (ns == static_cast<long double>(s)) return 0;
    return ns > s ? 1 : -1;
  }
  return d >= 0 ? 1 : -1;
}

LatticeReport count_lattice_points(const PExponent& p, double r, const LatticeConfig& cfg,
                                   ScanOrder order) {
  if (!(r > 0) || !std::isfinite(r)) throw DomainError("radius must be positive");
  const auto top = static_cast<std::int64_t>(std::floor(r));
  if (top + 1 > cfg.max_columns)
    throw BudgetExceeded("lattice scan needs " + std::to_string(top + 1) + " columns, budget is " +
                         std::to_string(cfg.max_columns));
  auto cmp = [&](std::int64_t col, std::int64_t other) {
    return order == ScanOrder::columns ? compare_pnorm(p, col, other, r)
                                       : compare_pnorm(p, other, col, r);
  };
  const quad rp = powq(static_cast<quad>(r), p.p_quad());
  const quad inv = 1 / p.p_quad();
  LatticeReport rep{p, r, 0, area_term(p, r), 0, {}};
  for (std::int64_t a = 0; a <= top; ++a) {
    const quad rem = rp - level_q(p, a, 0);
    auto b = rem > 0 ? static_cast<std::int64_t>(floorq(powq(rem, inv))) : 0;
    while (cmp(a, b + 1) <= 0) ++b;
    while (b >= 0 && cmp(a, b) > 0) --b;
    if (b < 0) continue;
    const std::int64_t column = 2 * b + 1;
    rep.count += a == 0 ? column : 2 * column;
    if (cmp(a, b) == 0) {
      if (order == ScanOrder::columns)
        push_signed(rep.boundary_points, a, b);
      else
        push_signed(rep.boundary_points, b, a);
    }
  }
  std::sort(rep.boundary_points.begin(), rep.boundary_points.end(),
            [](const LatticePoint& x, const LatticePoint& y) {
              return x.n1 != y.n1 ? x.n1 < y.n1 : x.n2 < y.n2;
            });
  rep.discrepancy = static_cast<double>(rep.count) - rep.area_term;
  return rep;
}

double distorted_angle_of(const PExponent& p, double y1, double y2) {
  if (y1 == 0 && y2 == 0) throw DomainError("zero vector has no distorted angle");
  const double pp = p.p();
  const double t1 = std::pow(std::abs(y1), pp);
  const double t2 = std::pow(std::abs(y2), pp);
  const double c = std::sqrt(t1 / (t1 + t2));
  const double s = std::sqrt(t2 / (t1 + t2));
  double phi = std::atan2(std::copysign(s, y2), std::copysign(c, y1));
  if (phi < 0) phi += 2 * M_PI;
  return phi;
}

std::pair<double, double> point_from_angle(const PExponent& p, double s, double phi) {
  const double q = p.q();
  const double rad = std::pow(s, 1 / p.p());
  const double c = std::cos(phi), sn = std::sin(phi);
  return {std::copysign(rad * std::pow(std::abs(c), q), c),
          std::copysign(rad * std::pow(std::abs(sn), q), sn)};
}

AngleSet angles_on_circle(const PExponent& p, double s) {
  if (!(s >= 1) || !std::isfinite(s)) throw DomainError("level s must be >= 1");
  AngleSet out{s, {}};
  const quad sq = s;
  const quad inv = 1 / p.p_quad();
  const auto top = static_cast<std::int64_t>(floorq(powq(sq, inv) * (1 + 1e-15Q)));
  std::vector<LatticePoint> pts;
  for (std::int64_t a = 0; a <= top; ++a) {
    const quad rem = sq - level_q(p, a, 0);
    const auto b = rem > 0 ? static_cast<std::int64_t>(llroundq(powq(rem, inv))) : 0;
    if (compare_plevel(p, a, b, s) == 0) push_signed(pts, a, b);
  }
  for (const auto& pt : pts) {
    const auto ma = *integer_root(std::abs(pt.n1), p.q());
    const auto mb = *integer_root(std::abs(pt.n2), p.q());
    double phi = std::atan2(std::copysign(std::sqrt(static_cast<double>(mb)), static_cast<double>(pt.n2)),
                            std::copysign(std::sqrt(static_cast<double>(ma)), static_cast<double>(pt.n1)));
    if (phi < 0) phi += 2 * M_PI;
    out.entries.push_back({phi, pt});
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const AngleEntry& x, const AngleEntry& y) { return x.phi < y.phi; });
  return out;
}

RTable r_function(std::int64_t k_max) {
  if (k_max < 0) throw DomainError("k_max must be >= 0");
  RTable t;
  t.values.assign(static_cast<size_t>(k_max) + 1, 0);
  for (std::int64_t a = 0; a * a <= k_max; ++a)
    for (std::int64_t b = 0; a * a + b * b <= k_max; ++b)
      t.values[static_cast<size_t>(a * a + b * b)] += (a > 0 ? 2 : 1) * (b > 0 ? 2 : 1);
  return t;
}

std::vector<double> hardy_running_p2(double r, std::int64_t K_max) {
  if (!(r > 0)) throw DomainError("radius must be positive");
  if (K_max < 0) throw DomainError("K must be >= 0");
  const RTable R = r_function(K_max);
  std::vector<double> out;
  out.reserve(static_cast<size_t>(K_max));
  double sum = 0, comp = 0;
  for (std::int64_t k = 1; k <= K_max; ++k) {
    const auto rk = R[static_cast<size_t>(k)];
    if (rk != 0) {
      const double sk = std::sqrt(static_cast<double>(k));
      const double term = rk / sk * classical_bessel_j(1, 2 * M_PI * sk * r) - comp;
      const double next = sum + term;
      comp = (next - sum) - term;
      sum = next;
    }
    out.push_back(r * sum);
  }
  return out;
}

double hardy_partial_sum_p2(double r, std::int64_t K) {
  if (K == 0) return 0;
  return hardy_running_p2(r, K).back();
}

RealResult bessel_one(const PExponent& p, const DistortedAngle& phi, double x, BesselOneRoute route,
                      const LatticeConfig& cfg) {
  if (route == BesselOneRoute::automatic) {
    if (p.q() == 1) return {classical_bessel_j(1, x), 1e-15, Method::closed_form, true};
    if (p.q() == 2) {
      const double c2 = static_cast<double>(phi.cos2() - phi.sin2());
      const double h = 0.5 * x * c2;
      const double sinc = std::abs(h) < 1e-8 ? 1 - h * h / 6 : std::sin(h) / h;
      return {4 * std::sin(0.5 * x) * sinc, 1e-15 * std::max(1.0, x), Method::closed_form, true};
    }
  }
  return method_router(p, 1, phi, x, cfg.tol, cfg.integral);
}

std::int64_t hardy_group_count(const PExponent& p, double S) {
  if (!(S >= 1) || !std::isfinite(S)) throw DomainError("S must be >= 1");
  const quad inv = 1 / p.p_quad();
  const auto top = static_cast<std::int64_t>(floorq(powq(static_cast<quad>(S), inv) * (1 + 1e-15Q)));
  std::int64_t count = 0;
  for (std::int64_t a = 0; a <= top; ++a) {
    const quad rem = static_cast<quad>(S) - level_q(p, a, 0);
    if (rem < -1) break;
    auto b = rem > 0 ? static_cast<std::int64_t>(floorq(powq(rem, inv))) : 0;
    while (compare_plevel(p, a, b + 1, S) <= 0) ++b;
    while (b >= 0 && compare_plevel(p, a, b, S) > 0) --b;
    const std::int64_t lo = std::max<std::int64_t>(a, a == 0 ? 1 : a);
    if (b >= lo) count += b - lo + 1;
  }
  return count;
}

HardyResult hardy_partial_sum_general(const PExponent& p, double r, double S,
                                      const LatticeConfig& cfg, BesselOneRoute route) {
  if (!(r > 0) || !std::isfinite(r)) throw DomainError("radius must be positive");
  const std::int64_t groups = hardy_group_count(p, S);
  if (groups > cfg.max_evaluations)
    throw BudgetExceeded("Hardy sum up to S = " + std::to_string(S) + " needs " +
                         std::to_string(groups) + " p-Bessel evaluations, budget is " +
                         std::to_string(cfg.max_evaluations));

  struct Group {
    quad level;
    std::int64_t a, b;
  };
  std::vector<Group> list;
  list.reserve(static_cast<size_t>(groups));
  const quad inv = 1 / p.p_quad();
  const auto top = static_cast<std::int64_t>(floorq(powq(static_cast<quad>(S), inv) * (1 + 1e-15Q)));
  for (std::int64_t a = 0; a <= top; ++a) {
    for (std::int64_t b = std::max<std::int64_t>(a, a == 0 ? 1 : a);; ++b) {
      if (compare_plevel(p, a, b, S) > 0) break;
      list.push_back({level_q(p, a, b), a, b});
    }
  }
  std::sort(list.begin(), list.end(), [](const Group& x, const Group& y) {
    return x.level != y.level ? x.level < y.level : x.a < y.a;
  });

  const double pp = p.p();
  const double front = pp * std::exp(2 * log_gamma(1 / pp)) / (2 * M_PI) * r;
  HardyResult out;
  double sum = 0, comp = 0, err = 0;
  for (size_t i = 0; i < list.size(); ++i) {
    const auto& g = list[i];
    const double s = static_cast<double>(g.level);
    const double rad = static_cast<double>(powq(g.level, inv));
    const DistortedAngle phi(p, distorted_angle_of(p, static_cast<double>(g.a), static_cast<double>(g.b)));
    const auto v = bessel_one(p, phi, 2 * M_PI * rad * r, route, cfg);
    const auto mult = multiplicity(g.a, g.b);
    const double w = static_cast<double>(mult) / rad;
    const double term = w * v.value - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
    err += w * v.err_estimate;
    out.reliable = out.reliable && v.reliable;
    out.evaluations += 1;
    out.lattice_points += mult;
    const bool last_at_level =
        i + 1 == list.size() || list[i + 1].level - g.level > 1e-25Q * fmaxq(1, g.level);
    if (last_at_level) out.running.push_back({s, front * sum});
  }
  out.value = front * sum;
  out.err_estimate = front * err;
  return out;
}

std::vector<double> decade_max_deviation(const std::vector<std::pair<double, double>>& running,
                                         double target) {
  std::vector<double> out;
  for (const auto& [idx, value] : running) {
    if (!(idx >= 1)) continue;
    auto d = static_cast<size_t>(std::floor(std::log10(idx) + 1e-12));
    if (out.size() <= d) out.resize(d + 1, 0.0);
    out[d] = std::max(out[d], std::abs(value - target));
  }
  return out;
}

namespace {

void check_discrepancy_args(double beta, double s, std::pair<double, double> x) {
  if (!(beta > -1)) throw DomainError("beta must be > -1");
  if (!(s > 0) || !(s <= 4)) throw DomainError("s must lie in (0, 4]");
  if (std::abs(x.first) > 1 || std::abs(x.second) > 1) throw DomainError("|x| must be <= 1");
}

// sum over |m|_p^p < s of (s - |m|_p^p)^beta e^{2 pi i x.m} / Gamma(beta + 1)
std::complex<double> discrepancy_lattice_part(const PExponent& p, double beta, double s,
                                              std::pair<double, double> x) {
  const double lg = log_gamma(beta + 1);
  const quad inv = 1 / p.p_quad();
  const auto top = static_cast<std::int64_t>(floorq(powq(static_cast<quad>(s), inv))) + 1;
  std::complex<double> sum = 0;
  for (std::int64_t a = -top; a <= top; ++a)
    for (std::int64_t b = -top; b <= top; ++b) {
      if (compare_plevel(p, std::abs(a), std::abs(b), s) >= 0) continue;
      const double lvl = static_cast<double>(level_q(p, std::abs(a), std::abs(b)));
      const double w = beta == 0 ? 1.0 : std::pow(s - lvl, beta);
      const double ph = 2 * M_PI * (x.first * a + x.second * b);
      sum += w * std::complex<double>(std::cos(ph), std::sin(ph));
    }
  return sum * std::exp(-lg);
}

// The same weight integrated over the p-disc. By symmetry only the cosine
// parts survive:
// 4 s^{beta+2/p} / Gamma(beta+1) int_0^1 cos(w1 u) c^{beta+1/p}
//   int_0^1 (1-t^p)^beta cos(w2 c^{1/p} t) dt du,   c = 1 - u^p
QuadResult<double> discrepancy_continuum_part(const PExponent& p, double beta, double s,
                                              std::pair<double, double> x) {
  const double pp = p.p();
  const double rad = std::pow(s, 1 / pp);
  const double w1 = 2 * M_PI * x.first * rad;
  const double w2 = 2 * M_PI * x.second * rad;
  const QuadratureSpec spec{QuadratureScheme::tanh_sinh, 1e-13, 1e-13, 10};
  bool ok = true;
  auto inner = [&](double u, double gu) {
    const double c = detail::one_minus_pow(u, gu, pp);
    if (c <= 0) return 0.0;
    const double cr = std::pow(c, 1 / pp);
    auto f = [&](double t, double, double g) {
      const double w = beta == 0 ? 1.0 : std::pow(detail::one_minus_pow(t, g, pp), beta);
      return w * std::cos(w2 * cr * t);
    };
    const auto r = integrate(f, 0.0, 1.0, spec);
    ok = ok && r.converged;
    return std::pow(c, beta + 1 / pp) * r.value;
  };
  auto outer = [&](double u, double, double g) { return std::cos(w1 * u) * inner(u, g); };
  auto res = integrate(outer, 0.0, 1.0, spec);
  const double scale = 4 * std::exp((beta + 2 / pp) * std::log(s) - log_gamma(beta + 1));
  res.value *= scale;
  res.err *= scale;
  res.converged = res.converged && ok;
  return res;
}

}  // namespace

std::complex<double> generalized_discrepancy_lhs(const PExponent& p, double beta, double s,
                                                 std::pair<double, double> x,
                                                 const LatticeConfig&) {
  check_discrepancy_args(beta, s, x);
  return discrepancy_lattice_part(p, beta, s, x) - discrepancy_continuum_part(p, beta, s, x).value;
}

DiscrepancyCheck generalized_discrepancy_spotcheck(const PExponent& p, double beta, double s,
                                                   std::pair<double, double> x, double S,
                                                   const LatticeConfig& cfg) {
  const double pp = p.p();
  if (p.q() == 2) throw UnsupportedRepresentation("lattice series is not established at p = 1");
  const double floor_beta = p.q() == 1 ? 0.5 : 1 - pp / 2;
  if (!(beta > floor_beta)) throw DomainError("beta is below the absolute convergence threshold");
  if (!(x.first > -0.5 && x.first <= 0.5 && x.second > -0.5 && x.second <= 0.5))
    throw DomainError("x must lie in (-1/2, 1/2]^2");
  if (!(S >= 1)) throw DomainError("S must be >= 1");

  check_discrepancy_args(beta, s, x);
  DiscrepancyCheck out;
  out.lattice = discrepancy_lattice_part(p, beta, s, x);
  const auto cont = discrepancy_continuum_part(p, beta, s, x);
  out.continuum = cont.value;
  out.lhs = out.lattice - cont.value;

  const double rad = std::pow(s, 1 / pp);
  const double scale = std::exp((beta + 2 / pp) * std::log(s) + (beta + 1) * std::log(pp) +
                                2 * log_gamma(1 / pp));
  const auto top = static_cast<std::int64_t>(std::floor(S));
  const bool centred = x.first == 0 && x.second == 0;
  std::int64_t evals = 0;
  for (std::int64_t a = -top; a <= top; ++a)
    for (std::int64_t b = -top; b <= top; ++b)
      if ((a != 0 || b != 0) && static_cast<double>(a * a + b * b) <= S * S) ++evals;
  if (centred) evals /= 8;
  if (evals > cfg.max_evaluations)
    throw BudgetExceeded("lattice series needs " + std::to_string(evals) +
                         " p-Bessel evaluations, budget is " + std::to_string(cfg.max_evaluations));

  auto term = [&](double y1, double y2, bool& ok, std::int64_t& count) {
    const double norm = std::pow(std::pow(std::abs(y1), pp) + std::pow(std::abs(y2), pp), 1 / pp);
    const double arg = 2 * M_PI * rad * norm;
    double j;
    if (p.q() == 1) {
      j = classical_bessel_j(beta + 1, arg);
    } else {
      const DistortedAngle phi(p, distorted_angle_of(p, y1, y2));
      const auto v = method_router(p, beta + 1, phi, arg, cfg.tol, cfg.integral);
      ok = ok && v.reliable;
      j = v.value;
    }
    ++count;
    return j / std::pow(arg, beta + 1);
  };

  double sum = 0, comp = 0;
  auto add = [&](double t) {
    const double y = t - comp;
    const double next = sum + y;
    comp = (next - sum) - y;
    sum = next;
  };
  bool ok = true;
  std::int64_t count = 0;
  if (centred) {
    for (std::int64_t a = 0; a <= top; ++a)
      for (std::int64_t b = a; b <= top; ++b) {
        if (b == 0 || static_cast<double>(a * a + b * b) > S * S) continue;
        add(static_cast<double>(multiplicity(a, b)) *
            term(static_cast<double>(a), static_cast<double>(b), ok, count));
      }
  } else {
    for (std::int64_t a = -top; a <= top; ++a)
      for (std::int64_t b = -top; b <= top; ++b) {
        if ((a == 0 && b == 0) || static_cast<double>(a * a + b * b) > S * S) continue;
        add(term(x.first - a, x.second - b, ok, count));
      }
  }
  out.rhs = scale * sum;
  out.rhs_terms = count;
  out.reliable = ok && cont.converged;
  return out;
}

}  // namespace pbessel
