#pragma once

// Lattice points in closed p-discs |n1|^p + |n2|^p <= r^p, the discrepancy
// P_p(r) = N_p(r) - area, lattice points on a single p-circle, and truncated
// Hardy-type sums that express P_p(r) through p-Bessel functions of order 1.

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "pbessel/router.hpp"

namespace pbessel {

struct LatticePoint {
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  bool operator==(const LatticePoint&) const = default;
};

struct LatticeReport {
  PExponent p;
  double r = 0;
  std::int64_t count = 0;
  double area_term = 0;
  double discrepancy = 0;
  std::vector<LatticePoint> boundary_points;
};

enum class ScanOrder { columns, rows };

struct LatticeConfig {
  std::int64_t max_columns = 50'000'000;
  // Hardy sums: upper bound on distinct p-Bessel evaluations
  std::int64_t max_evaluations = 2'000'000;
  double tol = 1e-10;
  IntegralMethodConfig integral{};
};

/// (2/p) Gamma(1/p)^2 / Gamma(2/p) r^2
double area_term(const PExponent& p, double r);

/// Compares a^p + b^p with r^p. Near-ties are settled exactly: the sum is
/// rational only when a^{2/q} and b^{2/q} are both integers, and then r is
/// on the curve iff it is the double nearest to (a^p + b^p)^{1/p}.
/// Returns -1, 0, +1.
int compare_pnorm(const PExponent& p, std::int64_t a, std::int64_t b, double r);

/// Same against a level s = |n|_p^p. Equality needs an integral s.
int compare_plevel(const PExponent& p, std::int64_t a, std::int64_t b, double s);

LatticeReport count_lattice_points(const PExponent& p, double r, const LatticeConfig& cfg = {},
                                   ScanOrder order = ScanOrder::columns);

struct AngleEntry {
  double phi = 0;
  LatticePoint point;
};

struct AngleSet {
  double s = 0;
  std::vector<AngleEntry> entries;
};

/// Distorted angles of the lattice points with |n1|^p + |n2|^p = s, sorted.
AngleSet angles_on_circle(const PExponent& p, double s);

/// (sgn cos phi s^{1/p} |cos phi|^{2/p}, sgn sin phi s^{1/p} |sin phi|^{2/p})
std::pair<double, double> point_from_angle(const PExponent& p, double s, double phi);

/// Distorted angle in [0, 2 pi) of a nonzero vector.
double distorted_angle_of(const PExponent& p, double y1, double y2);

struct RTable {
  std::vector<std::int64_t> values;
  std::int64_t operator[](std::size_t k) const { return values.at(k); }
  std::size_t k_max() const { return values.empty() ? 0 : values.size() - 1; }
};

/// R(k) = #{n : n1^2 + n2^2 = k} for k = 0..k_max.
RTable r_function(std::int64_t k_max);

/// r sum_{k<=K} R(k) k^{-1/2} J_1(2 pi sqrt(k) r), compensated.
double hardy_partial_sum_p2(double r, std::int64_t K);

/// Running values of the classical sum at every K = 1..K_max.
std::vector<double> hardy_running_p2(double r, std::int64_t K_max);

enum class BesselOneRoute {
  automatic,  // classical J_1 at p = 2, the diamond transform at p = 1, else router
  router,
};

/// Order-1 p-Bessel function at distorted angle phi. At p = 1 it is the
/// Fourier transform of the diamond, 4 sin(x/2) sinc(x cos(2 phi) / 2).
RealResult bessel_one(const PExponent& p, const DistortedAngle& phi, double x, BesselOneRoute route,
                      const LatticeConfig& cfg = {});

struct HardyPartial {
  double s = 0;      // level |n|_p^p reached
  double value = 0;  // partial sum through all lattice points with level <= s
};

struct HardyResult {
  double value = 0;
  double err_estimate = 0;
  bool reliable = true;
  std::int64_t evaluations = 0;
  std::int64_t lattice_points = 0;
  std::vector<HardyPartial> running;  // one entry per distinct level
};

/// (p Gamma(1/p)^2 / 2 pi) r sum over 1 <= |n|_p^p <= S of
/// s_n^{-1/p} J1_{phi(n)}(2 pi s_n^{1/p} r). Points are grouped by the
/// unordered pair {|n1|, |n2|}; throws BudgetExceeded when the number of
/// groups exceeds cfg.max_evaluations.
HardyResult hardy_partial_sum_general(const PExponent& p, double r, double S,
                                      const LatticeConfig& cfg = {},
                                      BesselOneRoute route = BesselOneRoute::automatic);

/// Number of unordered pairs {a, b} with 1 <= a^p + b^p <= S.
std::int64_t hardy_group_count(const PExponent& p, double S);

/// Largest deviation |partial - target| over each decade [10^d, 10^{d+1})
/// of the index, for d = 0, 1, ...
std::vector<double> decade_max_deviation(const std::vector<std::pair<double, double>>& running,
                                         double target);

struct DiscrepancyCheck {
  std::complex<double> lhs;       // D - continuum
  std::complex<double> rhs;       // truncated lattice series
  std::complex<double> lattice;   // D
  double continuum = 0;           // the integral over the p-disc
  std::int64_t rhs_terms = 0;
  bool reliable = true;
};

/// D_beta(s:x) - continuum alone; defined for beta > -1.
std::complex<double> generalized_discrepancy_lhs(const PExponent& p, double beta, double s,
                                                 std::pair<double, double> x,
                                                 const LatticeConfig& cfg = {});

/// D_beta(s:x) = sum_{|m|_p^p < s} (s - |m|_p^p)^beta e^{2 pi i x.m} / Gamma(beta + 1),
/// its continuum analogue over the p-disc, and
/// s^{beta+2/p} p^{beta+1} Gamma(1/p)^2 sum_{0<|n|<=S} J_{beta+1}(2 pi s^{1/p}(x-n)) /
/// (2 pi s^{1/p} |x-n|_p)^{beta+1}.
/// Needs beta > 1 - p/2 (beta > 1/2 at p = 2), s <= 4, x in (-1/2, 1/2]^2.
/// Not available at p = 1.
DiscrepancyCheck generalized_discrepancy_spotcheck(const PExponent& p, double beta, double s,
                                                   std::pair<double, double> x, double S,
                                                   const LatticeConfig& cfg = {});

}  // namespace pbessel
