#pragma once

// Leading-term asymptotic predictors and empirical decay-rate fits.

#include <functional>
#include <utility>
#include <vector>

#include "pbessel/special.hpp"

namespace pbessel {

/// sqrt(2/(pi r)) cos(r - (2 omega + 1) pi / 4)
double classical_asymptotic(double omega, double r);

/// The r^{-p/2} axis law
/// 4 Gamma(omega + p/2) / (p^{omega+1} Gamma(omega + 1/p) Gamma(1/p)) r^{-p/2} cos((2 omega + p) pi / 4).
/// Needs q = 2/p >= 3.
double axis_asymptotic(const PExponent& p, double omega, double r);

struct Sample {
  double r;
  double value;
};

enum class FitMode { envelope, rms_bin };

struct DecayFit {
  double slope = 0;
  double intercept = 0;
  std::pair<double, double> r_window{0, 0};
  int n_samples = 0;
  double residual_rms = 0;
  int bins_used = 0;
};

/// Least-squares slope of log|amplitude| against log r, with the amplitude
/// taken bin-wise (equal bins in log r) as the maximum of |value| or as the
/// root mean square. Needs >= 20 samples, ascending r, r_min >= 10 and at
/// least a decade of span.
DecayFit fit_decay_slope(const std::vector<Sample>& samples, FitMode mode, int bins = 10);

/// n points log-spaced over [r0, r1].
std::vector<Sample> sample_log_spaced(const std::function<double(double)>& f, double r0,
                                      double r1, int n);

}  // namespace pbessel
