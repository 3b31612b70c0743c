#include "pbessel/asymptotics.hpp"

#include <cmath>

namespace pbessel {

double classical_asymptotic(double omega, double r) {
  if (!(r > 0)) throw DomainError("asymptotic form needs r > 0");
  return std::sqrt(2 / (M_PI * r)) * std::cos(r - (2 * omega + 1) * M_PI / 4);
}

double axis_asymptotic(const PExponent& p, double omega, double r) {
  if (p.q() < 3) throw UnsupportedRepresentation("axis asymptotic law needs 2/p >= 3");
  if (!(r > 0)) throw DomainError("asymptotic form needs r > 0");
  if (!(omega >= 0)) throw DomainError("order must be >= 0");
  const double pp = p.p();
  const double c = 4 * std::exp(log_gamma(omega + pp / 2) - (omega + 1) * std::log(pp) -
                                log_gamma(omega + 1 / pp) - log_gamma(1 / pp));
  return c * std::pow(r, -pp / 2) * std::cos((2 * omega + pp) * M_PI / 4);
}

DecayFit fit_decay_slope(const std::vector<Sample>& samples, FitMode mode, int bins) {
  const int n = static_cast<int>(samples.size());
  if (n < 20) throw DomainError("decay fit needs at least 20 samples");
  for (int i = 1; i < n; ++i)
    if (!(samples[i].r > samples[i - 1].r)) throw DomainError("samples must have ascending r");
  const double r0 = samples.front().r;
  const double r1 = samples.back().r;
  if (!(r0 >= 10)) throw DomainError("decay fit window must start at r >= 10");
  if (r1 < 10 * r0) throw DomainError("decay fit needs at least one decade of span");
  if (mode == FitMode::envelope && bins < 8) bins = 8;

  const double l0 = std::log(r0);
  const double width = (std::log(r1) - l0) / bins;
  std::vector<double> xs, ys;
  size_t i = 0;
  for (int b = 0; b < bins; ++b) {
    const double hi = b == bins - 1 ? INFINITY : l0 + (b + 1) * width;
    double best = 0, best_r = 0, sq = 0;
    int count = 0;
    for (; i < samples.size() && std::log(samples[i].r) < hi; ++i) {
      const double a = std::abs(samples[i].value);
      if (a > best) {
        best = a;
        best_r = samples[i].r;
      }
      sq += a * a;
      ++count;
    }
    if (count == 0) continue;
    if (mode == FitMode::envelope) {
      if (best <= 0) continue;
      xs.push_back(std::log(best_r));
      ys.push_back(std::log(best));
    } else {
      if (sq <= 0) continue;
      xs.push_back(l0 + (b + 0.5) * width);
      ys.push_back(0.5 * std::log(sq / count));
    }
  }
  if (xs.size() < 3) throw DomainError("too few populated bins for a decay fit");
  const double m = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (size_t k = 0; k < xs.size(); ++k) {
    sx += xs[k];
    sy += ys[k];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  DecayFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (size_t k = 0; k < xs.size(); ++k) {
    const double e = ys[k] - (fit.intercept + fit.slope * xs[k]);
    ss += e * e;
  }
  fit.residual_rms = std::sqrt(ss / m);
  fit.r_window = {r0, r1};
  fit.n_samples = n;
  fit.bins_used = static_cast<int>(xs.size());
  return fit;
}

std::vector<Sample> sample_log_spaced(const std::function<double(double)>& f, double r0,
                                      double r1, int n) {
  if (!(r0 > 0) || !(r1 > r0) || n < 2) throw DomainError("bad sampling window");
  std::vector<Sample> out;
  out.reserve(static_cast<size_t>(n));
  const double step = std::log(r1 / r0) / (n - 1);
  for (int i = 0; i < n; ++i) {
    const double r = i == n - 1 ? r1 : r0 * std::exp(i * step);
    out.push_back({r, f(r)});
  }
  return out;
}

}  // namespace pbessel
