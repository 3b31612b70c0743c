#pragma once

// binary128 helpers. The defining series of the p-Bessel family cancel badly
// in double once r passes ~15, so every series is accumulated in __float128.

#include <quadmath.h>

#include <complex>

namespace pbessel {

using quad = __float128;

inline constexpr quad kQuadEps = FLT128_EPSILON;
inline const quad kQuadPi = M_PIq;

inline quad qabs(quad x) { return x < 0 ? -x : x; }

struct QComplex {
  quad re = 0;
  quad im = 0;

  QComplex() = default;
  QComplex(quad r) : re(r) {}  // NOLINT(google-explicit-constructor)
  QComplex(quad r, quad i) : re(r), im(i) {}
  explicit QComplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  QComplex operator+(const QComplex& o) const { return {re + o.re, im + o.im}; }
  QComplex operator-(const QComplex& o) const { return {re - o.re, im - o.im}; }
  QComplex operator*(const QComplex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  QComplex operator*(quad s) const { return {re * s, im * s}; }
  QComplex& operator+=(const QComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  QComplex& operator*=(const QComplex& o) { return *this = *this * o; }

  quad abs() const { return hypotq(re, im); }
  std::complex<double> to_std() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

// exp(a * Log z) on the principal branch, Arg z in (-pi, pi].
inline QComplex principal_pow(const QComplex& z, quad a) {
  if (a == 0) return QComplex(1);
  const quad log_mod = logq(z.abs());
  const quad arg = atan2q(z.im, z.re);
  const quad mag = expq(a * log_mod);
  return {mag * cosq(a * arg), mag * sinq(a * arg)};
}

}  // namespace pbessel
