#pragma once

// Picks a representation for a requested (p, omega, phi, r) point.

#include <complex>
#include <string_view>

#include "pbessel/integral.hpp"
#include "pbessel/series.hpp"

namespace pbessel {

enum class MethodChoice { automatic, series, double_integral, poisson, axis };

MethodChoice parse_method_choice(std::string_view name);
std::string_view method_choice_name(MethodChoice m);

// Beyond this radius the automatic route leaves the series for the integral
// forms.
inline constexpr double kSeriesRadius = 40.0;

/// Automatic route: the series if r <= kSeriesRadius and its error estimate
/// certifies tol, else the axis integral on the axes, else the order-0 or
/// nested integral. A route that misses tol comes back with reliable = false.
RealResult method_router(const PExponent& p, double omega, const DistortedAngle& phi, double r,
                         double tol, const IntegralMethodConfig& cfg = {});

RealResult evaluate(const PExponent& p, double omega, const DistortedAngle& phi, double r,
                    MethodChoice method, double tol, const IntegralMethodConfig& cfg = {});

/// Complex argument: the series if |z| <= kSeriesRadius and certified, else
/// the Poisson-type form when 2/p is odd.
ComplexResult evaluate_complex(const PExponent& p, double omega, const DistortedAngle& phi,
                               std::complex<double> z, MethodChoice method, double tol,
                               const IntegralMethodConfig& cfg = {});

}  // namespace pbessel
