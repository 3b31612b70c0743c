#include <cmath>
#include <complex>

#include "doctest.h"
#include "oracle_values.hpp"
#include "pbessel/asymptotics.hpp"
#include "pbessel/router.hpp"

using namespace pbessel;
using cd = std::complex<double>;

namespace {
const auto p2 = PExponent::from_q(1);
const auto p23 = PExponent::from_q(3);
const auto p12 = PExponent::from_q(4);

double series(const PExponent& p, double omega, double phi, double r) {
  return pbessel_series(p, omega, DistortedAngle(p, phi), r).value;
}
}  // namespace

TEST_CASE("double integral examples") {
  CHECK(std::abs(pbessel_double_integral(p2, 1, DistortedAngle(p2, M_PI / 2), 1).value -
                 classical_bessel_j(1, 1)) < 1e-8);
  CHECK(std::abs(pbessel_double_integral(p23, 1, DistortedAngle(p23, M_PI / 4), 5).value -
                 series(p23, 1, M_PI / 4, 5)) < 1e-8);
  CHECK(pbessel_double_integral(p23, 2, DistortedAngle(p23, 0.3), 0).value == 0);
  CHECK_THROWS_AS(pbessel_double_integral(p23, 0, DistortedAngle(p23, 0.3), 1), DomainError);
}

TEST_CASE("order-zero integral examples") {
  CHECK(std::abs(pbessel_order0_integral(p23, DistortedAngle(p23, 0), 0).value - 4.5) < 1e-10);
  CHECK(std::abs(pbessel_order0_integral(p2, DistortedAngle(p2, M_PI / 2), 3).value -
                 classical_bessel_j(0, 3)) < 1e-9);
  CHECK(std::abs(pbessel_order0_integral(p12, DistortedAngle(p12, M_PI / 3), 10).value -
                 series(p12, 0, M_PI / 3, 10)) < 1e-8);
}

TEST_CASE("axis integral examples") {
  CHECK(std::abs(pbessel_axis(p2, 0, 5).value - classical_bessel_j(0, 5)) < 1e-9);
  CHECK(std::abs(pbessel_axis(p23, 1, 7).value - series(p23, 1, M_PI / 2, 7)) < 1e-8);
  const auto far = pbessel_axis(p23, 0, 200);
  CHECK(std::isfinite(far.value));
  CHECK(std::abs(far.value) <= 2 * std::abs(axis_asymptotic(p23, 0, 200)));
}

TEST_CASE("integral routes against the high-precision oracle at large radius") {
  for (const auto& s : oracle::kLargeRadiusPoints) {
    const auto p = PExponent::from_q(s.q);
    const auto v = evaluate(p, s.omega, DistortedAngle(p, s.phi), s.r, MethodChoice::automatic, 1e-10);
    CHECK(v.method != Method::series);
    CHECK(std::abs(v.value - s.value) < 1e-10 * std::max(1.0, std::abs(s.value)));
    CHECK(std::abs(v.value - s.value) <= v.err_estimate + 1e-15);
  }
}

TEST_CASE("order raising") {
  auto base_j0 = [](double r) { return classical_bessel_j(0, r); };
  CHECK(std::abs(order_raise(p2, 0, 1, DistortedAngle(p2, M_PI / 2), 2, base_j0).value -
                 classical_bessel_j(1, 2)) < 1e-8);
  const DistortedAngle q4(p23, M_PI / 4);
  auto base0 = [&](double r) { return pbessel_series(p23, 0, q4, r).value; };
  CHECK(std::abs(order_raise(p23, 0, 1, q4, 4, base0).value - series(p23, 1, M_PI / 4, 4)) < 1e-7);
  const DistortedAngle q6(p23, M_PI / 6);
  auto base1 = [&](double r) { return pbessel_series(p23, 1, q6, r).value; };
  CHECK(std::abs(order_raise(p23, 1, 0.5, q6, 3, base1).value - series(p23, 1.5, M_PI / 6, 3)) < 1e-7);
}

TEST_CASE("order raising composes") {
  for (const auto& p : {p2, p23, p12}) {
    const DistortedAngle a(p, 0.6);
    auto base = [&](double r) { return pbessel_series(p, 0.5, a, r).value; };
    const double once = order_raise(p, 0.5, 0.7, a, 3.5, base).value;
    auto mid = [&](double r) { return order_raise(p, 0.5, 0.3, a, r, base).value; };
    const double twice = order_raise(p, 0.8, 0.4, a, 3.5, mid).value;
    CHECK(std::abs(once - twice) < 1e-6);
  }
}

TEST_CASE("Poisson-type representation") {
  CHECK(std::abs(pbessel_poisson(p2, 0, DistortedAngle(p2, 0.8), cd(1, 0)).value -
                 classical_bessel_j(0, 1)) < 1e-9);
  CHECK(std::abs(pbessel_poisson(p23, 1, DistortedAngle(p23, M_PI / 3), cd(2, 0)).value -
                 series(p23, 1, M_PI / 3, 2)) < 1e-8);
  CHECK(std::abs(pbessel_poisson(p23, 2, DistortedAngle(p23, 0.2), cd(1, 1)).value -
                 oracle::kComplexQ3W2At1p1i) < 1e-8);
  CHECK_THROWS_AS(pbessel_poisson(p12, 1, DistortedAngle(p12, 0.2), cd(1, 0)),
                  UnsupportedRepresentation);
  CHECK_THROWS_AS(pbessel_poisson(p23, 1, DistortedAngle(p23, 0.2), cd(-2, 0)), DomainError);
}

TEST_CASE("representations agree pairwise") {
  double worst = 0;
  for (const auto& p : {p23, p12})
    for (double omega : {0.0, 1.0, 2.0})
      for (double phi : {0.0, M_PI / 6, M_PI / 4, M_PI / 2})
        for (double r : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
          const DistortedAngle a(p, phi);
          const double s = pbessel_series(p, omega, a, r).value;
          const double i = omega == 0 ? pbessel_order0_integral(p, a, r).value
                                      : pbessel_double_integral(p, omega, a, r).value;
          worst = std::max(worst, std::abs(s - i));
          if (p.q_odd()) worst = std::max(worst, std::abs(s - pbessel_poisson(p, omega, a, r).value));
          if (a.on_y_axis()) worst = std::max(worst, std::abs(s - pbessel_axis(p, omega, r).value));
        }
  CHECK(worst <= 1e-8);
}

TEST_CASE("router picks the documented routes") {
  auto route = [](const PExponent& p, double omega, double phi, double r) {
    return method_router(p, omega, DistortedAngle(p, phi), r, 1e-10).method;
  };
  CHECK(route(p23, 0, M_PI / 2, 5) == Method::series);
  CHECK(route(p23, 0, M_PI / 2, 200) == Method::axis_integral);
  CHECK(route(p23, 1, M_PI / 4, 100) == Method::double_integral);
  CHECK(parse_method_choice("double-integral") == MethodChoice::double_integral);
  CHECK_THROWS(parse_method_choice("no-such-route"));
  CHECK_THROWS_AS(evaluate(p12, 1, DistortedAngle(p12, 0.3), 2.0, MethodChoice::poisson, 1e-10),
                  UnsupportedRepresentation);
}

TEST_CASE("routes agree within their error estimates") {
  for (double r : {3.0, 12.0, 35.0}) {
    const DistortedAngle a(p23, M_PI / 2);
    const auto s = evaluate(p23, 1, a, r, MethodChoice::series, 1e-10);
    const auto d = evaluate(p23, 1, a, r, MethodChoice::double_integral, 1e-10);
    const auto x = evaluate(p23, 1, a, r, MethodChoice::axis, 1e-10);
    CHECK(std::abs(s.value - d.value) <= s.err_estimate + d.err_estimate);
    CHECK(std::abs(s.value - x.value) <= s.err_estimate + x.err_estimate);
  }
}

TEST_CASE("complex router") {
  const DistortedAngle a(p23, 0.2);
  const auto near = evaluate_complex(p23, 2, a, cd(1, 1), MethodChoice::automatic, 1e-10);
  CHECK(near.method == Method::series);
  CHECK(std::abs(near.value - oracle::kComplexQ3W2At1p1i) < 1e-12);
}

TEST_CASE("config validation") {
  IntegralMethodConfig cfg;
  cfg.inner.abs_tol = cfg.outer.abs_tol;
  CHECK_THROWS(cfg.validate());
}
