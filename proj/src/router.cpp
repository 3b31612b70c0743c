#include "pbessel/router.hpp"

#include <string>

namespace pbessel {

MethodChoice parse_method_choice(std::string_view name) {
  if (name == "auto") return MethodChoice::automatic;
  if (name == "series") return MethodChoice::series;
  if (name == "double-integral") return MethodChoice::double_integral;
  if (name == "poisson") return MethodChoice::poisson;
  if (name == "axis") return MethodChoice::axis;
  throw DomainError("unknown method '" + std::string(name) + "'");
}

std::string_view method_choice_name(MethodChoice m) {
  switch (m) {
    case MethodChoice::automatic: return "auto";
    case MethodChoice::series: return "series";
    case MethodChoice::double_integral: return "double-integral";
    case MethodChoice::poisson: return "poisson";
    case MethodChoice::axis: return "axis";
  }
  return "auto";
}

namespace {

bool on_axis(const DistortedAngle& phi) { return phi.on_x_axis() || phi.on_y_axis(); }

RealResult integral_route(const PExponent& p, double omega, const DistortedAngle& phi, double r,
                          const IntegralMethodConfig& cfg) {
  if (on_axis(phi)) return pbessel_axis(p, omega, r, cfg);
  if (omega == 0) return pbessel_order0_integral(p, phi, r, cfg);
  return pbessel_double_integral(p, omega, phi, r, cfg);
}

RealResult mark(RealResult v, double tol) {
  v.reliable = v.reliable && v.err_estimate <= tol;
  return v;
}

}  // namespace

RealResult method_router(const PExponent& p, double omega, const DistortedAngle& phi, double r,
                         double tol, const IntegralMethodConfig& cfg) {
  return evaluate(p, omega, phi, r, MethodChoice::automatic, tol, cfg);
}

RealResult evaluate(const PExponent& p, double omega, const DistortedAngle& phi, double r,
                    MethodChoice method, double tol, const IntegralMethodConfig& cfg) {
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  switch (method) {
    case MethodChoice::series:
      return mark(pbessel_series(p, omega, phi, r, tol), tol);
    case MethodChoice::double_integral:
      if (omega == 0) return mark(pbessel_order0_integral(p, phi, r, cfg), tol);
      return mark(pbessel_double_integral(p, omega, phi, r, cfg), tol);
    case MethodChoice::axis:
      if (!on_axis(phi)) throw DomainError("axis method needs phi on a coordinate axis");
      return mark(pbessel_axis(p, omega, r, cfg), tol);
    case MethodChoice::poisson: {
      if (r == 0) throw DomainError("Poisson-type form is not defined at r = 0");
      auto c = pbessel_poisson(p, omega, phi, {r, 0.0}, cfg);
      return mark({c.value.real(), c.err_estimate, Method::poisson, c.reliable}, tol);
    }
    case MethodChoice::automatic:
      break;
  }
  if (r <= kSeriesRadius) {
    auto s = pbessel_series(p, omega, phi, r, tol);
    if (s.reliable && s.err_estimate <= tol) return s;
  }
  return mark(integral_route(p, omega, phi, r, cfg), tol);
}

ComplexResult evaluate_complex(const PExponent& p, double omega, const DistortedAngle& phi,
                               std::complex<double> z, MethodChoice method, double tol,
                               const IntegralMethodConfig& cfg) {
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  auto mark_c = [tol](ComplexResult v) {
    v.reliable = v.reliable && v.err_estimate <= tol;
    return v;
  };
  switch (method) {
    case MethodChoice::series:
      return mark_c(pbessel_complex(p, omega, phi, z, tol));
    case MethodChoice::poisson:
      return mark_c(pbessel_poisson(p, omega, phi, z, cfg));
    case MethodChoice::automatic:
      break;
    default:
      if (z.imag() != 0)
        throw DomainError("real integral forms need a real argument; use series or poisson");
      {
        auto v = evaluate(p, omega, phi, z.real(), method, tol, cfg);
        return {{v.value, 0.0}, v.err_estimate, v.method, v.reliable};
      }
  }
  if (std::abs(z) <= kSeriesRadius) {
    auto s = pbessel_complex(p, omega, phi, z, tol);
    if (s.reliable && s.err_estimate <= tol) return s;
    if (!p.q_odd()) return mark_c(s);
  }
  if (p.q_odd()) return mark_c(pbessel_poisson(p, omega, phi, z, cfg));
  auto s = pbessel_complex(p, omega, phi, z, tol);
  return mark_c(s);
}

}  // namespace pbessel
