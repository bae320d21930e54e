#include "ginient/quadrature.hpp"

#include <cmath>
#include <sstream>

#include "ginient/error.hpp"

namespace ginient {

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        fail(ErrorCode::bad_parameter, "quadrature tolerances must be positive");
    }
    if (!(u_clip > 0.0) || !(u_clip < 1e-6)) {
        fail(ErrorCode::bad_parameter, "u_clip must lie in (0, 1e-6)");
    }
    if (max_refinements < 4) {
        fail(ErrorCode::bad_parameter, "max_refinements must be at least 4");
    }
}

Integrator::Integrator(const QuadratureConfig& cfg)
    : cfg_(cfg),
      finite_(cfg.max_refinements, cfg.u_clip),
      nested_(cfg.max_refinements, cfg.u_clip),
      half_line_(cfg.max_refinements) {
    cfg_.validate();
}

double Integrator::checked(const QuadratureResult& r, const char* what) const {
    if (!std::isfinite(r.value)) {
        fail(ErrorCode::no_convergence, std::string(what) + ": integral is not finite");
    }
    const double allowed = std::max(cfg_.abs_tol, cfg_.rel_tol * std::abs(r.value));
    if (!(r.error <= allowed)) {
        std::ostringstream msg;
        msg << what << ": error estimate " << r.error << " exceeds tolerance " << allowed;
        fail(ErrorCode::no_convergence, msg.str());
    }
    return r.value;
}

namespace {

QuadratureResult unit_on(boost::math::quadrature::tanh_sinh<double>& rule, const UnitIntegrand& f, double tol) {
    // The two-argument form hands us the signed distance to the nearest
    // endpoint: negative near 0, positive near 1.
    auto g = [&f](double u, double dist) {
        const double complement = dist > 0.0 ? dist : 1.0 - u;
        return f(u, complement);
    };
    QuadratureResult r;
    r.value = rule.integrate(g, 0.0, 1.0, tol, &r.error, &r.l1);
    return r;
}

}  // namespace

QuadratureResult Integrator::unit_unchecked(const UnitIntegrand& f) const {
    return unit_on(finite_, f, cfg_.rel_tol * 0.1);
}

QuadratureResult Integrator::inner(const UnitIntegrand& f) const { return unit_on(nested_, f, cfg_.rel_tol * 0.1); }

double Integrator::unit(const UnitIntegrand& f) const {
    return checked(unit_unchecked(f), "u-domain quadrature");
}

double Integrator::line(const LineIntegrand& f, double a, double b) const {
    if (!(b > a)) return 0.0;
    QuadratureResult r;
    if (std::isinf(b)) {
        r.value = half_line_.integrate(f, a, b, cfg_.rel_tol * 0.1, &r.error, &r.l1);
    } else {
        r.value = finite_.integrate(f, a, b, cfg_.rel_tol * 0.1, &r.error, &r.l1);
    }
    return checked(r, "x-domain quadrature");
}

double integrate_u(const UnitIntegrand& f, const QuadratureConfig& cfg) {
    return Integrator(cfg).unit(f);
}

double integrate_u(const std::function<double(double)>& f, const QuadratureConfig& cfg) {
    return Integrator(cfg).unit([&f](double u, double) { return f(u); });
}

}  // namespace ginient
