#pragma once

#include <cstddef>
#include <functional>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace ginient {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    // Smallest distance from 0 or 1 at which a u-domain integrand is sampled.
    double u_clip = 1e-150;
    // Level-halving budget of the double-exponential rules.
    std::size_t max_refinements = 15;

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0;
};

// A u-domain integrand receives u and its complement 1 - u, the latter
// accurate even when u is within a few ulps of 1.
using UnitIntegrand = std::function<double(double u, double one_minus_u)>;
using LineIntegrand = std::function<double(double x)>;

// Double-exponential quadrature engine.  Holds the abscissa tables for one
// configuration; integrate calls are const and safe to share across threads.
class Integrator {
public:
    explicit Integrator(const QuadratureConfig& cfg = {});

    const QuadratureConfig& config() const noexcept { return cfg_; }

    // Integral over (0, 1).  Throws NoConvergence when the error estimate
    // exceeds max(abs_tol, rel_tol * |value|).
    double unit(const UnitIntegrand& f) const;
    // Same, without the tolerance check; used for inner integrals of nested
    // quadratures where the outer rule absorbs the error.
    QuadratureResult unit_unchecked(const UnitIntegrand& f) const;
    // Unchecked integral over (0, 1) on a separate rule, for use inside the
    // integrand of unit() or line().
    QuadratureResult inner(const UnitIntegrand& f) const;

    // Integral over [a, b]; b may be +infinity.
    double line(const LineIntegrand& f, double a, double b) const;

private:
    double checked(const QuadratureResult& r, const char* what) const;

    QuadratureConfig cfg_;
    // Boost 1.74 declares the two-argument tanh_sinh::integrate non-const.
    // The rules lock their own table growth, so sharing stays safe.
    // Each rule may grow its tables mid-call, so nested integrals need a
    // rule of their own.
    mutable boost::math::quadrature::tanh_sinh<double> finite_;
    mutable boost::math::quadrature::tanh_sinh<double> nested_;
    mutable boost::math::quadrature::exp_sinh<double> half_line_;
};

// Convenience wrapper: adaptive estimate of the integral of f over (0, 1).
double integrate_u(const UnitIntegrand& f, const QuadratureConfig& cfg = {});
double integrate_u(const std::function<double(double)>& f, const QuadratureConfig& cfg = {});

}  // namespace ginient
