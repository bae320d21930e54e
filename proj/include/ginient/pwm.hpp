#pragma once

#include "ginient/empirical.hpp"
#include "ginient/measure_spec.hpp"
#include "ginient/models.hpp"
#include "ginient/quadrature.hpp"

namespace ginient {

// Probability weighted moments M_{p,r,s} = E[X^p F(X)^r (1 - F(X))^s].

// Throws BadParameter for p < 0 or r, s <= -1, UnsupportedSpec when the
// model's tail makes the moment infinite.
void require_finite_pwm(const ParametricModel& model, PwmIndex idx);

// Population value: integral over (0, 1) of Q(u)^p u^r (1 - u)^s.
double pwm_population(const ParametricModel& model, PwmIndex idx, const QuadratureConfig& cfg = {});
double pwm_population(const ParametricModel& model, PwmIndex idx, const Integrator& quad);

// (1/n) sum x_(i)^p u_i^r (1 - u_i)^s over plotting positions u_i.
double pwm_plugin(const Sample& sample, EcdfConvention conv, PwmIndex idx);

// b_r: unbiased for M_{1,r,0}.  Requires n > r.
double pwm_unbiased_beta(const Sample& sample, int r);
// a_s: unbiased for M_{1,0,s}.  Requires n > s.
double pwm_unbiased_alpha(const Sample& sample, int s);

struct PwmEstimate {
    double value = 0.0;
    bool unbiased = false;
};

// Unbiased b_r / a_s when p = 1 and exactly one of r, s is a non-negative
// integer with the other zero and n exceeds it; the plug-in otherwise.
PwmEstimate pwm_estimate(const Sample& sample, EcdfConvention conv, PwmIndex idx);

}  // namespace ginient
