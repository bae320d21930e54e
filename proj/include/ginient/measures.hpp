#pragma once

#include "ginient/empirical.hpp"
#include "ginient/measure_spec.hpp"

namespace ginient {

// Sample estimators of the entropy, extropy and Gini-mean-difference
// measures.  All are functions of the sorted sample only.

// U-statistic estimate of E|X1 - X2|.
double gmd(const Sample& sample);
// 2 b_1 - 2 a_1; equal to gmd() up to rounding for every sample.
double gmd_via_pwm(const Sample& sample);

// E(X | X > t) - E(min | min > t) over the observations above t.
double gmd_left(const Sample& sample, double t);
// E(max | max <= t) - E(X | X <= t) over the observations at or below t.
double gmd_right(const Sample& sample, double t);

// Dynamic survival extropy J_t = -1/2 E(min(X1,X2) - t | min > t).
double j_dyn(const Sample& sample, double t);
// Dynamic cumulative extropy H_t = -1/2 E(t - max(X1,X2) | max <= t).
double h_dyn(const Sample& sample, double t);

double s_gini(const Sample& sample, double v, EcdfConvention conv = EcdfConvention::hazen);

// Cumulative residual extropy, -1/2 E(min(X1,X2)) = -M_{1,0,1}.
double crj(const Sample& sample);
// Cumulative extropy, -1/2 E(max(X1,X2)) = -M_{1,1,0}.
double cj(const Sample& sample);
double ce(const Sample& sample);
double crjw(const Sample& sample, EcdfConvention conv = EcdfConvention::hazen);
double wce(const Sample& sample, EcdfConvention conv = EcdfConvention::hazen);

// Tsallis-type cumulative entropies of order alpha (> 0, != 1).
double crt(const Sample& sample, double alpha, EcdfConvention conv = EcdfConvention::hazen);
double ct(const Sample& sample, double alpha, EcdfConvention conv = EcdfConvention::hazen);
double wcrt(const Sample& sample, double alpha, EcdfConvention conv = EcdfConvention::hazen);
double wct(const Sample& sample, double alpha, EcdfConvention conv = EcdfConvention::hazen);

// SR, SP, SRW and SPW cumulative two-parameter entropies.
double stm_family(const Sample& sample, double alpha, double beta, bool weighted, bool residual,
                  EcdfConvention conv = EcdfConvention::hazen);

// (1/n) sum_i w(x_(i)) [mean of phi(x_j) - phi(x_(i)) over x_j > x_(i)].
double generalized_residual_entropy(const Sample& sample, const Weight& w, const Phi& phi,
                                    EcdfConvention conv = EcdfConvention::hazen);
// (1/n) sum_i w(x_(i)) [mean of phi(x_(i)) - phi(x_j) over x_j <= x_(i)].
double generalized_cumulative_entropy(const Sample& sample, const Weight& w, const Phi& phi,
                                      EcdfConvention conv = EcdfConvention::hazen);

// U-statistic estimates of E(min of k draws) and E(max of k draws).
double expected_min_of(const Sample& sample, int k);
double expected_max_of(const Sample& sample, int k);
// E(X) - E(min of k) and E(max of k) - E(X).
double risk_premium(const Sample& sample, int k);
double gain_premium(const Sample& sample, int k);

// Evaluates any sample-level measure along the requested route.  Measures
// that have a single sample route ignore the route argument.  Throws
// NotApplicable for population-only functionals.
Estimate evaluate(const Sample& sample, const MeasureSpec& spec, EcdfConvention conv = EcdfConvention::hazen,
                  Route route = Route::primary);

}  // namespace ginient
