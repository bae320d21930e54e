#pragma once

#include "ginient/measure_spec.hpp"
#include "ginient/models.hpp"
#include "ginient/quadrature.hpp"

namespace ginient {

// Population value of a measure under a parametric model.
//
// definition:     the defining integral in x (survival/distribution-function
//                 form), or the nested conditional-expectation integral for
//                 GE/GCE.
// representation: the u-domain quantile form; PWMs for the untruncated
//                 measures, conditional quantiles for truncated ones, the
//                 cumulative-entropy x-integral for GE/GCE.
// primary:        x-domain for truncated measures, representation otherwise.
//
// Throws UnsupportedSpec when the value is infinite for the model, EmptyTail
// when t leaves no mass on the conditioned side, NoConvergence from the
// quadrature.
Estimate evaluate_population(const ParametricModel& model, const MeasureSpec& spec, const Integrator& quad,
                             Route route = Route::primary);

double measure_population(const ParametricModel& model, const MeasureSpec& spec, const QuadratureConfig& cfg = {});

}  // namespace ginient
