#pragma once

#include <limits>
#include <string>

namespace ginient {

enum class Family { uniform, exponential, weibull, pareto };

// A continuous non-negative distribution with closed-form F, 1 - F and
// quantile.  Construct through the named factories, which validate the
// parameters (Pareto requires shape > 2 so that E(X^2) is finite).
class ParametricModel {
public:
    static ParametricModel uniform(double a, double b);
    static ParametricModel exponential(double mean);
    static ParametricModel weibull(double shape, double scale);
    static ParametricModel pareto(double shape, double scale);

    Family family() const noexcept { return family_; }
    // Shape-type parameter (Weibull kappa, Pareto a); unused otherwise.
    double shape() const noexcept { return shape_; }
    // Scale-type parameter (uniform b, exponential mean, Weibull lambda, Pareto sigma).
    double scale() const noexcept { return scale_; }
    double lower_param() const noexcept { return lower_; }

    double cdf(double x) const;
    double sf(double x) const;
    double quantile(double u) const;
    // Q(1 - c), evaluated directly from the upper-tail probability c.
    double quantile_upper(double c) const;
    // Q at u with complement c = 1 - u supplied by the caller; picks the
    // numerically accurate branch.
    double quantile(double u, double c) const { return u < 0.5 ? quantile(u) : quantile_upper(c); }

    double mean() const;
    // Closed-form E(X^p) when finite.
    double raw_moment(double p) const;
    bool has_moment(double p) const;
    // Power-law tail index; infinity for light tails.
    double tail_index() const noexcept;

    double support_lower() const noexcept;
    double support_upper() const noexcept;

    // Same family with every length-scale multiplied by c > 0.
    ParametricModel scaled(double c) const;

    // Upper bound on the mass of integral_0^eps Q_upper(c)^p dc dropped by
    // clipping the u-domain at eps.
    double clipped_tail_bound(double p, double eps) const;

    std::string describe() const;

private:
    ParametricModel(Family family, double lower, double shape, double scale)
        : family_(family), lower_(lower), shape_(shape), scale_(scale) {}

    Family family_;
    double lower_;
    double shape_;
    double scale_;
};

}  // namespace ginient
