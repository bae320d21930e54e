#include "ginient/models.hpp"

#include <cmath>
#include <sstream>

#include "ginient/error.hpp"

namespace ginient {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

ParametricModel ParametricModel::uniform(double a, double b) {
    if (!std::isfinite(a) || a < 0.0) fail(ErrorCode::bad_parameter, "uniform a must be a finite value >= 0");
    if (!std::isfinite(b) || !(b > a)) fail(ErrorCode::bad_parameter, "uniform b must exceed a");
    return ParametricModel(Family::uniform, a, 1.0, b);
}

ParametricModel ParametricModel::exponential(double mean) {
    if (!positive_finite(mean)) fail(ErrorCode::bad_parameter, "exponential mean must be positive");
    return ParametricModel(Family::exponential, 0.0, 1.0, mean);
}

ParametricModel ParametricModel::weibull(double shape, double scale) {
    if (!positive_finite(shape)) fail(ErrorCode::bad_parameter, "weibull shape must be positive");
    if (!positive_finite(scale)) fail(ErrorCode::bad_parameter, "weibull scale must be positive");
    return ParametricModel(Family::weibull, 0.0, shape, scale);
}

ParametricModel ParametricModel::pareto(double shape, double scale) {
    if (!std::isfinite(shape) || !(shape > 2.0)) fail(ErrorCode::bad_parameter, "pareto shape must exceed 2");
    if (!positive_finite(scale)) fail(ErrorCode::bad_parameter, "pareto scale must be positive");
    return ParametricModel(Family::pareto, 0.0, shape, scale);
}

double ParametricModel::cdf(double x) const {
    switch (family_) {
        case Family::uniform:
            if (x <= lower_) return 0.0;
            if (x >= scale_) return 1.0;
            return (x - lower_) / (scale_ - lower_);
        case Family::exponential:
            return x <= 0.0 ? 0.0 : -std::expm1(-x / scale_);
        case Family::weibull:
            return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / scale_, shape_));
        case Family::pareto:
            return x <= scale_ ? 0.0 : -std::expm1(shape_ * std::log(scale_ / x));
    }
    return 0.0;
}

double ParametricModel::sf(double x) const {
    switch (family_) {
        case Family::uniform:
            if (x <= lower_) return 1.0;
            if (x >= scale_) return 0.0;
            return (scale_ - x) / (scale_ - lower_);
        case Family::exponential:
            return x <= 0.0 ? 1.0 : std::exp(-x / scale_);
        case Family::weibull:
            return x <= 0.0 ? 1.0 : std::exp(-std::pow(x / scale_, shape_));
        case Family::pareto:
            return x <= scale_ ? 1.0 : std::pow(scale_ / x, shape_);
    }
    return 1.0;
}

double ParametricModel::quantile(double u) const {
    switch (family_) {
        case Family::uniform: return lower_ + (scale_ - lower_) * u;
        case Family::exponential: return -scale_ * std::log1p(-u);
        case Family::weibull: return scale_ * std::pow(-std::log1p(-u), 1.0 / shape_);
        case Family::pareto: return scale_ * std::exp(-std::log1p(-u) / shape_);
    }
    return 0.0;
}

double ParametricModel::quantile_upper(double c) const {
    switch (family_) {
        case Family::uniform: return scale_ - (scale_ - lower_) * c;
        case Family::exponential: return -scale_ * std::log(c);
        case Family::weibull: return scale_ * std::pow(-std::log(c), 1.0 / shape_);
        case Family::pareto: return scale_ * std::pow(c, -1.0 / shape_);
    }
    return 0.0;
}

double ParametricModel::mean() const { return raw_moment(1.0); }

double ParametricModel::raw_moment(double p) const {
    if (!has_moment(p)) fail(ErrorCode::unsupported_spec, describe() + " has no finite moment of order " + std::to_string(p));
    switch (family_) {
        case Family::uniform: {
            if (p == 0.0) return 1.0;
            const double p1 = p + 1.0;
            return (std::pow(scale_, p1) - std::pow(lower_, p1)) / (p1 * (scale_ - lower_));
        }
        case Family::exponential: return std::pow(scale_, p) * std::tgamma(1.0 + p);
        case Family::weibull: return std::pow(scale_, p) * std::tgamma(1.0 + p / shape_);
        case Family::pareto: return shape_ * std::pow(scale_, p) / (shape_ - p);
    }
    return 0.0;
}

bool ParametricModel::has_moment(double p) const { return p < tail_index(); }

double ParametricModel::tail_index() const noexcept {
    return family_ == Family::pareto ? shape_ : std::numeric_limits<double>::infinity();
}

double ParametricModel::support_lower() const noexcept {
    switch (family_) {
        case Family::uniform: return lower_;
        case Family::pareto: return scale_;
        default: return 0.0;
    }
}

double ParametricModel::support_upper() const noexcept {
    return family_ == Family::uniform ? scale_ : std::numeric_limits<double>::infinity();
}

ParametricModel ParametricModel::scaled(double c) const {
    if (!positive_finite(c)) fail(ErrorCode::bad_parameter, "scale factor must be positive");
    return ParametricModel(family_, lower_ * c, shape_, scale_ * c);
}

double ParametricModel::clipped_tail_bound(double p, double eps) const {
    if (p == 0.0) return eps;
    switch (family_) {
        case Family::uniform:
            return eps * std::pow(scale_, p);
        case Family::exponential:
        case Family::weibull: {
            // integral_0^eps (-log c)^q dc = eps L^q (1 + q/L + ...), L = -log eps
            const double q = p / (family_ == Family::weibull ? shape_ : 1.0);
            const double L = -std::log(eps);
            return eps * std::pow(scale_, p) * std::pow(L, q) * (1.0 + 2.0 * q / L);
        }
        case Family::pareto: {
            const double e = 1.0 - p / shape_;
            if (e <= 0.0) return std::numeric_limits<double>::infinity();
            return std::pow(scale_, p) * std::pow(eps, e) / e;
        }
    }
    return 0.0;
}

std::string ParametricModel::describe() const {
    std::ostringstream os;
    os.precision(12);
    switch (family_) {
        case Family::uniform: os << "uniform(a=" << lower_ << ",b=" << scale_ << ")"; break;
        case Family::exponential: os << "exponential(mean=" << scale_ << ")"; break;
        case Family::weibull: os << "weibull(shape=" << shape_ << ",scale=" << scale_ << ")"; break;
        case Family::pareto: os << "pareto(shape=" << shape_ << ",scale=" << scale_ << ")"; break;
    }
    return os.str();
}

}  // namespace ginient
