#include "ginient/pwm.hpp"

#include <cmath>
#include <string>

#include "ginient/error.hpp"

namespace ginient {

namespace {

bool is_nonneg_integer(double x) { return x >= 0.0 && x == std::floor(x) && x < 1e6; }

double ipow(double x, int p) {
    switch (p) {
        case 0: return 1.0;
        case 1: return x;
        case 2: return x * x;
        default: return std::pow(x, p);
    }
}

double frac_pow(double x, double e) { return e == 0.0 ? 1.0 : std::pow(x, e); }

}  // namespace

void require_finite_pwm(const ParametricModel& model, PwmIndex idx) {
    if (idx.p < 0) fail(ErrorCode::bad_parameter, "pwm p must be non-negative");
    if (!(idx.r > -1.0) || !(idx.s > -1.0)) fail(ErrorCode::bad_parameter, "pwm r and s must exceed -1");
    // Near u = 1, Q(u)^p (1-u)^s behaves like (1-u)^(s - p/a) for a power tail.
    if (!(idx.s - idx.p / model.tail_index() > -1.0)) {
        fail(ErrorCode::unsupported_spec, "M_{" + std::to_string(idx.p) + "," + std::to_string(idx.r) + "," +
                                              std::to_string(idx.s) + "} is infinite for " + model.describe());
    }
}

double pwm_population(const ParametricModel& model, PwmIndex idx, const Integrator& quad) {
    require_finite_pwm(model, idx);
    return quad.unit([&](double u, double c) {
        return ipow(model.quantile(u, c), idx.p) * frac_pow(u, idx.r) * frac_pow(c, idx.s);
    });
}

double pwm_population(const ParametricModel& model, PwmIndex idx, const QuadratureConfig& cfg) {
    return pwm_population(model, idx, Integrator(cfg));
}

double pwm_plugin(const Sample& sample, EcdfConvention conv, PwmIndex idx) {
    if (idx.p < 0) fail(ErrorCode::bad_parameter, "pwm p must be non-negative");
    const auto xs = sample.values();
    const std::size_t n = xs.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = plotting_position(conv, i + 1, n);
        sum += ipow(xs[i], idx.p) * frac_pow(u, idx.r) * frac_pow(1.0 - u, idx.s);
    }
    return sum / static_cast<double>(n);
}

double pwm_unbiased_beta(const Sample& sample, int r) {
    const auto xs = sample.values();
    const std::size_t n = xs.size();
    if (r < 0) fail(ErrorCode::bad_parameter, "r must be non-negative");
    if (n <= static_cast<std::size_t>(r)) fail(ErrorCode::too_few, "need more than r observations");
    double sum = 0.0;
    for (std::size_t i = static_cast<std::size_t>(r) + 1; i <= n; ++i) {
        // (i-1)(i-2)...(i-r) / ((n-1)(n-2)...(n-r)) as a product of ratios
        double w = 1.0;
        for (int j = 1; j <= r; ++j) {
            w *= static_cast<double>(i - j) / static_cast<double>(n - j);
        }
        sum += xs[i - 1] * w;
    }
    return sum / static_cast<double>(n);
}

double pwm_unbiased_alpha(const Sample& sample, int s) {
    const auto xs = sample.values();
    const std::size_t n = xs.size();
    if (s < 0) fail(ErrorCode::bad_parameter, "s must be non-negative");
    if (n <= static_cast<std::size_t>(s)) fail(ErrorCode::too_few, "need more than s observations");
    double sum = 0.0;
    for (std::size_t i = 1; i + s <= n; ++i) {
        // (n-i)(n-i-1)...(n-i-s+1) / ((n-1)...(n-s))
        double w = 1.0;
        for (int j = 1; j <= s; ++j) {
            w *= static_cast<double>(n - i - j + 1) / static_cast<double>(n - j);
        }
        sum += xs[i - 1] * w;
    }
    return sum / static_cast<double>(n);
}

PwmEstimate pwm_estimate(const Sample& sample, EcdfConvention conv, PwmIndex idx) {
    if (idx.p == 1) {
        if (idx.s == 0.0 && is_nonneg_integer(idx.r) && sample.size() > idx.r) {
            return {pwm_unbiased_beta(sample, static_cast<int>(idx.r)), true};
        }
        if (idx.r == 0.0 && is_nonneg_integer(idx.s) && sample.size() > idx.s) {
            return {pwm_unbiased_alpha(sample, static_cast<int>(idx.s)), true};
        }
    }
    return {pwm_plugin(sample, conv, idx), false};
}

}  // namespace ginient
