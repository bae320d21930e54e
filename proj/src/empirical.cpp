#include "ginient/empirical.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "ginient/error.hpp"

namespace ginient {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::negative_value: return "NegativeValue";
        case ErrorCode::too_few: return "TooFew";
        case ErrorCode::non_finite: return "NonFinite";
        case ErrorCode::empty_tail: return "EmptyTail";
        case ErrorCode::fewer_than_two: return "FewerThanTwo";
        case ErrorCode::bad_parameter: return "BadParameter";
        case ErrorCode::no_convergence: return "NoConvergence";
        case ErrorCode::unsupported_spec: return "UnsupportedSpec";
        case ErrorCode::not_applicable: return "NotApplicable";
    }
    return "Unknown";
}

EcdfConvention parse_convention(std::string_view name) {
    if (name == "hazen") return EcdfConvention::hazen;
    if (name == "naive") return EcdfConvention::naive;
    if (name == "mean-rank" || name == "mean_rank") return EcdfConvention::mean_rank;
    fail(ErrorCode::bad_parameter, "unknown ECDF convention '" + std::string(name) + "'");
}

std::string_view to_string(EcdfConvention conv) {
    switch (conv) {
        case EcdfConvention::hazen: return "hazen";
        case EcdfConvention::naive: return "naive";
        case EcdfConvention::mean_rank: return "mean-rank";
    }
    return "hazen";
}

Sample::Sample(std::vector<double> sorted) : values_(std::move(sorted)) {
    mean_ = std::accumulate(values_.begin(), values_.end(), 0.0) /
            static_cast<double>(values_.size());
}

std::size_t Sample::upper_index(double t) const {
    return static_cast<std::size_t>(
        std::upper_bound(values_.begin(), values_.end(), t) - values_.begin());
}

Sample make_sample(std::span<const double> raw) {
    for (double x : raw) {
        if (!std::isfinite(x)) fail(ErrorCode::non_finite, "observations must be finite");
    }
    for (double x : raw) {
        if (x < 0.0) {
            fail(ErrorCode::negative_value,
                 "observations must be non-negative (got " + std::to_string(x) + ")");
        }
    }
    if (raw.size() < 2) fail(ErrorCode::too_few, "need at least 2 observations");
    std::vector<double> sorted(raw.begin(), raw.end());
    std::sort(sorted.begin(), sorted.end());
    return Sample(std::move(sorted));
}

double plotting_position(EcdfConvention conv, std::size_t rank, std::size_t n) {
    const double i = static_cast<double>(rank);
    const double m = static_cast<double>(n);
    switch (conv) {
        case EcdfConvention::hazen: return (i - 0.5) / m;
        case EcdfConvention::naive: return i / m;
        case EcdfConvention::mean_rank: return i / (m + 1.0);
    }
    return (i - 0.5) / m;
}

std::vector<double> plotting_positions(EcdfConvention conv, std::size_t n) {
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = plotting_position(conv, i + 1, n);
    return u;
}

double ecdf_at(const Sample& sample, EcdfConvention conv, double x) {
    const std::size_t k = sample.upper_index(x);
    if (k == 0) return 0.0;
    return plotting_position(conv, k, sample.size());
}

double conditional_mean_above(const Sample& sample, double t) {
    const auto xs = sample.values();
    const std::size_t first = sample.upper_index(t);
    if (first == xs.size()) fail(ErrorCode::empty_tail, "no observation exceeds t");
    double sum = 0.0;
    for (std::size_t i = first; i < xs.size(); ++i) sum += xs[i] - t;
    return sum / static_cast<double>(xs.size() - first);
}

double conditional_mean_below(const Sample& sample, double t) {
    const auto xs = sample.values();
    const std::size_t count = sample.upper_index(t);
    if (count == 0) fail(ErrorCode::empty_tail, "no observation is at or below t");
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) sum += t - xs[i];
    return sum / static_cast<double>(count);
}

double step_ecdf_integral(const Sample& sample, int weight_power,
                          const std::function<double(double)>& g) {
    const auto xs = sample.values();
    const double n = static_cast<double>(xs.size());
    // integral of x^w over [a, b]
    auto power_integral = [weight_power](double a, double b) {
        if (weight_power == 0) return b - a;
        if (weight_power == 1) return 0.5 * (b - a) * (b + a);
        const double w1 = weight_power + 1.0;
        return (std::pow(b, w1) - std::pow(a, w1)) / w1;
    };
    double total = g(0.0) * power_integral(0.0, xs[0]);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (xs[i + 1] == xs[i]) continue;
        total += g(static_cast<double>(i + 1) / n) * power_integral(xs[i], xs[i + 1]);
    }
    return total;
}

std::uint64_t digest(const Sample& sample) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const double x : sample.values()) {
        auto bits = std::bit_cast<std::uint64_t>(x);
        for (int i = 0; i < 8; ++i) {
            h ^= bits & 0xffU;
            h *= 0x100000001b3ULL;
            bits >>= 8;
        }
    }
    return h;
}

}  // namespace ginient
