#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ginient/empirical.hpp"
#include "ginient/measure_spec.hpp"
#include "ginient/models.hpp"
#include "ginient/quadrature.hpp"

namespace ginient {

// SplitMix64 generator.  Replicate r at sample size n draws from the stream
// keyed by stream_key(seed, n, r), so every replicate is reproducible on its
// own, whatever the scheduling.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}
    std::uint64_t next();
    // Uniform on (0, 1), never 0 or 1: ((bits >> 11) + 0.5) * 2^-53.
    double uniform();

private:
    std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t z);
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t n, std::uint64_t r);

// n inverse-transform draws from the model.
std::vector<double> draw(const ParametricModel& model, std::size_t n, SplitMix64& rng);

struct McConfig {
    std::uint64_t seed = 0;
    std::size_t reps = 100;
    std::vector<std::size_t> sizes;
    EcdfConvention conv = EcdfConvention::hazen;
    Route route = Route::primary;
    QuadratureConfig quad;
    // 0 picks the hardware concurrency.
    unsigned threads = 0;
};

struct McRow {
    std::size_t n = 0;
    std::size_t reps = 0;
    double truth = 0.0;
    double mean = 0.0;
    double bias = 0.0;
    double sd = 0.0;  // n - 1 denominator
    double rmse = 0.0;
};

// Estimates of the replicates in (r) order for one sample size.
std::vector<double> replicate_estimates(const ParametricModel& model, const MeasureSpec& spec, std::size_t n,
                                        const McConfig& cfg);

// One row per entry of cfg.sizes, in order.  Throws on invalid sizes
// (n < 2), on a population value that cannot be computed, and on the first
// estimator error.
std::vector<McRow> run_mc(const ParametricModel& model, const MeasureSpec& spec, const McConfig& cfg);

}  // namespace ginient
