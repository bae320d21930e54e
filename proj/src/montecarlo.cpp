#include "ginient/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "ginient/error.hpp"
#include "ginient/measures.hpp"
#include "ginient/population.hpp"

namespace ginient {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
}

double SplitMix64::uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t n, std::uint64_t r) {
    std::uint64_t k = mix64(seed + 0x9e3779b97f4a7c15ULL);
    k = mix64(k ^ (n * 0xd1b54a32d192ed03ULL));
    return mix64(k ^ (r * 0xaef17502108ef2d9ULL + 1));
}

std::vector<double> draw(const ParametricModel& model, std::size_t n, SplitMix64& rng) {
    std::vector<double> xs(n);
    for (auto& x : xs) {
        const double u = rng.uniform();
        x = model.quantile(u, 1.0 - u);
    }
    return xs;
}

std::vector<double> replicate_estimates(const ParametricModel& model, const MeasureSpec& spec, std::size_t n,
                                        const McConfig& cfg) {
    if (n < 2) fail(ErrorCode::too_few, "need at least 2 observations");
    std::vector<double> out(cfg.reps);
    std::vector<std::exception_ptr> errors(cfg.reps);

    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t r = first; r < cfg.reps; r += stride) {
            try {
                SplitMix64 rng(stream_key(cfg.seed, n, r));
                const Sample s = make_sample(draw(model, n, rng));
                out[r] = evaluate(s, spec, cfg.conv, cfg.route).value;
            } catch (...) {
                errors[r] = std::current_exception();
            }
        }
    };

    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(cfg.reps, 1)));
    if (threads <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work, i, threads);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

std::vector<McRow> run_mc(const ParametricModel& model, const MeasureSpec& spec, const McConfig& cfg) {
    spec.validate();
    if (cfg.sizes.empty()) fail(ErrorCode::bad_parameter, "at least one sample size is required");
    if (cfg.reps < 2) fail(ErrorCode::bad_parameter, "at least 2 replications are required");
    for (std::size_t n : cfg.sizes) {
        if (n < 2) fail(ErrorCode::too_few, "need at least 2 observations");
    }
    const double truth = evaluate_population(model, spec, Integrator(cfg.quad)).value;

    std::vector<McRow> rows;
    for (std::size_t n : cfg.sizes) {
        const auto est = replicate_estimates(model, spec, n, cfg);
        McRow row;
        row.n = n;
        row.reps = est.size();
        row.truth = truth;
        double sum = 0.0;
        for (double v : est) sum += v;
        row.mean = sum / static_cast<double>(est.size());
        double ss = 0.0;
        double se = 0.0;
        for (double v : est) {
            ss += (v - row.mean) * (v - row.mean);
            se += (v - truth) * (v - truth);
        }
        row.bias = row.mean - truth;
        row.sd = std::sqrt(ss / static_cast<double>(est.size() - 1));
        row.rmse = std::sqrt(se / static_cast<double>(est.size()));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace ginient
