#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace ginient {

// Plotting-position rules mapping rank i (1-based) of n onto u_i in (0, 1].
enum class EcdfConvention {
    hazen,      // (i - 0.5) / n
    naive,      // i / n
    mean_rank,  // i / (n + 1)
};

EcdfConvention parse_convention(std::string_view name);
std::string_view to_string(EcdfConvention conv);

// Sorted, validated, non-negative observations.  Immutable once built; obtain
// one through make_sample().
class Sample {
public:
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double min() const noexcept { return values_.front(); }
    double max() const noexcept { return values_.back(); }
    double mean() const noexcept { return mean_; }

    // First index whose value is strictly greater than t.
    std::size_t upper_index(double t) const;

private:
    friend Sample make_sample(std::span<const double> raw);
    explicit Sample(std::vector<double> sorted);

    std::vector<double> values_;
    double mean_ = 0.0;
};

// Throws NonFinite, NegativeValue or TooFew (n < 2).
Sample make_sample(std::span<const double> raw);

// FNV-1a over the bit patterns of the sorted values.
std::uint64_t digest(const Sample& sample);

double plotting_position(EcdfConvention conv, std::size_t rank, std::size_t n);
std::vector<double> plotting_positions(EcdfConvention conv, std::size_t n);

// Right-continuous step estimate of F(x).  Tied observations share the
// position of the last rank in the tie block.
double ecdf_at(const Sample& sample, EcdfConvention conv, double x);

// Empirical mean residual life m(t) = mean of (x_i - t) over x_i > t.
double conditional_mean_above(const Sample& sample, double t);
// Empirical mean past life r(t) = mean of (t - x_i) over x_i <= t.
double conditional_mean_below(const Sample& sample, double t);

// Integral over [0, inf) of x^weight_power * g(F_n(x)) where F_n is the
// naive (i/n) step ECDF.  g(1) must vanish; the region above max(sample)
// is not integrated.
double step_ecdf_integral(const Sample& sample, int weight_power,
                          const std::function<double(double)>& g);

}  // namespace ginient
