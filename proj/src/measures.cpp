#include "ginient/measures.hpp"

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "ginient/error.hpp"
#include "ginient/pwm.hpp"

namespace ginient {

namespace {

// sum_j (m + 1 - 2j)(y_(m+1-j) - y_(j)); every term is non-negative, so the
// result is exactly zero for tied data and never negative.
double pairwise_spread_sum(std::span<const double> ys) {
    const std::size_t m = ys.size();
    double sum = 0.0;
    for (std::size_t j = 1; 2 * j <= m; ++j) {
        sum += static_cast<double>(m + 1 - 2 * j) * (ys[m - j] - ys[j - 1]);
    }
    return sum;
}

double half_gmd(std::span<const double> ys) {
    const double m = static_cast<double>(ys.size());
    return pairwise_spread_sum(ys) / (m * (m - 1.0));
}

std::span<const double> tail_above(const Sample& sample, double t) {
    const std::size_t first = sample.upper_index(t);
    return sample.values().subspan(first);
}

std::span<const double> head_at_or_below(const Sample& sample, double t) {
    return sample.values().first(sample.upper_index(t));
}

void require_pairs(std::span<const double> part, const char* where) {
    if (part.empty()) fail(ErrorCode::empty_tail, std::string("no observations ") + where + " t");
    if (part.size() < 2) fail(ErrorCode::fewer_than_two, std::string("fewer than two observations ") + where + " t");
}

void check_t(double t) {
    if (!std::isfinite(t) || t < 0.0) fail(ErrorCode::bad_parameter, "t must be a finite value >= 0");
}

void check_order(double alpha) {
    if (!(alpha > 0.0)) fail(ErrorCode::bad_parameter, "alpha must be positive");
    if (alpha == 1.0) fail(ErrorCode::bad_parameter, "alpha must differ from 1");
}

struct Pwm {
    const Sample& sample;
    EcdfConvention conv;
    bool all_unbiased = true;

    double operator()(int p, double r, double s) {
        const auto est = pwm_estimate(sample, conv, PwmIndex{p, r, s});
        all_unbiased = all_unbiased && est.unbiased;
        return est.value;
    }
    std::string route() const { return all_unbiased ? "pwm-unbiased" : "pwm-plugin"; }
};

// Plug-in covariance of x and g(u_i) over plotting positions.
double plugin_covariance(const Sample& sample, EcdfConvention conv, double power, bool use_sf) {
    const auto xs = sample.values();
    const std::size_t n = xs.size();
    std::vector<double> g(n);
    double gbar = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = plotting_position(conv, i + 1, n);
        g[i] = std::pow(use_sf ? 1.0 - u : u, power);
        gbar += g[i];
    }
    gbar /= static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += (xs[i] - sample.mean()) * (g[i] - gbar);
    return sum / static_cast<double>(n);
}

double tsallis(const Sample& sample, double alpha, EcdfConvention conv, bool residual, bool weighted,
               std::string* route) {
    check_order(alpha);
    Pwm m{sample, conv};
    const int p = weighted ? 2 : 1;
    const double base = m(p, 0, 0);
    const double tail = residual ? m(p, 0, alpha - 1.0) : m(p, alpha - 1.0, 0);
    const double scale = weighted ? 2.0 * (alpha - 1.0) : alpha - 1.0;
    if (route) *route = m.route();
    // residual:  (M_p00 - alpha M_{p,0,alpha-1}) / scale
    // past:      (alpha M_{p,alpha-1,0} - M_p00) / scale
    return residual ? (base - alpha * tail) / scale : (alpha * tail - base) / scale;
}

double stm(const Sample& sample, double alpha, double beta, bool weighted, bool residual, EcdfConvention conv,
           std::string* route) {
    if (!(alpha > 0.0) || !(beta > 0.0)) fail(ErrorCode::bad_parameter, "alpha and beta must be positive");
    if (alpha == beta) fail(ErrorCode::bad_parameter, "alpha and beta must differ");
    Pwm m{sample, conv};
    const int p = weighted ? 2 : 1;
    auto moment = [&](double order) { return residual ? m(p, 0, order - 1.0) : m(p, order - 1.0, 0); };
    const double ma = moment(alpha);
    const double mb = moment(beta);
    const double scale = (weighted ? 2.0 : 1.0) * (beta - alpha);
    if (route) *route = m.route();
    return residual ? (alpha * ma - beta * mb) / scale : (beta * mb - alpha * ma) / scale;
}

// Step-ECDF images of the defining integrals.
double step_definition(const Sample& sample, const MeasureSpec& spec) {
    switch (spec.id) {
        case MeasureId::crj:
        case MeasureId::ce:
            return -0.5 * step_ecdf_integral(sample, 0, [](double f) { return (1 - f) * (1 - f); });
        case MeasureId::cj:
            return -0.5 * step_ecdf_integral(sample, 0, [](double f) { return 1 - f * f; });
        case MeasureId::crjw:
            return -0.5 * step_ecdf_integral(sample, 1, [](double f) { return 1 - f * f; });
        case MeasureId::wce:
            return -0.5 * step_ecdf_integral(sample, 1, [](double f) { return (1 - f) * (1 - f); });
        case MeasureId::crt:
        case MeasureId::wcrt:
        case MeasureId::ct:
        case MeasureId::wct: {
            const double a = *spec.alpha;
            check_order(a);
            const bool residual = spec.id == MeasureId::crt || spec.id == MeasureId::wcrt;
            const int w = (spec.id == MeasureId::wcrt || spec.id == MeasureId::wct) ? 1 : 0;
            return step_ecdf_integral(sample, w, [=](double f) {
                       const double q = residual ? 1 - f : f;
                       return q - std::pow(q, a);
                   }) /
                   (a - 1.0);
        }
        case MeasureId::sr:
        case MeasureId::sp:
        case MeasureId::srw:
        case MeasureId::spw: {
            const double a = *spec.alpha;
            const double b = *spec.beta;
            const bool residual = spec.id == MeasureId::sr || spec.id == MeasureId::srw;
            const int w = (spec.id == MeasureId::srw || spec.id == MeasureId::spw) ? 1 : 0;
            return step_ecdf_integral(sample, w, [=](double f) {
                       const double q = residual ? 1 - f : f;
                       return std::pow(q, a) - std::pow(q, b);
                   }) /
                   (b - a);
        }
        case MeasureId::risk_premium: {
            const int k = *spec.k;
            return step_ecdf_integral(sample, 0, [=](double f) { return (1 - f) - std::pow(1 - f, k); });
        }
        case MeasureId::gain_premium: {
            const int k = *spec.k;
            return step_ecdf_integral(sample, 0, [=](double f) { return f - std::pow(f, k); });
        }
        default:
            break;
    }
    fail(ErrorCode::not_applicable, "no step-ECDF route for " + spec.describe());
}

// k/n * prod_{j=0}^{k-2} (top - j) / (n - 1 - j); zero once top < k - 1.
double order_weight(std::size_t top, std::size_t n, int k) {
    if (top + 1 < static_cast<std::size_t>(k)) return 0.0;
    double w = static_cast<double>(k) / static_cast<double>(n);
    for (int j = 0; j <= k - 2; ++j) {
        w *= static_cast<double>(top - j) / static_cast<double>(n - 1 - j);
    }
    return w;
}

void check_premium(const Sample& sample, int k) {
    if (k < 2) fail(ErrorCode::bad_parameter, "k must be an integer >= 2");
    if (sample.size() < static_cast<std::size_t>(k)) fail(ErrorCode::too_few, "need at least k observations");
}

}  // namespace

double gmd(const Sample& sample) { return 2.0 * half_gmd(sample.values()); }

double gmd_via_pwm(const Sample& sample) {
    return 2.0 * pwm_unbiased_beta(sample, 1) - 2.0 * pwm_unbiased_alpha(sample, 1);
}

double gmd_left(const Sample& sample, double t) {
    check_t(t);
    const auto tail = tail_above(sample, t);
    require_pairs(tail, "above");
    return half_gmd(tail);
}

double gmd_right(const Sample& sample, double t) {
    check_t(t);
    const auto head = head_at_or_below(sample, t);
    require_pairs(head, "at or below");
    return half_gmd(head);
}

double j_dyn(const Sample& sample, double t) {
    check_t(t);
    const auto tail = tail_above(sample, t);
    require_pairs(tail, "above");
    // the minimum of pair (j, l), j < l, is y_(j); it has m - j partners above
    const std::size_t m = tail.size();
    double sum = 0.0;
    for (std::size_t j = 1; j < m; ++j) sum += static_cast<double>(m - j) * (tail[j - 1] - t);
    const double pairs = 0.5 * static_cast<double>(m) * static_cast<double>(m - 1);
    return -0.5 * sum / pairs;
}

double h_dyn(const Sample& sample, double t) {
    check_t(t);
    const auto head = head_at_or_below(sample, t);
    require_pairs(head, "at or below");
    const std::size_t m = head.size();
    double sum = 0.0;
    for (std::size_t j = 2; j <= m; ++j) sum += static_cast<double>(j - 1) * (t - head[j - 1]);
    const double pairs = 0.5 * static_cast<double>(m) * static_cast<double>(m - 1);
    return -0.5 * sum / pairs;
}

double s_gini(const Sample& sample, double v, EcdfConvention conv) {
    if (!(v > 0.0)) fail(ErrorCode::bad_parameter, "v must be positive");
    if (v == 1.0) fail(ErrorCode::bad_parameter, "v must differ from 1");
    Pwm m{sample, conv};
    return sample.mean() / v - m(1, 0, v - 1.0);
}

double crj(const Sample& sample) { return -pwm_unbiased_alpha(sample, 1); }
double cj(const Sample& sample) { return -pwm_unbiased_beta(sample, 1); }
double ce(const Sample& sample) { return -pwm_unbiased_alpha(sample, 1); }

double crjw(const Sample& sample, EcdfConvention conv) { return -0.5 * pwm_plugin(sample, conv, {2, 1, 0}); }
double wce(const Sample& sample, EcdfConvention conv) { return -0.5 * pwm_plugin(sample, conv, {2, 0, 1}); }

double crt(const Sample& sample, double alpha, EcdfConvention conv) {
    return tsallis(sample, alpha, conv, true, false, nullptr);
}
double ct(const Sample& sample, double alpha, EcdfConvention conv) {
    return tsallis(sample, alpha, conv, false, false, nullptr);
}
double wcrt(const Sample& sample, double alpha, EcdfConvention conv) {
    return tsallis(sample, alpha, conv, true, true, nullptr);
}
double wct(const Sample& sample, double alpha, EcdfConvention conv) {
    return tsallis(sample, alpha, conv, false, true, nullptr);
}

double stm_family(const Sample& sample, double alpha, double beta, bool weighted, bool residual,
                  EcdfConvention conv) {
    return stm(sample, alpha, beta, weighted, residual, conv, nullptr);
}

double generalized_residual_entropy(const Sample& sample, const Weight& w, const Phi& phi, EcdfConvention conv) {
    const auto xs = sample.values();
    const std::size_t n = xs.size();
    // suffix[i] = sum of phi(x_j) for j >= i
    std::vector<double> suffix(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + phi(xs[i]);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t first = sample.upper_index(xs[i]);
        if (first == n) continue;
        const double upper_mean = suffix[first] / static_cast<double>(n - first);
        const double u = plotting_position(conv, i + 1, n);
        total += w.at(u, 1.0 - u) * (upper_mean - phi(xs[i]));
    }
    return total / static_cast<double>(n);
}

double generalized_cumulative_entropy(const Sample& sample, const Weight& w, const Phi& phi, EcdfConvention conv) {
    const auto xs = sample.values();
    const std::size_t n = xs.size();
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + phi(xs[i]);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t count = sample.upper_index(xs[i]);
        const double lower_mean = prefix[count] / static_cast<double>(count);
        const double u = plotting_position(conv, i + 1, n);
        total += w.at(u, 1.0 - u) * (phi(xs[i]) - lower_mean);
    }
    return total / static_cast<double>(n);
}

double expected_min_of(const Sample& sample, int k) {
    check_premium(sample, k);
    const auto xs = sample.values();
    const std::size_t n = xs.size();
    double sum = 0.0;
    // C(n-i, k-1) / C(n, k) for the i-th order statistic
    for (std::size_t i = 1; i <= n; ++i) sum += order_weight(n - i, n, k) * xs[i - 1];
    return sum;
}

double expected_max_of(const Sample& sample, int k) {
    check_premium(sample, k);
    const auto xs = sample.values();
    const std::size_t n = xs.size();
    double sum = 0.0;
    // C(i-1, k-1) / C(n, k)
    for (std::size_t i = 1; i <= n; ++i) sum += order_weight(i - 1, n, k) * xs[i - 1];
    return sum;
}

double risk_premium(const Sample& sample, int k) { return sample.mean() - expected_min_of(sample, k); }
double gain_premium(const Sample& sample, int k) { return expected_max_of(sample, k) - sample.mean(); }

Estimate evaluate(const Sample& sample, const MeasureSpec& spec, EcdfConvention conv, Route route) {
    spec.validate();
    const bool def = route == Route::definition;
    const bool rep = route == Route::representation;
    std::string label;
    switch (spec.id) {
        case MeasureId::gmd:
            if (rep) return {gmd_via_pwm(sample), "pwm-unbiased"};
            return {gmd(sample), "u-statistic"};
        case MeasureId::gmd_left: return {gmd_left(sample, *spec.t), "u-statistic"};
        case MeasureId::gmd_right: return {gmd_right(sample, *spec.t), "u-statistic"};
        case MeasureId::j_dyn: return {j_dyn(sample, *spec.t), "u-statistic"};
        case MeasureId::h_dyn: return {h_dyn(sample, *spec.t), "u-statistic"};
        case MeasureId::mean_residual: return {conditional_mean_above(sample, *spec.t), "tail-mean"};
        case MeasureId::mean_past: return {conditional_mean_below(sample, *spec.t), "tail-mean"};
        case MeasureId::s_gini:
            if (def) return {-plugin_covariance(sample, conv, *spec.v - 1.0, true), "plugin-covariance"};
            {
                Pwm m{sample, conv};
                const double value = sample.mean() / *spec.v - m(1, 0, *spec.v - 1.0);
                return {value, m.route()};
            }
        case MeasureId::crj:
        case MeasureId::ce:
            if (def) return {step_definition(sample, spec), "step-ecdf"};
            return {-pwm_unbiased_alpha(sample, 1), "pwm-unbiased"};
        case MeasureId::cj:
            if (def) return {step_definition(sample, spec), "step-ecdf"};
            return {-pwm_unbiased_beta(sample, 1), "pwm-unbiased"};
        case MeasureId::crjw:
            if (def) return {step_definition(sample, spec), "step-ecdf"};
            return {crjw(sample, conv), "pwm-plugin"};
        case MeasureId::wce:
            if (def) return {step_definition(sample, spec), "step-ecdf"};
            return {wce(sample, conv), "pwm-plugin"};
        case MeasureId::crt:
        case MeasureId::wcrt:
        case MeasureId::ct:
        case MeasureId::wct: {
            if (def) return {step_definition(sample, spec), "step-ecdf"};
            const bool residual = spec.id == MeasureId::crt || spec.id == MeasureId::wcrt;
            const bool weighted = spec.id == MeasureId::wcrt || spec.id == MeasureId::wct;
            const double value = tsallis(sample, *spec.alpha, conv, residual, weighted, &label);
            return {value, label};
        }
        case MeasureId::sr:
        case MeasureId::sp:
        case MeasureId::srw:
        case MeasureId::spw: {
            if (def) return {step_definition(sample, spec), "step-ecdf"};
            const bool residual = spec.id == MeasureId::sr || spec.id == MeasureId::srw;
            const bool weighted = spec.id == MeasureId::srw || spec.id == MeasureId::spw;
            const double value = stm(sample, *spec.alpha, *spec.beta, weighted, residual, conv, &label);
            return {value, label};
        }
        case MeasureId::ge:
            return {generalized_residual_entropy(sample, spec.weight, spec.phi, conv), "plugin-double-sum"};
        case MeasureId::gce:
            return {generalized_cumulative_entropy(sample, spec.weight, spec.phi, conv), "plugin-double-sum"};
        case MeasureId::risk_premium:
            if (def) return {step_definition(sample, spec), "step-ecdf"};
            return {risk_premium(sample, *spec.k), "u-statistic"};
        case MeasureId::gain_premium:
            if (def) return {step_definition(sample, spec), "step-ecdf"};
            return {gain_premium(sample, *spec.k), "u-statistic"};
        case MeasureId::pwm: {
            if (def) return {pwm_plugin(sample, conv, *spec.index), "pwm-plugin"};
            const auto est = pwm_estimate(sample, conv, *spec.index);
            return {est.value, est.unbiased ? "pwm-unbiased" : "pwm-plugin"};
        }
        case MeasureId::cov_cdf_power:
        case MeasureId::cov_sf_power: {
            const bool sf = spec.id == MeasureId::cov_sf_power;
            const int j = *spec.j;
            if (rep) {
                Pwm m{sample, conv};
                const double moment = sf ? m(1, 0, j) : m(1, j, 0);
                return {moment - sample.mean() / (j + 1.0), m.route()};
            }
            return {plugin_covariance(sample, conv, j, sf), "plugin-covariance"};
        }
        case MeasureId::ge_series:
        case MeasureId::gce_parallel:
        case MeasureId::left_excess_average:
        case MeasureId::right_excess_average:
            break;
    }
    fail(ErrorCode::not_applicable, spec.describe() + " is defined at population level only");
}

}  // namespace ginient
