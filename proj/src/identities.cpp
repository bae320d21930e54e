#include "ginient/identities.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>

#include "ginient/error.hpp"
#include "ginient/measures.hpp"
#include "ginient/population.hpp"

namespace ginient {

namespace {

using M = MeasureId;
constexpr Route kDef = Route::definition;
constexpr Route kRep = Route::representation;

Term term(double coef, MeasureSpec spec, Route route, Threshold th = Threshold::none) {
    return Term{coef, std::move(spec), route, th, std::nullopt};
}

Term on_sample(Term t, Route route) {
    t.sample_route = route;
    return t;
}

std::string fmt_param(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

std::vector<Identity> build_registry() {
    std::vector<Identity> out;

    out.push_back({"I1", "GMD = 2 M(1,1,0) - 2 M(1,0,1)", Exactness::exact_sample,
                   {{"gmd",
                     {term(1, MeasureSpec::simple(M::gmd), kDef)},
                     {term(2, MeasureSpec::pwm(1, 1, 0), kRep), term(-2, MeasureSpec::pwm(1, 0, 1), kRep)}}}});

    out.push_back({"I2", "GE(w = 1 - F, phi = 2x) = 4 Cov(X, F(X))", Exactness::asymptotic,
                   {{"ge",
                     {term(1, MeasureSpec::generalized(M::ge, Weight::sf_power(1), Phi{2, 1}), kDef)},
                     {on_sample(term(4, MeasureSpec::covariance(M::cov_cdf_power, 1), kRep), kDef)}}}});

    out.push_back({"I3", "GMD = 2 CRT_2", Exactness::exact_sample,
                   {{"alpha=2",
                     {term(1, MeasureSpec::simple(M::gmd), kDef)},
                     {term(2, MeasureSpec::order(M::crt, 2), kRep)}}}});

    out.push_back({"I4", "2 CRJ - 2 CJ = GMD", Exactness::exact_sample,
                   {{"crj-cj",
                     {on_sample(term(2, MeasureSpec::simple(M::crj), kDef), kRep),
                      on_sample(term(-2, MeasureSpec::simple(M::cj), kDef), kRep)},
                     {on_sample(term(1, MeasureSpec::simple(M::gmd), kRep), kDef)}}}});

    out.push_back({"I5", "GMD_L(t) = m(t) + 2 J_t", Exactness::exact_sample,
                   {{"left",
                     {term(1, MeasureSpec::at_t(M::gmd_left, 0), kRep, Threshold::left)},
                     {term(1, MeasureSpec::at_t(M::mean_residual, 0), kDef, Threshold::left),
                      term(2, MeasureSpec::at_t(M::j_dyn, 0), kDef, Threshold::left)}}}});

    out.push_back({"I6", "GMD_R(t) = 2 H_t + r(t)", Exactness::exact_sample,
                   {{"right",
                     {term(1, MeasureSpec::at_t(M::gmd_right, 0), kRep, Threshold::right)},
                     {term(2, MeasureSpec::at_t(M::h_dyn, 0), kDef, Threshold::right),
                      term(1, MeasureSpec::at_t(M::mean_past, 0), kDef, Threshold::right)}}}});

    {
        Identity id{"I7", "GE(w = 1 - F, phi = 2x^v) = E(max(X1,X2)^v - min(X1,X2)^v)", Exactness::asymptotic, {}};
        for (int v : {1, 2}) {
            id.components.push_back(
                {"v=" + std::to_string(v),
                 {term(1, MeasureSpec::generalized(M::ge, Weight::sf_power(1), Phi{2, double(v)}), kDef)},
                 {term(2, MeasureSpec::pwm(v, 1, 0), kRep), term(-2, MeasureSpec::pwm(v, 0, 1), kRep)},
                 v});
        }
        out.push_back(std::move(id));
    }

    out.push_back({"I8", "GCE(w = F, phi = 2x) = E(max(X1,X2) - min(X1,X2))", Exactness::asymptotic,
                   {{"k=2",
                     {term(1, MeasureSpec::generalized(M::gce, Weight::cdf_power(1), Phi{2, 1}), kDef)},
                     {term(1, MeasureSpec::premium(M::gain_premium, 2), kRep),
                      term(1, MeasureSpec::premium(M::risk_premium, 2), kRep)}}}});

    {
        Identity id{"I9", "extropy and cumulative entropy PWM forms", Exactness::asymptotic, {}};
        const std::pair<M, int> parts[] = {{M::crj, 1}, {M::cj, 1}, {M::crjw, 2}, {M::ce, 1}, {M::wce, 2}};
        for (const auto& [m, degree] : parts) {
            id.components.push_back({std::string(to_string(m)),
                                     {term(1, MeasureSpec::simple(m), kDef)},
                                     {term(1, MeasureSpec::simple(m), kRep)},
                                     degree});
        }
        out.push_back(std::move(id));
    }

    {
        Identity id{"I10", "cumulative Tsallis PWM forms", Exactness::asymptotic, {}};
        for (double a : {2.0, 2.5, 3.0}) {
            for (M m : {M::crt, M::ct, M::wcrt, M::wct}) {
                const int degree = (m == M::wcrt || m == M::wct) ? 2 : 1;
                id.components.push_back({std::string(to_string(m)) + " alpha=" + fmt_param(a),
                                         {term(1, MeasureSpec::order(m, a), kDef)},
                                         {term(1, MeasureSpec::order(m, a), kRep)},
                                         degree});
            }
        }
        out.push_back(std::move(id));
    }

    {
        Identity id{"I11", "cumulative two-parameter entropy PWM forms", Exactness::asymptotic, {}};
        for (auto [a, b] : {std::pair{1.0, 2.0}, std::pair{1.5, 3.0}}) {
            for (M m : {M::sr, M::sp, M::srw, M::spw}) {
                const int degree = (m == M::srw || m == M::spw) ? 2 : 1;
                id.components.push_back(
                    {std::string(to_string(m)) + " alpha=" + fmt_param(a) + " beta=" + fmt_param(b),
                     {term(1, MeasureSpec::pair(m, a, b), kDef)},
                     {term(1, MeasureSpec::pair(m, a, b), kRep)},
                     degree});
            }
        }
        out.push_back(std::move(id));
    }

    {
        Identity id{"I12", "S-Gini PWM form", Exactness::asymptotic, {}};
        for (double v : {0.5, 2.0, 3.0}) {
            id.components.push_back({"v=" + fmt_param(v),
                                     {term(1, MeasureSpec::s_gini(v), kDef)},
                                     {term(1, MeasureSpec::s_gini(v), kRep)}});
        }
        out.push_back(std::move(id));
    }

    out.push_back({"I13", "series/parallel entropies as weighted averages of truncated GMD excesses",
                   Exactness::population_only,
                   {{"series",
                     {term(1, MeasureSpec::simple(M::ge_series), kRep)},
                     {term(1, MeasureSpec::simple(M::left_excess_average), kDef)}},
                    {"parallel",
                     {term(1, MeasureSpec::simple(M::gce_parallel), kRep)},
                     {term(1, MeasureSpec::simple(M::right_excess_average), kDef)}}}});

    {
        Identity id{"I14", "E(max of k) - E(min of k) = k Cov(X, F^(k-1)) - k Cov(X, (1-F)^(k-1))",
                    Exactness::asymptotic, {}};
        for (int k : {2, 3, 4}) {
            id.components.push_back({"k=" + std::to_string(k),
                                     {on_sample(term(1, MeasureSpec::premium(M::gain_premium, k), kDef), kRep),
                                      on_sample(term(1, MeasureSpec::premium(M::risk_premium, k), kDef), kRep)},
                                     {on_sample(term(k, MeasureSpec::covariance(M::cov_cdf_power, k - 1), kRep), kDef),
                                      on_sample(term(-k, MeasureSpec::covariance(M::cov_sf_power, k - 1), kRep),
                                                kDef)}});
        }
        out.push_back(std::move(id));
    }
    return out;
}

bool is_sample_shortfall(ErrorCode code) {
    return code == ErrorCode::too_few || code == ErrorCode::empty_tail || code == ErrorCode::fewer_than_two;
}

double sample_median(const Sample& s) {
    const std::size_t n = s.size();
    return n % 2 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
}

struct Thresholds {
    std::optional<double> left;
    std::optional<double> right;
};

class Evaluator {
public:
    Evaluator(const Source& source, const VerifyConfig& cfg) : source_(source), cfg_(cfg), quad_(cfg.quad) {
        if (const auto* m = std::get_if<ParametricModel>(&source_)) {
            const double t = cfg.t ? *cfg.t : m->quantile(0.5);
            th_ = {t, t};
        } else {
            const auto& s = std::get<Sample>(source_);
            if (cfg.t) {
                th_ = {*cfg.t, *cfg.t};
            } else {
                th_ = {default_left_threshold(s), default_right_threshold(s)};
            }
        }
    }

    bool population() const { return std::holds_alternative<ParametricModel>(source_); }

    // Empty when the threshold needed by a term is unavailable.
    std::optional<double> side(const std::vector<Term>& terms) const {
        double total = 0.0;
        for (const Term& t : terms) {
            MeasureSpec spec = t.spec;
            if (t.threshold != Threshold::none) {
                const auto& th = t.threshold == Threshold::left ? th_.left : th_.right;
                if (!th) return std::nullopt;
                spec.t = *th;
            }
            double value = 0.0;
            if (const auto* m = std::get_if<ParametricModel>(&source_)) {
                value = evaluate_population(*m, spec, quad_, t.route).value;
            } else {
                value = evaluate(std::get<Sample>(source_), spec, cfg_.conv, t.sample_route.value_or(t.route)).value;
            }
            total += t.coef * value;
        }
        return total;
    }

    double data_scale(int degree) const {
        const auto& s = std::get<Sample>(source_);
        double sum = 0.0;
        for (double x : s.values()) sum += std::pow(std::abs(x), degree);
        return sum / static_cast<double>(s.size());
    }

private:
    const Source& source_;
    const VerifyConfig& cfg_;
    Integrator quad_;
    Thresholds th_;
};

Status combine(Status a, Status b) {
    auto rank = [](Status s) {
        switch (s) {
            case Status::skipped: return 0;
            case Status::pass: return 1;
            case Status::fail: return 2;
            case Status::error: return 3;
        }
        return 0;
    };
    return rank(a) >= rank(b) ? a : b;
}

}  // namespace

std::string_view to_string(Exactness e) {
    switch (e) {
        case Exactness::exact_sample: return "exact-sample";
        case Exactness::asymptotic: return "asymptotic";
        case Exactness::population_only: return "population-only";
    }
    return "asymptotic";
}

std::string_view to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::skipped: return "skipped";
        case Status::error: return "error";
    }
    return "error";
}

Level parse_level(std::string_view text) {
    if (text == "all" || text == "both") return Level::all;
    if (text == "population") return Level::population;
    if (text == "sample") return Level::sample;
    fail(ErrorCode::bad_parameter, "unknown level '" + std::string(text) + "' (expected population, sample or all)");
}

const std::vector<Identity>& registry() {
    static const std::vector<Identity> identities = build_registry();
    return identities;
}

std::optional<double> default_left_threshold(const Sample& sample) {
    const double median = sample_median(sample);
    if (sample.size() - sample.upper_index(median) >= 2) return median;
    const double half_min = 0.5 * sample.min();
    if (sample.size() - sample.upper_index(half_min) >= 2) return half_min;
    return std::nullopt;
}

double default_right_threshold(const Sample& sample) {
    const double median = sample_median(sample);
    return sample.upper_index(median) >= 2 ? median : sample.max();
}

std::string describe_source(const Source& source) {
    if (const auto* m = std::get_if<ParametricModel>(&source)) return m->describe();
    const auto& s = std::get<Sample>(source);
    char buf[64];
    std::snprintf(buf, sizeof buf, "sample(n=%zu,fnv1a=%016" PRIx64 ")", s.size(), digest(s));
    return buf;
}

IdentityReport verify(const Identity& identity, const Source& source, const VerifyConfig& cfg) {
    const Evaluator eval(source, cfg);
    const bool pop = eval.population();
    if (!pop && identity.population_only()) {
        fail(ErrorCode::not_applicable, identity.id + " is checked at population level only");
    }

    IdentityReport rep;
    rep.id = identity.id;
    rep.description = identity.description;
    rep.source = describe_source(source);
    rep.level = pop ? "population" : "sample";
    rep.exactness = identity.exactness;
    if (pop) {
        rep.abs_tol = rep.rel_tol = cfg.population_tol;
    } else if (identity.exactness == Exactness::exact_sample) {
        rep.abs_tol = rep.rel_tol = cfg.exact_tol;
    } else {
        rep.abs_tol = cfg.exact_tol;
        rep.rel_tol = cfg.asymptotic_rel_tol;
    }

    double worst = -1.0;
    for (const Component& comp : identity.components) {
        ComponentReport cr;
        cr.label = comp.label;
        try {
            const auto lhs = eval.side(comp.lhs);
            const auto rhs = eval.side(comp.rhs);
            if (!lhs || !rhs) {
                cr.status = Status::skipped;
                cr.note = "no threshold leaves two observations on the conditioned side";
            } else {
                cr.lhs = *lhs;
                cr.rhs = *rhs;
                cr.abs_residual = std::abs(cr.lhs - cr.rhs);
                double scale = std::max(std::abs(cr.lhs), std::abs(cr.rhs));
                cr.rel_residual = scale > 0.0 ? cr.abs_residual / scale : 0.0;
                if (!pop && identity.exactness == Exactness::asymptotic) {
                    scale = std::max(scale, eval.data_scale(comp.degree));
                }
                cr.allowed = std::max(rep.abs_tol, rep.rel_tol * scale);
                cr.status = cr.abs_residual <= cr.allowed ? Status::pass : Status::fail;
                const double ratio = cr.abs_residual / cr.allowed;
                if (ratio > worst) {
                    worst = ratio;
                    rep.lhs = cr.lhs;
                    rep.rhs = cr.rhs;
                    rep.abs_residual = cr.abs_residual;
                    rep.rel_residual = cr.rel_residual;
                }
            }
        } catch (const Error& e) {
            if (!pop && is_sample_shortfall(e.code())) {
                cr.status = Status::skipped;
            } else {
                cr.status = Status::error;
            }
            cr.note = std::string(to_string(e.code())) + ": " + e.what();
        }
        rep.status = combine(rep.status, cr.status);
        if (cr.status == Status::error && rep.message.empty()) rep.message = comp.label + ": " + cr.note;
        rep.components.push_back(std::move(cr));
    }
    if (rep.status == Status::skipped && rep.message.empty() && !rep.components.empty()) {
        rep.message = rep.components.front().note;
    }
    return rep;
}

std::vector<IdentityReport> verify_all(const Source& source, const VerifyConfig& cfg) {
    std::vector<IdentityReport> out;
    const bool pop = std::holds_alternative<ParametricModel>(source);
    for (const Identity& identity : registry()) {
        if (cfg.level == Level::sample && identity.population_only()) continue;
        if (cfg.level == Level::population && !pop) continue;
        if (cfg.level == Level::sample && pop) continue;
        if (!pop && identity.population_only()) {
            IdentityReport rep;
            rep.id = identity.id;
            rep.description = identity.description;
            rep.source = describe_source(source);
            rep.level = "sample";
            rep.exactness = identity.exactness;
            rep.status = Status::skipped;
            rep.message = "checked at population level only";
            out.push_back(std::move(rep));
            continue;
        }
        try {
            out.push_back(verify(identity, source, cfg));
        } catch (const std::exception& e) {
            IdentityReport rep;
            rep.id = identity.id;
            rep.description = identity.description;
            rep.level = pop ? "population" : "sample";
            rep.exactness = identity.exactness;
            rep.status = Status::error;
            rep.message = e.what();
            out.push_back(std::move(rep));
        }
    }
    return out;
}

}  // namespace ginient
