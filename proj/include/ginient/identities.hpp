#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ginient/empirical.hpp"
#include "ginient/measure_spec.hpp"
#include "ginient/models.hpp"
#include "ginient/quadrature.hpp"

namespace ginient {

enum class Exactness { exact_sample, asymptotic, population_only };
std::string_view to_string(Exactness e);

// Where a term's threshold t comes from when the measure is truncated.
enum class Threshold { none, left, right };

struct Term {
    double coef = 1.0;
    MeasureSpec spec;
    Route route = Route::primary;
    Threshold threshold = Threshold::none;
    // Route on samples when it differs from the population one.
    std::optional<Route> sample_route;
};

// lhs = sum of terms, rhs = sum of terms, at one parameter setting.
struct Component {
    std::string label;
    std::vector<Term> lhs;
    std::vector<Term> rhs;
    // Length dimension of the values (1 for means, 2 for x^2-weighted forms);
    // sets the data scale used by asymptotic sample checks.
    int degree = 1;
};

struct Identity {
    std::string id;
    std::string description;
    Exactness exactness = Exactness::asymptotic;
    std::vector<Component> components;

    bool population_only() const noexcept { return exactness == Exactness::population_only; }
};

// I1..I14 in order.
const std::vector<Identity>& registry();

enum class Level { all, population, sample };
Level parse_level(std::string_view text);

struct VerifyConfig {
    QuadratureConfig quad;
    EcdfConvention conv = EcdfConvention::hazen;
    std::optional<double> t;
    Level level = Level::all;
    double population_tol = 1e-8;
    double exact_tol = 1e-12;
    double asymptotic_rel_tol = 5e-2;
};

enum class Status { pass, fail, skipped, error };
std::string_view to_string(Status s);

struct ComponentReport {
    std::string label;
    Status status = Status::skipped;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_residual = 0.0;
    double rel_residual = 0.0;
    double allowed = 0.0;
    std::string note;
};

struct IdentityReport {
    std::string id;
    std::string description;
    std::string source;
    std::string level;  // "population" or "sample"
    Exactness exactness = Exactness::asymptotic;
    Status status = Status::skipped;
    // Worst component: the one with the largest residual relative to its
    // allowance.
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_residual = 0.0;
    double rel_residual = 0.0;
    double abs_tol = 0.0;
    double rel_tol = 0.0;
    std::string message;
    std::vector<ComponentReport> components;
};

using Source = std::variant<ParametricModel, Sample>;

std::string describe_source(const Source& source);

// Both sides are evaluated through separate code paths.  Throws NotApplicable
// for a population-only identity on a sample.
IdentityReport verify(const Identity& identity, const Source& source, const VerifyConfig& cfg = {});

// Every identity admitted by cfg.level, in registry order.  Never throws:
// failures and numeric errors are recorded in the reports.
std::vector<IdentityReport> verify_all(const Source& source, const VerifyConfig& cfg = {});

// Default thresholds: the median, moved so that the conditioned side keeps at
// least two observations.  Empty when no such t exists.
std::optional<double> default_left_threshold(const Sample& sample);
double default_right_threshold(const Sample& sample);

}  // namespace ginient
