#include "ginient/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include "ginient/error.hpp"
#include "ginient/identities.hpp"
#include "ginient/measures.hpp"
#include "ginient/montecarlo.hpp"
#include "ginient/population.hpp"

namespace ginient::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string input;
    std::string dist;
    std::optional<double> a, b, mean, shape, scale;

    std::vector<std::string> measures;
    std::optional<double> alpha, beta, v, t, r, s;
    std::optional<int> k, p, j;
    std::string weight = "const=1";
    double phi_coef = 1.0;
    double phi_power = 1.0;
    std::string route = "primary";
    std::string conv = "hazen";
    std::optional<double> tol;
    std::optional<double> identity_tol;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    std::size_t reps = 100;
    std::string sizes;
    std::string level = "all";
    unsigned threads = 0;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return value;
}

Json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return std::strtod(format_number(x).c_str(), nullptr);
}

Json parameters_json(const MeasureSpec& spec) {
    Json out = Json::object();
    for (const auto& [name, value] : spec.parameters()) out[name] = number(value);
    return out;
}

std::string parameters_text(const MeasureSpec& spec) {
    std::string out;
    for (const auto& [name, value] : spec.parameters()) {
        if (!out.empty()) out += ';';
        out += name + '=' + format_number(value);
    }
    return out.empty() ? "-" : out;
}

bool is_json(const Options& o) {
    if (o.format == "json") return true;
    if (o.format == "tsv") return false;
    throw InputError("unknown format '" + o.format + "' (expected json or tsv)");
}

ParametricModel make_model(const Options& o) {
    auto need = [&](const std::optional<double>& value, const char* flag) {
        if (!value) fail(ErrorCode::bad_parameter, o.dist + " requires --" + flag);
        return *value;
    };
    if (o.dist == "uniform") return ParametricModel::uniform(o.a.value_or(0.0), o.b.value_or(1.0));
    if (o.dist == "exp" || o.dist == "exponential") return ParametricModel::exponential(o.mean.value_or(1.0));
    if (o.dist == "weibull") return ParametricModel::weibull(need(o.shape, "shape"), o.scale.value_or(1.0));
    if (o.dist == "pareto") return ParametricModel::pareto(need(o.shape, "shape"), o.scale.value_or(1.0));
    throw InputError("unknown distribution '" + o.dist + "' (expected uniform, exp, weibull or pareto)");
}

Sample load_sample(const std::string& path) {
    std::vector<double> values;
    if (path == "-") {
        values = read_column(std::cin, "<stdin>");
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw InputError(path + ": cannot open file");
        values = read_column(in, path);
    }
    return make_sample(values);
}

Source make_source(const Options& o) {
    if (o.input.empty() == o.dist.empty()) throw InputError("give exactly one of --input or --dist");
    if (!o.dist.empty()) return make_model(o);
    return load_sample(o.input);
}

MeasureSpec make_spec(const std::string& name, const Options& o) {
    MeasureSpec spec = MeasureSpec::simple(parse_measure(name));
    switch (spec.id) {
        case MeasureId::crt:
        case MeasureId::wcrt:
        case MeasureId::ct:
        case MeasureId::wct:
            spec.alpha = o.alpha;
            break;
        case MeasureId::sr:
        case MeasureId::sp:
        case MeasureId::srw:
        case MeasureId::spw:
            spec.alpha = o.alpha;
            spec.beta = o.beta;
            break;
        case MeasureId::s_gini:
            spec.v = o.v;
            break;
        case MeasureId::risk_premium:
        case MeasureId::gain_premium:
            spec.k = o.k;
            break;
        case MeasureId::pwm:
            spec.index = PwmIndex{o.p.value_or(1), o.r.value_or(0.0), o.s.value_or(0.0)};
            break;
        case MeasureId::cov_cdf_power:
        case MeasureId::cov_sf_power:
            spec.j = o.j;
            break;
        case MeasureId::ge:
        case MeasureId::gce:
            spec.weight = parse_weight(o.weight);
            spec.phi = Phi{o.phi_coef, o.phi_power};
            break;
        default:
            break;
    }
    if (uses_truncation(spec.id)) spec.t = o.t;
    return spec;
}

Route parse_route(const std::string& text) {
    if (text == "primary") return Route::primary;
    if (text == "definition") return Route::definition;
    if (text == "representation") return Route::representation;
    throw InputError("unknown route '" + text + "' (expected primary, definition or representation)");
}

QuadratureConfig quad_config(const Options& o) {
    QuadratureConfig cfg;
    if (o.tol) cfg.abs_tol = cfg.rel_tol = *o.tol;
    cfg.validate();
    return cfg;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto tok = trim(item);
        std::size_t n = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), n);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
            throw InputError("--sizes: cannot parse '" + std::string(tok) + "' as a sample size");
        }
        out.push_back(n);
    }
    if (out.empty()) throw InputError("--sizes requires a comma-separated list of sample sizes");
    return out;
}

// Error with the offending measure's name prepended.
[[noreturn]] void rethrow_for(const std::string& measure, const Error& e) {
    throw Error(e.code(), measure + ": " + e.what());
}

int cmd_compute(const Options& o, std::ostream& out) {
    const bool json = is_json(o);
    if (o.measures.empty()) throw InputError("compute requires at least one --measure");
    const Source source = make_source(o);
    const Route route = parse_route(o.route);
    const EcdfConvention conv = parse_convention(o.conv);
    const QuadratureConfig qcfg = quad_config(o);
    const Integrator quad(qcfg);

    struct Record {
        MeasureSpec spec;
        Estimate est;
    };
    std::vector<Record> records;
    for (const auto& name : o.measures) {
        try {
            MeasureSpec spec = make_spec(name, o);
            Estimate est;
            if (const auto* m = std::get_if<ParametricModel>(&source)) {
                est = evaluate_population(*m, spec, quad, route);
            } else {
                est = evaluate(std::get<Sample>(source), spec, conv, route);
            }
            records.push_back({std::move(spec), std::move(est)});
        } catch (const Error& e) {
            rethrow_for(name, e);
        }
    }

    const auto* sample = std::get_if<Sample>(&source);
    if (!json) out << "measure\tparameters\tvalue\testimator_route\tn\n";
    for (const auto& rec : records) {
        if (json) {
            Json row;
            row["measure"] = to_string(rec.spec.id);
            row["parameters"] = parameters_json(rec.spec);
            row["value"] = number(rec.est.value);
            row["estimator_route"] = rec.est.route;
            row["n"] = sample ? Json(sample->size()) : Json(nullptr);
            row["source"] = describe_source(source);
            if (sample) row["conv"] = to_string(conv);
            out << row.dump() << '\n';
        } else {
            out << to_string(rec.spec.id) << '\t' << parameters_text(rec.spec) << '\t' << format_number(rec.est.value)
                << '\t' << rec.est.route << '\t' << (sample ? std::to_string(sample->size()) : "-") << '\n';
        }
    }
    return ok;
}

Json component_json(const ComponentReport& c) {
    Json row;
    row["label"] = c.label;
    row["status"] = to_string(c.status);
    row["lhs"] = number(c.lhs);
    row["rhs"] = number(c.rhs);
    row["abs_residual"] = number(c.abs_residual);
    row["allowed"] = number(c.allowed);
    if (!c.note.empty()) row["note"] = c.note;
    return row;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const bool json = is_json(o);
    const Source source = make_source(o);
    VerifyConfig cfg;
    cfg.quad = quad_config(o);
    cfg.conv = parse_convention(o.conv);
    cfg.t = o.t;
    cfg.level = parse_level(o.level);
    if (o.identity_tol) cfg.population_tol = *o.identity_tol;
    if (cfg.t && !(*cfg.t >= 0.0)) fail(ErrorCode::bad_parameter, "t must be non-negative");

    const auto reports = verify_all(source, cfg);
    std::size_t passed = 0;
    std::size_t total = 0;
    bool all_ok = true;
    if (!json) out << "id\tstatus\tlhs\trhs\tabs_residual\trel_residual\tabs_tol\trel_tol\tlevel\tdescription\n";
    for (const auto& r : reports) {
        if (r.status != Status::skipped) ++total;
        if (r.status == Status::pass) ++passed;
        if (r.status == Status::fail || r.status == Status::error) all_ok = false;
        if (json) {
            Json row;
            row["id"] = r.id;
            row["description"] = r.description;
            row["source"] = r.source;
            row["level"] = r.level;
            row["exactness"] = to_string(r.exactness);
            row["status"] = to_string(r.status);
            row["lhs"] = number(r.lhs);
            row["rhs"] = number(r.rhs);
            row["abs_residual"] = number(r.abs_residual);
            row["rel_residual"] = number(r.rel_residual);
            row["abs_tol"] = number(r.abs_tol);
            row["rel_tol"] = number(r.rel_tol);
            if (!r.message.empty()) row["message"] = r.message;
            Json comps = Json::array();
            for (const auto& c : r.components) comps.push_back(component_json(c));
            row["components"] = std::move(comps);
            out << row.dump() << '\n';
        } else {
            out << r.id << '\t' << to_string(r.status) << '\t' << format_number(r.lhs) << '\t' << format_number(r.rhs)
                << '\t' << format_number(r.abs_residual) << '\t' << format_number(r.rel_residual) << '\t'
                << format_number(r.abs_tol) << '\t' << format_number(r.rel_tol) << '\t' << r.level << '\t'
                << r.description << '\n';
        }
    }
    const std::string summary = "passed " + std::to_string(passed) + "/" + std::to_string(total);
    if (json) {
        Json row;
        row["summary"] = summary;
        row["passed"] = passed;
        row["total"] = total;
        out << row.dump() << '\n';
    } else {
        out << "# " << summary << '\n';
    }
    return all_ok ? ok : identity_failure;
}

int cmd_mc(const Options& o, std::ostream& out) {
    const bool json = is_json(o);
    if (!o.seed) throw InputError("mc requires --seed");
    if (o.measures.empty()) throw InputError("mc requires at least one --measure");
    if (o.dist.empty()) throw InputError("mc requires --dist");
    if (!o.input.empty()) throw InputError("mc draws from --dist; --input is not accepted");
    if (o.sizes.empty()) throw InputError("mc requires --sizes");
    const ParametricModel model = make_model(o);
    McConfig cfg;
    cfg.seed = *o.seed;
    cfg.reps = o.reps;
    cfg.sizes = parse_sizes(o.sizes);
    cfg.conv = parse_convention(o.conv);
    cfg.route = parse_route(o.route);
    cfg.quad = quad_config(o);
    cfg.threads = o.threads;

    struct Block {
        MeasureSpec spec;
        std::vector<McRow> rows;
    };
    std::vector<Block> blocks;
    for (const auto& name : o.measures) {
        try {
            MeasureSpec spec = make_spec(name, o);
            auto rows = run_mc(model, spec, cfg);
            blocks.push_back({std::move(spec), std::move(rows)});
        } catch (const Error& e) {
            rethrow_for(name, e);
        }
    }

    if (!json) out << "measure\tparameters\tn\treps\ttruth\tmean\tbias\tsd\trmse\n";
    for (const auto& b : blocks) {
        for (const auto& r : b.rows) {
            if (json) {
                Json row;
                row["measure"] = to_string(b.spec.id);
                row["parameters"] = parameters_json(b.spec);
                row["source"] = model.describe();
                row["seed"] = cfg.seed;
                row["n"] = r.n;
                row["reps"] = r.reps;
                row["truth"] = number(r.truth);
                row["mean"] = number(r.mean);
                row["bias"] = number(r.bias);
                row["sd"] = number(r.sd);
                row["rmse"] = number(r.rmse);
                out << row.dump() << '\n';
            } else {
                out << to_string(b.spec.id) << '\t' << parameters_text(b.spec) << '\t' << r.n << '\t' << r.reps
                    << '\t' << format_number(r.truth) << '\t' << format_number(r.mean) << '\t'
                    << format_number(r.bias) << '\t' << format_number(r.sd) << '\t' << format_number(r.rmse)
                    << '\n';
            }
        }
    }
    return ok;
}

void add_source(CLI::App* app, Options& o) {
    app->add_option("--input", o.input, "CSV file with one numeric column ('-' for stdin)");
    app->add_option("--dist", o.dist, "uniform | exp | weibull | pareto");
    app->add_option("--a", o.a, "uniform lower bound (default 0)");
    app->add_option("--b", o.b, "uniform upper bound (default 1)");
    app->add_option("--mean", o.mean, "exponential mean (default 1)");
    app->add_option("--shape", o.shape, "weibull or pareto shape");
    app->add_option("--scale", o.scale, "weibull or pareto scale (default 1)");
    app->add_option("--conv", o.conv, "ECDF plotting positions: hazen | naive | mean-rank");
    app->add_option("--tol", o.tol, "quadrature tolerance (absolute and relative)");
    app->add_option("--format", o.format, "json | tsv");
    app->add_option("--t", o.t, "threshold for truncated measures");
}

void add_measure(CLI::App* app, Options& o) {
    app->add_option("--measure", o.measures, "measure name (repeatable)");
    app->add_option("--alpha", o.alpha, "order alpha");
    app->add_option("--beta", o.beta, "second order beta");
    app->add_option("--v", o.v, "S-Gini parameter v");
    app->add_option("--k", o.k, "number of draws k");
    app->add_option("--p", o.p, "PWM power of x");
    app->add_option("--r", o.r, "PWM power of F");
    app->add_option("--s", o.s, "PWM power of 1 - F");
    app->add_option("--j", o.j, "covariance power j");
    app->add_option("--weight", o.weight, "GE/GCE weight: const=c | cdf^j | sf^j");
    app->add_option("--phi", o.phi_coef, "GE/GCE phi coefficient c in c*x^q");
    app->add_option("--phi-power", o.phi_power, "GE/GCE phi power q");
    app->add_option("--route", o.route, "primary | definition | representation");
}

}  // namespace

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::vector<double> read_column(std::istream& in, const std::string& name) {
    std::vector<double> values;
    std::string raw;
    std::size_t line_no = 0;
    bool seen_data = false;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        std::size_t col_base = 1;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos || line[first] == '#') continue;
        col_base += first;
        const auto field = trim(line);
        const auto where = [&](std::size_t col) {
            return name + ":" + std::to_string(line_no) + ":" + std::to_string(col) + ": ";
        };
        if (const auto comma = field.find_first_of(",;\t"); comma != std::string_view::npos) {
            throw InputError(where(col_base + comma) + "expected a single column");
        }
        const auto value = parse_double(field);
        if (!value) {
            if (!seen_data && values.empty()) {
                seen_data = true;  // header line
                continue;
            }
            throw InputError(where(col_base) + "cannot parse '" + std::string(field) + "' as a number");
        }
        seen_data = true;
        values.push_back(*value);
    }
    if (in.bad()) throw InputError(name + ": read error");
    return values;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gini mean difference, extropy and cumulative entropy measures", "ginient"};
    app.require_subcommand(1);
    Options o;

    auto* compute = app.add_subcommand("compute", "compute measures for a sample or a model");
    add_source(compute, o);
    add_measure(compute, o);

    auto* verify = app.add_subcommand("verify", "check the identity registry on a sample or a model");
    add_source(verify, o);
    verify->add_option("--level", o.level, "all | population | sample");
    verify->add_option("--identity-tol", o.identity_tol, "population identity tolerance (default 1e-8)");

    auto* mc = app.add_subcommand("mc", "Monte Carlo bias, sd and RMSE of sample estimators");
    add_source(mc, o);
    add_measure(mc, o);
    mc->add_option("--seed", o.seed, "64-bit seed (required)");
    mc->add_option("--reps", o.reps, "replications per sample size (default 100)");
    mc->add_option("--sizes", o.sizes, "comma-separated sample sizes");
    mc->add_option("--threads", o.threads, "worker threads (0 = hardware concurrency)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    }

    try {
        if (compute->parsed()) return cmd_compute(o, out);
        if (verify->parsed()) return cmd_verify(o, out);
        return cmd_mc(o, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return domain_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    }
}

}  // namespace ginient::cli
