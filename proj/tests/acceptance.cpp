// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ginient/identities.hpp"
#include "ginient/measures.hpp"
#include "ginient/montecarlo.hpp"
#include "ginient/population.hpp"
#include "ginient/pwm.hpp"
#include "oracles.hpp"

using namespace ginient;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects failures of one criterion and prints its line.
class Criterion {
public:
    Criterion(int number, std::string title) : number_(number), title_(std::move(title)) {}

    void check(bool ok, const std::string& what) {
        ++checks_;
        if (!ok && failures_.size() < 5) failures_.push_back(what);
        if (!ok) ++failed_;
    }

    void note(std::string text) { notes_ = std::move(text); }

    bool report() const {
        const bool ok = failed_ == 0 && checks_ > 0;
        std::cout << "criterion " << number_ << ": " << (ok ? "PASS" : "FAIL") << "  " << title_ << " ("
                  << checks_ - failed_ << "/" << checks_ << " checks";
        if (!notes_.empty()) std::cout << "; " << notes_;
        std::cout << ")\n";
        for (const auto& f : failures_) std::cout << "    failed: " << f << '\n';
        return ok;
    }

private:
    int number_;
    std::string title_;
    int checks_ = 0;
    int failed_ = 0;
    std::vector<std::string> failures_;
    std::string notes_;
};

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// 1. Closed-form population values.
bool criterion_closed_forms() {
    Criterion c(1, "closed-form population values at 1e-8, each under 1 s");
    const auto u = ParametricModel::uniform(0, 1);
    const auto e = ParametricModel::exponential(1);
    struct Case {
        std::string label;
        ParametricModel model;
        MeasureSpec spec;
        double expected;
    };
    std::vector<Case> cases{
        {"GMD(U(0,1))", u, MeasureSpec::simple(MeasureId::gmd), 1.0 / 3.0},
        {"CRJ(exp(1))", e, MeasureSpec::simple(MeasureId::crj), -0.25},
        {"CJ(exp(1))", e, MeasureSpec::simple(MeasureId::cj), -0.75},
        {"CRJ(U(0,1))", u, MeasureSpec::simple(MeasureId::crj), -1.0 / 6.0},
        {"CJ(U(0,1))", u, MeasureSpec::simple(MeasureId::cj), -1.0 / 3.0},
        {"CRT_2(exp(1))", e, MeasureSpec::order(MeasureId::crt, 2), 0.5},
        {"S_2(exp(1))", e, MeasureSpec::s_gini(2), 0.25},
    };
    for (double mu : {0.5, 1.0, 2.0, 5.0}) {
        cases.push_back({"GMD(exp(" + fmt(mu) + "))", ParametricModel::exponential(mu),
                         MeasureSpec::simple(MeasureId::gmd), mu});
    }
    for (double t : {0.0, 0.5, 2.0}) {
        cases.push_back({"J_t(exp(1)), t=" + fmt(t), e, MeasureSpec::at_t(MeasureId::j_dyn, t), -0.25});
    }
    for (double t : {0.25, 0.5, 0.9}) {
        cases.push_back({"H_t(U(0,1)), t=" + fmt(t), u, MeasureSpec::at_t(MeasureId::h_dyn, t), -t / 6.0});
    }
    double worst_err = 0.0, slowest = 0.0;
    for (const auto& k : cases) {
        const auto t0 = Clock::now();
        double v = NAN;
        try {
            v = measure_population(k.model, k.spec);
        } catch (const std::exception& ex) {
            c.check(false, k.label + ": " + ex.what());
            continue;
        }
        const double dt = seconds_since(t0);
        slowest = std::max(slowest, dt);
        worst_err = std::max(worst_err, std::abs(v - k.expected));
        c.check(std::abs(v - k.expected) <= 1e-8, k.label + " = " + fmt(v) + ", expected " + fmt(k.expected));
        c.check(dt < 1.0, k.label + " took " + fmt(dt) + " s");
    }
    c.note("max error " + fmt(worst_err) + ", slowest " + fmt(slowest) + " s");
    return c.report();
}

// 2. Population identity suite.
bool criterion_identity_suite() {
    Criterion c(2, "verify_all passes 14/14 at population level on the reference models, under 30 s");
    const std::vector<ParametricModel> models{
        ParametricModel::uniform(0, 1),  ParametricModel::exponential(0.5), ParametricModel::exponential(1),
        ParametricModel::exponential(2), ParametricModel::weibull(0.5, 1),  ParametricModel::weibull(1, 1),
        ParametricModel::weibull(2, 1),  ParametricModel::pareto(3, 1)};
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (const auto& m : models) {
        const auto reports = verify_all(m);
        int passed = 0;
        for (const auto& r : reports) {
            if (r.status == Status::pass && r.abs_residual <= std::max(1e-8, 1e-8 * std::max(std::abs(r.lhs), std::abs(r.rhs)))) {
                ++passed;
            }
            worst = std::max(worst, r.abs_residual);
        }
        c.check(reports.size() == 14 && passed == 14, m.describe() + ": passed " + std::to_string(passed) + "/" +
                                                          std::to_string(reports.size()));
    }
    const double dt = seconds_since(t0);
    c.check(dt < 30.0, "total runtime " + fmt(dt) + " s");
    c.note("worst residual " + fmt(worst) + ", " + fmt(dt) + " s");
    return c.report();
}

// 3. Exact sample identities on random samples.
bool criterion_exact_sample() {
    Criterion c(3, "exact sample identities at 1e-12 on 1000 random samples of sizes 2-200");
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> size(2, 200);
    double worst = 0.0;
    auto check = [&](double a, double b, const std::string& what) {
        const double err = std::abs(a - b) / std::max(1.0, std::abs(b));
        worst = std::max(worst, err);
        c.check(err <= 1e-12, what + ": " + fmt(a) + " vs " + fmt(b));
    };
    for (int rep = 0; rep < 1000; ++rep) {
        auto xs = oracle::random_sample(rng, size(rng));
        const auto s = make_sample(xs);
        const double g = gmd(s);
        const std::string tag = "sample " + std::to_string(rep) + " (n=" + std::to_string(xs.size()) + ")";
        check(gmd_via_pwm(s), g, tag + " gmd_via_pwm");
        check(gain_premium(s, 2) + risk_premium(s, 2), g, tag + " gain+risk");
        const auto crt2 = evaluate(s, MeasureSpec::order(MeasureId::crt, 2));
        c.check(crt2.route == "pwm-unbiased", tag + " crt route " + crt2.route);
        check(crt2.value, g / 2, tag + " crt(2)");
        std::shuffle(xs.begin(), xs.end(), rng);
        check(gmd(make_sample(xs)), g, tag + " permutation");
        for (double& x : xs) x += 1.75;
        check(gmd(make_sample(xs)), g, tag + " shift");
    }
    c.note("worst relative error " + fmt(worst));
    return c.report();
}

// 4. Brute-force equivalence on small samples.
bool criterion_brute_force() {
    Criterion c(4, "pairwise and k-tuple estimators match exhaustive enumeration on 240 samples of n <= 8");
    const auto t0 = Clock::now();
    std::mt19937_64 rng(8);
    double worst = 0.0;
    int samples = 0;
    auto check = [&](double a, double b, const std::string& what) {
        const double err = std::abs(a - b) / std::max(1.0, std::abs(b));
        worst = std::max(worst, err);
        c.check(err <= 1e-12, what + ": " + fmt(a) + " vs " + fmt(b));
    };
    for (int rep = 0; rep < 240; ++rep) {
        const std::size_t n = 2 + rep % 7;
        const auto xs = oracle::random_sample(rng, n);
        const auto s = make_sample(xs);
        ++samples;
        const std::string tag = "sample " + std::to_string(rep);
        check(gmd(s), oracle::gmd(xs), tag + " gmd");
        for (int k : {2, 3}) {
            if (n < static_cast<std::size_t>(k)) continue;
            check(risk_premium(s, k), oracle::mean(xs) - oracle::expected_min(xs, k), tag + " risk k=" + std::to_string(k));
            check(gain_premium(s, k), oracle::expected_max(xs, k) - oracle::mean(xs), tag + " gain k=" + std::to_string(k));
        }
        std::vector<double> ts{0.0};
        for (std::size_t i = 0; i < n; ++i) ts.push_back(s[i]);
        for (std::size_t i = 0; i + 1 < n; ++i) ts.push_back(0.5 * (s[i] + s[i + 1]));
        for (double t : ts) {
            if (oracle::above(xs, t).size() >= 2) {
                check(gmd_left(s, t), oracle::gmd_left(xs, t), tag + " gmd_left");
                check(j_dyn(s, t), oracle::j_dyn(xs, t), tag + " j_dyn");
            }
            if (oracle::at_or_below(xs, t).size() >= 2) {
                check(gmd_right(s, t), oracle::gmd_right(xs, t), tag + " gmd_right");
                check(h_dyn(s, t), oracle::h_dyn(xs, t), tag + " h_dyn");
            }
        }
    }
    const double dt = seconds_since(t0);
    c.check(samples >= 200, "only " + std::to_string(samples) + " samples");
    c.check(dt < 10.0, "runtime " + fmt(dt) + " s");
    c.note("worst relative error " + fmt(worst) + ", " + fmt(dt) + " s");
    return c.report();
}

// 5. Consistency of the estimators on exponential(1).
bool criterion_consistency() {
    Criterion c(5, "RMSE and bias shrink from n=100 to n=10000 on exponential(1), seed 42, 500 replications");
    const auto t0 = Clock::now();
    const auto model = ParametricModel::exponential(1);
    McConfig cfg;
    cfg.seed = 42;
    cfg.reps = 500;
    cfg.sizes = {100, 10000};
    std::ostringstream summary;
    for (const auto& spec : {MeasureSpec::simple(MeasureId::gmd), MeasureSpec::simple(MeasureId::crj),
                             MeasureSpec::simple(MeasureId::ce), MeasureSpec::order(MeasureId::crt, 2),
                             MeasureSpec::s_gini(2)}) {
        const auto rows = run_mc(model, spec, cfg);
        const auto& small = rows[0];
        const auto& large = rows[1];
        const std::string name = spec.describe();
        c.check(large.rmse < small.rmse, name + ": rmse " + fmt(large.rmse) + " not below " + fmt(small.rmse));
        if (large.truth != 0.0) {
            c.check(std::abs(large.bias) < 0.01 * std::abs(large.truth),
                    name + ": |bias| " + fmt(std::abs(large.bias)) + " vs truth " + fmt(large.truth));
        }
        summary << name << " rmse " << fmt(small.rmse) << "->" << fmt(large.rmse) << "; ";
    }
    const double dt = seconds_since(t0);
    c.check(dt < 120.0, "runtime " + fmt(dt) + " s");
    c.note(summary.str() + fmt(dt) + " s");
    return c.report();
}

// 6. Unbiasedness of b_1.
bool criterion_unbiased() {
    Criterion c(6, "mean of b_1 over 10^4 uniform(0,1) samples of n=20 within 4 standard errors of 1/3");
    McConfig cfg;
    cfg.seed = 6;
    cfg.reps = 10000;
    const auto spec = MeasureSpec::pwm(1, 1, 0);
    const auto est = replicate_estimates(ParametricModel::uniform(0, 1), spec, 20, cfg);
    c.check(evaluate(make_sample(std::vector<double>{0.1, 0.5, 0.9}), spec).route == "pwm-unbiased",
            "b_1 is not on the unbiased route");
    double mean = 0.0;
    for (double x : est) mean += x;
    mean /= static_cast<double>(est.size());
    double var = 0.0;
    for (double x : est) var += (x - mean) * (x - mean);
    var /= static_cast<double>(est.size() - 1);
    const double se = std::sqrt(var / static_cast<double>(est.size()));
    const double z = (mean - 1.0 / 3.0) / se;
    c.check(std::abs(z) <= 4.0, "z = " + fmt(z));
    c.note("mean " + fmt(mean) + ", se " + fmt(se) + ", z " + fmt(z));
    return c.report();
}

// 7. Sign of the right-truncated GMD decomposition.
bool criterion_sign() {
    Criterion c(7, "on uniform(0,1) at t=0.5, GMD_R = 2 H_t + r(t) = 1/12 and -2 H_t - r(t) does not match");
    const auto u = ParametricModel::uniform(0, 1);
    const double t = 0.5;
    const double gr = measure_population(u, MeasureSpec::at_t(MeasureId::gmd_right, t));
    const double h = measure_population(u, MeasureSpec::at_t(MeasureId::h_dyn, t));
    const double r = measure_population(u, MeasureSpec::at_t(MeasureId::mean_past, t));
    c.check(std::abs(gr - 1.0 / 12.0) <= 1e-8, "GMD_R = " + fmt(gr));
    c.check(std::abs(2 * h + r - 1.0 / 12.0) <= 1e-8, "2H_t + r(t) = " + fmt(2 * h + r));
    c.check(std::abs(2 * h + r - gr) <= 1e-8, "2H_t + r(t) differs from GMD_R");
    const double literal = -2 * h - r;
    c.check(std::abs(literal + 1.0 / 12.0) <= 1e-8, "-2H_t - r(t) = " + fmt(literal));
    c.check(std::abs(literal - gr) > 1e-8, "-2H_t - r(t) unexpectedly matches GMD_R");
    VerifyConfig cfg;
    cfg.t = t;
    for (const auto& id : registry()) {
        if (id.id != "I6") continue;
        const auto rep = verify(id, u, cfg);
        c.check(rep.status == Status::pass, "registry I6 does not pass: " + rep.message);
    }
    c.note("GMD_R " + fmt(gr) + ", 2H+r " + fmt(2 * h + r) + ", -2H-r " + fmt(literal));
    return c.report();
}

// 8. Command-line contract.
struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run run_cli(const fs::path& dir, const std::string& args) {
    const auto out = dir / "stdout.txt";
    const auto err = dir / "stderr.txt";
    const std::string cmd = std::string("'") + GINIENT_CLI_PATH + "' " + args + " >'" + out.string() + "' 2>'" +
                            err.string() + "'";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::vector<nlohmann::json> json_lines(const std::string& text) {
    std::vector<nlohmann::json> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) rows.push_back(nlohmann::json::parse(line, nullptr, false));
    }
    return rows;
}

bool criterion_cli() {
    Criterion c(8, "command-line examples: records, exit codes and byte-identical reruns");
    const fs::path dir = fs::temp_directory_path() / ("ginient_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const auto data = dir / "d.csv";
    std::ofstream(data) << "1\n2\n3\n";
    const std::string in = "--input '" + data.string() + "'";

    {
        const auto r = run_cli(dir, "compute " + in + " --measure gmd");
        const auto rows = json_lines(r.out);
        c.check(r.code == 0, "compute gmd exit " + std::to_string(r.code));
        c.check(rows.size() == 1 && rows[0].value("measure", "") == "gmd" &&
                    std::abs(rows[0].value("value", 0.0) - 4.0 / 3.0) < 1e-11,
                "compute gmd record: " + r.out);
    }
    {
        const auto r = run_cli(dir, "compute --dist exp --mean 1 --measure crj");
        const auto rows = json_lines(r.out);
        c.check(r.code == 0, "compute crj exit " + std::to_string(r.code));
        c.check(rows.size() == 1 && rows[0].value("measure", "") == "crj" &&
                    std::abs(rows[0].value("value", 0.0) + 0.25) < 1e-11,
                "compute crj record: " + r.out);
    }
    {
        const auto r = run_cli(dir, "compute " + in + " --measure crt --alpha 1");
        c.check(r.code == 3, "crt alpha=1 exit " + std::to_string(r.code));
        c.check(r.err.find("alpha must differ from 1") != std::string::npos, "crt alpha=1 message: " + r.err);
    }
    {
        const auto r = run_cli(dir, "verify --dist uniform --a 0 --b 1");
        const auto rows = json_lines(r.out);
        int passes = 0;
        for (const auto& row : rows) passes += row.value("status", "") == "pass";
        c.check(r.code == 0, "verify uniform exit " + std::to_string(r.code));
        c.check(passes == 14 && !rows.empty() && rows.back().value("summary", "") == "passed 14/14",
                "verify uniform: " + std::to_string(passes) + " passes");
    }
    {
        const auto r = run_cli(dir, "verify " + in + " --level sample");
        const auto rows = json_lines(r.out);
        bool only_sample = !rows.empty();
        for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
            only_sample = only_sample && rows[i].value("level", "") == "sample" && rows[i].value("id", "") != "I13";
        }
        c.check(r.code == 0 || r.code == 1, "verify --level sample exit " + std::to_string(r.code));
        c.check(only_sample && rows.size() == 14, "verify --level sample rows: " + std::to_string(rows.size()));
    }
    {
        const auto r = run_cli(dir, "verify --dist pareto --shape 1.5");
        c.check(r.code == 3, "verify pareto exit " + std::to_string(r.code));
        c.check(r.err.find("pareto shape must exceed 2") != std::string::npos, "verify pareto message: " + r.err);
    }
    {
        const std::string args = "mc --dist exp --mean 1 --measure gmd --sizes 100,1000 --reps 500 --seed 42";
        const auto a = run_cli(dir, args);
        const auto b = run_cli(dir, args);
        const auto rows = json_lines(a.out);
        c.check(a.code == 0, "mc exit " + std::to_string(a.code));
        c.check(rows.size() == 2, "mc rows: " + std::to_string(rows.size()));
        if (rows.size() == 2) {
            c.check(std::abs(rows[1].value("bias", 1.0)) < std::abs(rows[0].value("bias", 0.0)), "mc |bias| not decreasing");
            c.check(rows[1].value("rmse", 1.0) < rows[0].value("rmse", 0.0), "mc rmse not decreasing");
        }
        c.check(!a.out.empty() && a.out == b.out, "mc reruns differ");
    }
    {
        const auto r = run_cli(dir, "mc --dist exp --mean 1 --measure gmd --sizes 1 --reps 10 --seed 42");
        c.check(r.code == 3, "mc n=1 exit " + std::to_string(r.code));
        c.check(r.err.find("need at least 2 observations") != std::string::npos, "mc n=1 message: " + r.err);
    }
    fs::remove_all(dir);
    return c.report();
}

}  // namespace

int main() {
    const std::vector<std::function<bool()>> criteria{criterion_closed_forms, criterion_identity_suite,
                                                      criterion_exact_sample, criterion_brute_force,
                                                      criterion_consistency,  criterion_unbiased,
                                                      criterion_sign,         criterion_cli};
    int failed = 0;
    for (const auto& run : criteria) {
        try {
            if (!run()) ++failed;
        } catch (const std::exception& e) {
            std::cout << "    unexpected exception: " << e.what() << '\n';
            ++failed;
        }
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
    return failed == 0 ? 0 : 1;
}
