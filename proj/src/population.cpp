#include "ginient/population.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "ginient/error.hpp"
#include "ginient/pwm.hpp"

namespace ginient {

namespace {

// Quantile at u given both u and its complement c = 1 - u.
using Quantile = std::function<double(double u, double c)>;
using CdfPair = std::function<double(double F, double Fbar)>;

// q^e1 - q^e2 with comp = 1 - q; stays accurate when q is close to 1.
double pow_diff(double q, double comp, double e1, double e2) {
    if (q <= 0.0) return (e1 == 0.0 ? 1.0 : 0.0) - (e2 == 0.0 ? 1.0 : 0.0);
    const double head = e1 == 1.0 ? q : std::pow(q, e1);
    const double d = e2 - e1;
    const double rest = comp < 0.5 ? -std::expm1(d * std::log1p(-comp)) : 1.0 - std::pow(q, d);
    return head * rest;
}

// -log(u) with c = 1 - u.
double neg_log(double u, double c) { return u < 0.5 ? -std::log(u) : -std::log1p(-c); }

double xpow(double x, double w) {
    if (w == 0.0) return 1.0;
    if (w == 1.0) return x;
    return std::pow(x, w);
}

// Integral over [lo, hi] of x^w g(F(x), Fbar(x)).  Below the support F = 0
// and the piece is done in closed form; above it g(1, 0) is taken as zero.
double x_integral(const ParametricModel& m, const Integrator& quad, double w, const CdfPair& g, double lo,
                  double hi) {
    double total = 0.0;
    const double lower = m.support_lower();
    if (lo < lower) {
        const double top = std::min(lower, hi);
        const double g0 = g(0.0, 1.0);
        if (g0 != 0.0) total += g0 * (std::pow(top, w + 1.0) - std::pow(lo, w + 1.0)) / (w + 1.0);
        lo = top;
    }
    hi = std::min(hi, m.support_upper());
    if (hi > lo) {
        total += quad.line([&](double x) { return xpow(x, w) * g(m.cdf(x), m.sf(x)); }, lo, hi);
    }
    return total;
}

double x_full(const ParametricModel& m, const Integrator& quad, double w, const CdfPair& g) {
    return x_integral(m, quad, w, g, 0.0, m.support_upper());
}

double upper_mass(const ParametricModel& m, double t) {
    const double c = m.sf(t);
    if (!(c > 0.0)) fail(ErrorCode::empty_tail, "no probability mass above t");
    return c;
}

double lower_mass(const ParametricModel& m, double t) {
    const double d = m.cdf(t);
    if (!(d > 0.0)) fail(ErrorCode::empty_tail, "no probability mass at or below t");
    return d;
}

// Integral over w in (0, 1) of h(w) Q(1 - c w): the law of X given X > t,
// with c = Fbar(t), d = F(t), indexed by its survival probability.
double upper_conditional(const ParametricModel& m, const Integrator& quad, double t,
                         const std::function<double(double, double)>& h) {
    const double c = upper_mass(m, t);
    const double d = m.cdf(t);
    return quad.unit([&](double w, double wc) { return h(w, m.quantile(d + c * wc, c * w)); });
}

// Integral over w in (0, 1) of h(w) Q(d w): the law of X given X <= t.
double lower_conditional(const ParametricModel& m, const Integrator& quad, double t,
                         const std::function<double(double, double)>& h) {
    const double d = lower_mass(m, t);
    const double c = m.sf(t);
    return quad.unit([&](double w, double wc) { return h(w, m.quantile(d * w, c + d * wc)); });
}

class Pwm {
public:
    Pwm(const ParametricModel& m, const Integrator& quad) : m_(m), quad_(quad) {}
    double operator()(int p, double r, double s) const { return pwm_population(m_, PwmIndex{p, r, s}, quad_); }

private:
    const ParametricModel& m_;
    const Integrator& quad_;
};

// Integral over (0, u) of w(p) / (1 - p); c = 1 - u.
double residual_kernel(const Weight& w, double u, double c, const Integrator& quad) {
    const double nl = neg_log(c, u);
    const double j = w.value;
    switch (w.kind) {
        case Weight::Kind::constant:
            return j * nl;
        case Weight::Kind::sf_power:
            return j == 0.0 ? nl : -std::expm1(-j * nl) / j;
        case Weight::Kind::cdf_power: {
            if (j == 0.0) return nl;
            if (j == std::floor(j) && j <= 64.0) {
                // 1/(1-p) - p^j/(1-p) = sum_{i<j} p^i
                double sum = 0.0;
                double term = 1.0;
                for (int i = 1; i <= static_cast<int>(j); ++i) {
                    term *= u;
                    sum += term / i;
                }
                return nl - sum;
            }
            // u * integral over s of (1 - (u s)^j) / (1 - u s)
            const auto r = quad.inner([&](double s, double sc) {
                const double us = u * s;
                const double one_minus = c + u * sc;
                const double num = -std::expm1(-j * neg_log(us, one_minus));
                return num / one_minus;
            });
            return nl - u * r.value;
        }
    }
    return 0.0;
}

Weight mirrored(const Weight& w) {
    switch (w.kind) {
        case Weight::Kind::cdf_power: return Weight::sf_power(w.value);
        case Weight::Kind::sf_power: return Weight::cdf_power(w.value);
        default: return w;
    }
}

// Integral over (u, 1) of w(p) / p.
double past_kernel(const Weight& w, double u, double c, const Integrator& quad) {
    return residual_kernel(mirrored(w), c, u, quad);
}

void require_phi_moment(const ParametricModel& m, const Phi& phi) {
    if (!(phi.power < m.tail_index())) {
        fail(ErrorCode::unsupported_spec, "E(phi(X)) is infinite for " + m.describe());
    }
}

// The cdf of Z in terms of the cdf of X.
using Transform = std::function<std::pair<double, double>(double F, double Fbar)>;

std::pair<double, double> identity_transform(double F, double Fbar) { return {F, Fbar}; }
std::pair<double, double> series_transform(double F, double Fbar) { return {F * (1.0 + Fbar), Fbar * Fbar}; }
std::pair<double, double> parallel_transform(double F, double Fbar) { return {F * F, Fbar * (1.0 + F)}; }

// GE = integral of phi'(x) Fbar(x) W(F(x)) dx, W the residual kernel.
double ge_cumulative(const ParametricModel& m, const Integrator& quad, const Weight& w, const Phi& phi,
                     const Transform& z) {
    const double dphi = phi.coef * phi.power;
    return dphi * x_full(m, quad, phi.power - 1.0, [&](double F, double Fbar) {
               const auto [Fz, Fbz] = z(F, Fbar);
               if (Fz <= 0.0 || Fbz <= 0.0) return 0.0;
               return Fbz * residual_kernel(w, Fz, Fbz, quad);
           });
}

double gce_cumulative(const ParametricModel& m, const Integrator& quad, const Weight& w, const Phi& phi,
                      const Transform& z) {
    const double dphi = phi.coef * phi.power;
    return dphi * x_full(m, quad, phi.power - 1.0, [&](double F, double Fbar) {
               const auto [Fz, Fbz] = z(F, Fbar);
               if (Fz <= 0.0 || Fbz <= 0.0) return 0.0;
               return Fz * past_kernel(w, Fz, Fbz, quad);
           });
}

// GE = integral over p of w(p) [E(phi(X) | X > Q(p)) - phi(Q(p))].
double ge_nested(const Integrator& quad, const Quantile& q, const Weight& w, const Phi& phi) {
    return quad.unit([&](double p, double cp) {
        const auto tail = quad.inner([&](double s, double sc) { return phi(q(p + cp * sc, cp * s)); });
        return w.at(p, cp) * (tail.value - phi(q(p, cp)));
    });
}

// GCE = integral over p of w(p) [phi(Q(p)) - E(phi(X) | X <= Q(p))].
double gce_nested(const Integrator& quad, const Quantile& q, const Weight& w, const Phi& phi) {
    return quad.unit([&](double p, double cp) {
        const auto head = quad.inner([&](double s, double sc) { return phi(q(p * s, cp + p * sc)); });
        return w.at(p, cp) * (phi(q(p, cp)) - head.value);
    });
}

Route resolve(MeasureId id, Route route) {
    if (route != Route::primary) return route;
    return uses_truncation(id) ? Route::definition : Route::representation;
}

double tsallis(const ParametricModel& m, const Integrator& quad, const MeasureSpec& spec, bool def) {
    const double a = *spec.alpha;
    const bool residual = spec.id == MeasureId::crt || spec.id == MeasureId::wcrt;
    const int p = (spec.id == MeasureId::wcrt || spec.id == MeasureId::wct) ? 2 : 1;
    const PwmIndex tail = residual ? PwmIndex{p, 0, a - 1.0} : PwmIndex{p, a - 1.0, 0};
    require_finite_pwm(m, tail);
    if (def) {
        return x_full(m, quad, p - 1.0,
                      [&](double F, double Fb) { return residual ? pow_diff(Fb, F, 1.0, a) : pow_diff(F, Fb, 1.0, a); }) /
               (a - 1.0);
    }
    const Pwm M(m, quad);
    const double base = M(p, 0, 0);
    const double moment = M(p, tail.r, tail.s);
    const double value = residual ? base - a * moment : a * moment - base;
    return value / (p * (a - 1.0));
}

double stm(const ParametricModel& m, const Integrator& quad, const MeasureSpec& spec, bool def) {
    const double a = *spec.alpha;
    const double b = *spec.beta;
    const bool residual = spec.id == MeasureId::sr || spec.id == MeasureId::srw;
    const int p = (spec.id == MeasureId::srw || spec.id == MeasureId::spw) ? 2 : 1;
    auto index = [&](double order) { return residual ? PwmIndex{p, 0, order - 1.0} : PwmIndex{p, order - 1.0, 0}; };
    require_finite_pwm(m, index(a));
    require_finite_pwm(m, index(b));
    if (def) {
        return x_full(m, quad, p - 1.0,
                      [&](double F, double Fb) { return residual ? pow_diff(Fb, F, a, b) : pow_diff(F, Fb, a, b); }) /
               (b - a);
    }
    const Pwm M(m, quad);
    const auto ia = index(a);
    const auto ib = index(b);
    const double ma = M(p, ia.r, ia.s);
    const double mb = M(p, ib.r, ib.s);
    const double value = residual ? a * ma - b * mb : b * mb - a * ma;
    return value / (p * (b - a));
}

}  // namespace

Estimate evaluate_population(const ParametricModel& m, const MeasureSpec& spec, const Integrator& quad, Route route) {
    spec.validate();
    const bool def = resolve(spec.id, route) == Route::definition;
    const Pwm M(m, quad);
    const Quantile quantile = [&m](double u, double c) { return m.quantile(u, c); };
    const double inf = std::numeric_limits<double>::infinity();
    const char* x_label = "x-domain";
    const char* pwm_label = "u-pwm";

    switch (spec.id) {
        case MeasureId::gmd:
            if (def) return {2.0 * x_full(m, quad, 0, [](double F, double Fb) { return F * Fb; }), x_label};
            return {2.0 * (M(1, 1, 0) - M(1, 0, 1)), pwm_label};

        case MeasureId::gmd_left: {
            const double t = *spec.t;
            if (def) {
                const double c = upper_mass(m, t);
                const double d = m.cdf(t);
                const double v = x_integral(
                    m, quad, 0,
                    [&](double F, double Fb) { return (Fb / c) * ((c < 0.5 ? c - Fb : F - d) / c); }, t, inf);
                return {v, x_label};
            }
            return {upper_conditional(m, quad, t, [](double w, double x) { return (1.0 - 2.0 * w) * x; }),
                    "u-conditional"};
        }
        case MeasureId::gmd_right: {
            const double t = *spec.t;
            if (def) {
                const double d = lower_mass(m, t);
                const double c = m.sf(t);
                const double v = x_integral(
                    m, quad, 0,
                    [&](double F, double Fb) { return (F / d) * ((d < 0.5 ? d - F : Fb - c) / d); }, 0.0, t);
                return {v, x_label};
            }
            return {lower_conditional(m, quad, t, [](double w, double x) { return (2.0 * w - 1.0) * x; }),
                    "u-conditional"};
        }
        case MeasureId::j_dyn: {
            const double t = *spec.t;
            if (def) {
                const double c = upper_mass(m, t);
                const double v = x_integral(m, quad, 0, [&](double, double Fb) { return (Fb / c) * (Fb / c); }, t, inf);
                return {-0.5 * v, x_label};
            }
            const double e_min = upper_conditional(m, quad, t, [](double w, double x) { return 2.0 * w * x; });
            return {-0.5 * (e_min - t), "u-conditional"};
        }
        case MeasureId::h_dyn: {
            const double t = *spec.t;
            if (def) {
                const double d = lower_mass(m, t);
                const double v = x_integral(m, quad, 0, [&](double F, double) { return (F / d) * (F / d); }, 0.0, t);
                return {-0.5 * v, x_label};
            }
            const double e_max = lower_conditional(m, quad, t, [](double w, double x) { return 2.0 * w * x; });
            return {-0.5 * (t - e_max), "u-conditional"};
        }
        case MeasureId::mean_residual: {
            const double t = *spec.t;
            if (def) {
                const double c = upper_mass(m, t);
                return {x_integral(m, quad, 0, [&](double, double Fb) { return Fb / c; }, t, inf), x_label};
            }
            return {upper_conditional(m, quad, t, [](double, double x) { return x; }) - t, "u-conditional"};
        }
        case MeasureId::mean_past: {
            const double t = *spec.t;
            if (def) {
                const double d = lower_mass(m, t);
                return {x_integral(m, quad, 0, [&](double F, double) { return F / d; }, 0.0, t), x_label};
            }
            return {t - lower_conditional(m, quad, t, [](double, double x) { return x; }), "u-conditional"};
        }

        case MeasureId::s_gini: {
            const double v = *spec.v;
            require_finite_pwm(m, {1, 0, v - 1.0});
            if (def) return {x_full(m, quad, 0, [&](double F, double Fb) { return pow_diff(Fb, F, 1.0, v); }) / v, x_label};
            return {M(1, 0, 0) / v - M(1, 0, v - 1.0), pwm_label};
        }
        case MeasureId::crj:
        case MeasureId::ce:
            if (def) return {-0.5 * x_full(m, quad, 0, [](double, double Fb) { return Fb * Fb; }), x_label};
            return {-M(1, 0, 1), pwm_label};
        case MeasureId::cj:
            if (def) return {-0.5 * x_full(m, quad, 0, [](double F, double Fb) { return Fb * (1.0 + F); }), x_label};
            return {-M(1, 1, 0), pwm_label};
        case MeasureId::crjw:
            if (def) return {-0.5 * x_full(m, quad, 1, [](double F, double Fb) { return Fb * (1.0 + F); }), x_label};
            return {-0.5 * M(2, 1, 0), pwm_label};
        case MeasureId::wce:
            if (def) return {-0.5 * x_full(m, quad, 1, [](double, double Fb) { return Fb * Fb; }), x_label};
            return {-0.5 * M(2, 0, 1), pwm_label};

        case MeasureId::crt:
        case MeasureId::wcrt:
        case MeasureId::ct:
        case MeasureId::wct:
            return {tsallis(m, quad, spec, def), def ? x_label : pwm_label};
        case MeasureId::sr:
        case MeasureId::sp:
        case MeasureId::srw:
        case MeasureId::spw:
            return {stm(m, quad, spec, def), def ? x_label : pwm_label};

        case MeasureId::risk_premium: {
            const int k = *spec.k;
            if (def) return {x_full(m, quad, 0, [&](double F, double Fb) { return pow_diff(Fb, F, 1.0, k); }), x_label};
            return {M(1, 0, 0) - k * M(1, 0, k - 1.0), pwm_label};
        }
        case MeasureId::gain_premium: {
            const int k = *spec.k;
            if (def) return {x_full(m, quad, 0, [&](double F, double Fb) { return pow_diff(F, Fb, 1.0, k); }), x_label};
            return {k * M(1, k - 1.0, 0) - M(1, 0, 0), pwm_label};
        }

        case MeasureId::pwm: {
            const auto idx = *spec.index;
            return {M(idx.p, idx.r, idx.s), pwm_label};
        }
        case MeasureId::cov_cdf_power:
        case MeasureId::cov_sf_power: {
            const bool sf = spec.id == MeasureId::cov_sf_power;
            const double j = *spec.j;
            if (def) {
                const double mu = m.mean();
                const double v = quad.unit([&](double u, double c) {
                    return (m.quantile(u, c) - mu) * (std::pow(sf ? c : u, j) - 1.0 / (j + 1.0));
                });
                return {v, "u-covariance"};
            }
            const double moment = sf ? M(1, 0, j) : M(1, j, 0);
            return {moment - M(1, 0, 0) / (j + 1.0), pwm_label};
        }

        case MeasureId::ge:
            require_phi_moment(m, spec.phi);
            if (def) return {ge_nested(quad, quantile, spec.weight, spec.phi), "u-nested"};
            return {ge_cumulative(m, quad, spec.weight, spec.phi, identity_transform), "x-cumulative"};
        case MeasureId::gce:
            require_phi_moment(m, spec.phi);
            if (def) return {gce_nested(quad, quantile, spec.weight, spec.phi), "u-nested"};
            return {gce_cumulative(m, quad, spec.weight, spec.phi, identity_transform), "x-cumulative"};

        case MeasureId::ge_series: {
            const Weight w = Weight::constant(-0.5);
            if (def) {
                // F_Z = 1 - Fbar^2, so Q_Z(u) = Q(u / (1 + sqrt(1 - u))).
                const Quantile qz = [&m](double u, double c) {
                    const double rc = std::sqrt(c);
                    return m.quantile(u / (1.0 + rc), rc);
                };
                return {ge_nested(quad, qz, w, Phi{}), "u-nested"};
            }
            return {ge_cumulative(m, quad, w, Phi{}, series_transform), "x-cumulative"};
        }
        case MeasureId::gce_parallel: {
            const Weight w = Weight::constant(0.5);
            if (def) {
                // F_Z = F^2, so Q_Z(u) = Q(sqrt(u)).
                const Quantile qz = [&m](double u, double c) {
                    const double ru = std::sqrt(u);
                    return m.quantile(ru, c / (1.0 + ru));
                };
                return {gce_nested(quad, qz, w, Phi{}), "u-nested"};
            }
            return {gce_cumulative(m, quad, w, Phi{}, parallel_transform), "x-cumulative"};
        }
        case MeasureId::left_excess_average: {
            // integral over p = F(u) of (GMD_L(u) - m(u)) (1 - p)
            const double v = quad.unit([&](double p, double cp) {
                const double t = m.quantile(p, cp);
                const auto diff = quad.inner([&](double w, double wc) {
                    const double x = m.quantile(p + cp * wc, cp * w);
                    return (1.0 - 2.0 * w) * x - (x - t);
                });
                return diff.value * cp;
            });
            return {v, "u-nested"};
        }
        case MeasureId::right_excess_average: {
            // integral over p = F(u) of (r(u) - GMD_R(u)) p
            const double v = quad.unit([&](double p, double cp) {
                const double t = m.quantile(p, cp);
                const auto diff = quad.inner([&](double w, double wc) {
                    const double x = m.quantile(p * w, cp + p * wc);
                    return (t - x) - (2.0 * w - 1.0) * x;
                });
                return diff.value * p;
            });
            return {v, "u-nested"};
        }
    }
    fail(ErrorCode::unsupported_spec, "no population route for " + spec.describe());
}

double measure_population(const ParametricModel& model, const MeasureSpec& spec, const QuadratureConfig& cfg) {
    return evaluate_population(model, spec, Integrator(cfg)).value;
}

}  // namespace ginient
