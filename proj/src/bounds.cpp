#include "qcspec/bounds.hpp"

#include "qcspec/errors.hpp"
#include "qcspec/util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qcspec {

std::string BetaParam::str() const {
    if (is_infinite) return "inf";
    std::ostringstream os;
    os.precision(17);
    os << value;
    return os.str();
}

namespace {

void check_p_gt2(double p) {
    if (!(p > 2.0)) {
        throw ParameterError("bound requires p > 2");
    }
}

void check_beta(const BetaParam& beta) {
    if (!beta.is_infinite && !(beta.value > 1.0)) {
        throw ParameterError("beta must be > 1 or infinite");
    }
}

} // namespace

Exponents exponents(double p, BetaParam beta) {
    check_p_gt2(p);
    check_beta(beta);
    if (beta.is_infinite) {
        return {p, 2.0 * p / (p + 2.0)};
    }
    const double b = beta.value;
    return {p * b / (b - 1.0), 2.0 * b * p / (b * p + 2.0 * (b - 1.0))};
}

double poincare_constant_upper(double r, double q) {
    const double d = 1.0 / q - 1.0 / r;
    if (!(d >= 0.0) || !(d < 0.5)) {
        throw ParameterError("poincare_constant_upper: need 0 <= 1/q - 1/r < 1/2");
    }
    return std::pow(2.0, -d) * std::pow((1.0 - d) / (1.0 - 2.0 * d), 1.0 - d) *
           std::pow(std::numbers::pi, d);
}

double pi_p(double p) {
    if (!(p > 1.0)) {
        throw ParameterError("pi_p requires p > 1");
    }
    return 2.0 * std::numbers::pi * std::pow(p - 1.0, 1.0 / p) /
           (p * std::sin(std::numbers::pi / p));
}

double convex_lower_bound(double p, double diameter) {
    if (!(diameter > 0.0)) {
        throw ParameterError("convex_lower_bound requires diameter > 0");
    }
    return std::pow(pi_p(p) / diameter, p);
}

double q_bracket(double p, double q, double r) {
    const double num = 1.0 - 1.0 / q + 1.0 / r;
    const double den = 0.5 - 1.0 / q + 1.0 / r;
    if (!(den > 0.0)) {
        throw ParameterError("q_bracket: q must exceed q*");
    }
    const double expo = p - p / q + p / r;
    return std::pow(2.0, p) * std::pow(num / den, expo);
}

QInfimum infimum_over_q(double p, double r, double q_star) {
    check_p_gt2(p);
    // exponent consistency: 1/q* = 1/2 + 1/r
    if (std::abs(1.0 / q_star - 0.5 - 1.0 / r) > 1e-12) {
        throw ParameterError("infimum_over_q: inconsistent exponents");
    }
    const double lo = q_star * (1.0 + 1e-9);
    const double hi = 2.0;
    if (!(lo < hi)) {
        throw ParameterError("infimum_over_q: interval collapsed; use the offset form");
    }
    const int grid = 1024;
    int best = -1;
    double best_val = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid; ++i) {
        const double q = lo + (hi - lo) * i / grid;
        const double v = q_bracket(p, q, r);
        if (v < best_val) { // strict: ties keep the smaller q
            best_val = v;
            best = i;
        }
    }
    const double cell = (hi - lo) / grid;
    const double a = std::max(lo, lo + (best - 1) * cell);
    const double b = std::min(hi, lo + (best + 1) * cell);
    const double q_opt =
        golden_min([&](double q) { return q_bracket(p, q, r); }, a, b, 1e-15, 300);
    double v_opt = q_bracket(p, q_opt, r);
    QInfimum out{q_opt, v_opt};
    // endpoint q = 2 is admissible; never report worse than it
    const double v2 = q_bracket(p, 2.0, r);
    if (v2 < v_opt || (v2 == v_opt && q_opt > 2.0)) {
        out = {2.0, v2};
    }
    return out;
}

BracketMinLog min_ratio_power_log(double p, double inv_r) {
    check_p_gt2(p);
    if (!(inv_r > 0.0)) {
        throw ParameterError("min_ratio_power_log requires 1/r > 0");
    }
    // ln ratio^(p - p/q + p/r) with w = 1/2 - 1/q + 1/r in (0, inv_r]:
    //   ratio = 1 + 1/(2w), exponent = p (1/2 + w).
    const auto f = [&](double w) {
        return p * (0.5 + w) * std::log1p(0.5 / w);
    };
    // 64-point grid, log-spaced in w, plus golden refinement.
    const double w_lo = inv_r * 1e-8;
    const double t_lo = std::log(w_lo);
    const double t_hi = std::log(inv_r);
    const int grid = 64;
    int best = -1;
    double best_val = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid; ++i) {
        const double w = std::exp(t_lo + (t_hi - t_lo) * i / grid);
        const double v = f(w);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    const double cell = (t_hi - t_lo) / grid;
    const double ta = std::max(t_lo, t_lo + (best - 1) * cell);
    const double tb = std::min(t_hi, t_lo + (best + 1) * cell);
    const double t_opt = golden_min(
        [&](double t) { return f(std::exp(t)); }, ta, tb, 1e-14, 300);
    double w_opt = std::exp(t_opt);
    double v_opt = f(w_opt);
    if (f(inv_r) <= v_opt) { // endpoint w = 1/r (q = 2) is admissible
        w_opt = inv_r;
        v_opt = f(inv_r);
    }
    BracketMinLog out;
    out.ln_value = v_opt;
    out.w_opt = w_opt;
    // 1/q = 1/2 + (inv_r - w); resolvable even when 2 - q underflows
    out.q_opt = 1.0 / (0.5 + (inv_r - w_opt));
    return out;
}

const char* bound_variant_name(BoundVariant v) {
    switch (v) {
        case BoundVariant::BetaRegular: return "beta-regular";
        case BoundVariant::InfRegular: return "inf-regular";
        case BoundVariant::MeasurePreservingBeta: return "measure-preserving-beta";
        case BoundVariant::MeasurePreservingInf: return "measure-preserving-inf";
        case BoundVariant::IntroForm: return "intro-form";
    }
    return "unknown";
}

namespace {

BoundReport assemble(double p, BetaParam beta, double K, double area,
                     double jnorm, BoundVariant variant) {
    if (!(K >= 1.0)) {
        throw ParameterError("bound requires K >= 1");
    }
    if (!(area > 0.0) || !(jnorm > 0.0)) {
        throw ParameterError("bound requires positive area and Jacobian norm");
    }
    const Exponents e = exponents(p, beta);
    const QInfimum inf = infimum_over_q(p, e.r, e.q_star);
    BoundReport rep;
    rep.p = p;
    rep.beta = beta;
    rep.K = K;
    rep.r = e.r;
    rep.q_star = e.q_star;
    rep.q_opt = inf.q_opt;
    rep.ingredients = {area, jnorm, inf.value};
    rep.variant = variant;
    rep.rhs = inf.value * std::pow(std::numbers::pi, p / e.r - p / 2.0) *
              std::pow(K, p / 2.0) * std::pow(area, (p - 2.0) / 2.0) * jnorm;
    rep.mu_lower = 1.0 / rep.rhs;
    return rep;
}

} // namespace

BoundReport bound_beta_regular(double p, double beta, double K, double area,
                               double jnorm) {
    return assemble(p, BetaParam::finite(beta), K, area, jnorm,
                    BoundVariant::BetaRegular);
}

BoundReport bound_inf_regular(double p, double K, double area, double jsup) {
    return assemble(p, BetaParam::infinite(), K, area, jsup,
                    BoundVariant::InfRegular);
}

BoundReport bound_measure_preserving(double p, BetaParam beta, double K) {
    if (!(K >= 1.0)) {
        throw ParameterError("bound requires K >= 1");
    }
    const Exponents e = exponents(p, beta);
    const QInfimum inf = infimum_over_q(p, e.r, e.q_star);
    BoundReport rep;
    rep.p = p;
    rep.beta = beta;
    rep.K = K;
    rep.r = e.r;
    rep.q_star = e.q_star;
    rep.q_opt = inf.q_opt;
    const double jnorm = beta.is_infinite
                             ? 1.0
                             : std::pow(std::numbers::pi, 1.0 / beta.value);
    rep.ingredients = {std::numbers::pi, jnorm, inf.value};
    rep.variant = beta.is_infinite ? BoundVariant::MeasurePreservingInf
                                   : BoundVariant::MeasurePreservingBeta;
    rep.rhs = inf.value * std::pow(K, p / 2.0);
    rep.mu_lower = 1.0 / rep.rhs;
    return rep;
}

BoundReport bound_intro_form(double p, BetaParam beta, double K) {
    if (!(K >= 1.0)) {
        throw ParameterError("bound requires K >= 1");
    }
    const Exponents e = exponents(p, beta);
    // objective: B_{r,q}(D)^p pi^{p/q} over q in (q*, 2]
    const auto objective = [&](double q) {
        return std::pow(poincare_constant_upper(e.r, q), p) *
               std::pow(std::numbers::pi, p / q);
    };
    const double lo = e.q_star * (1.0 + 1e-9);
    const int grid = 1024;
    int best = -1;
    double best_val = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid; ++i) {
        const double q = lo + (2.0 - lo) * i / grid;
        const double v = objective(q);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    const double cell = (2.0 - lo) / grid;
    const double q_opt = golden_min(objective, std::max(lo, lo + (best - 1) * cell),
                                    std::min(2.0, lo + (best + 1) * cell), 1e-15, 300);
    double inf_val = objective(q_opt);
    double q_best = q_opt;
    if (objective(2.0) <= inf_val) {
        inf_val = objective(2.0);
        q_best = 2.0;
    }

    const double inv_beta = beta.is_infinite ? 0.0 : 1.0 / beta.value;
    BoundReport rep;
    rep.p = p;
    rep.beta = beta;
    rep.K = K;
    rep.r = e.r;
    rep.q_star = e.q_star;
    rep.q_opt = q_best;
    const double jnorm =
        beta.is_infinite ? 1.0 : std::pow(std::numbers::pi, inv_beta);
    rep.ingredients = {std::numbers::pi, jnorm, inf_val};
    rep.variant = BoundVariant::IntroForm;
    rep.rhs = inf_val * std::pow(K, p / 2.0) *
              std::pow(std::numbers::pi, inv_beta - 1.0);
    rep.mu_lower = 1.0 / rep.rhs;
    rep.default_form_rhs = bound_measure_preserving(p, beta, K).rhs;
    return rep;
}

} // namespace qcspec
