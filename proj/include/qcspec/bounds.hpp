#pragma once

#include <optional>
#include <string>

namespace qcspec {

/// Jacobian integrability exponent: either a finite value > 1 or infinity.
/// Infinity is a distinct state, not a large float.
struct BetaParam {
    static BetaParam finite(double value) { return BetaParam{false, value}; }
    static BetaParam infinite() { return BetaParam{true, 0.0}; }

    bool is_infinite = false;
    double value = 0.0;

    std::string str() const;
};

struct Exponents {
    double r = 0.0;
    double q_star = 0.0; // lower endpoint of the admissible q interval
};

/// r = p*beta/(beta-1) and q* = 2*beta*p/(beta*p + 2(beta-1));
/// for beta = inf these reduce to r = p, q* = 2p/(p+2).
/// The identity 1/q* = 1/2 + 1/r always holds.
Exponents exponents(double p, BetaParam beta);

/// Upper estimate of the best constant in the (r,q) Poincare-Sobolev
/// inequality on the unit disc: 2^{-d} ((1-d)/(1-2d))^{1-d} pi^d with
/// d = 1/q - 1/r, valid for 0 <= d < 1/2.
double poincare_constant_upper(double r, double q);

/// 2 pi (p-1)^{1/p} / (p sin(pi/p)), p > 1.
double pi_p(double p);

/// (pi_p / diameter)^p — eigenvalue lower bound for convex domains.
/// Convexity is the caller's responsibility.
double convex_lower_bound(double p, double diameter);

/// 2^p ((1 - 1/q + 1/r) / (1/2 - 1/q + 1/r))^(p - p/q + p/r),
/// defined for q in (q*, 2]; diverges as q -> q*+.
double q_bracket(double p, double q, double r);

struct QInfimum {
    double q_opt = 0.0;
    double value = 0.0;
};

/// Minimum of q_bracket over (q*, 2]: 1024-point grid on
/// [q*(1+1e-9), 2] plus golden-section refinement around the best cell.
/// No unimodality assumed; ties break toward the smallest q.
QInfimum infimum_over_q(double p, double r, double q_star);

/// Offset-variable form of the bracket minimization for extreme exponents:
/// the admissible interval is parametrized by w = 1/2 - 1/q + 1/r in
/// (0, inv_r], inv_r = 1/r, so q near both endpoints stays resolvable when
/// 2 - q* underflows. Returns ln of inf over q of
/// (ratio)^(p - p/q + p/r)  (the bracket without its 2^p factor).
struct BracketMinLog {
    double ln_value = 0.0;
    double w_opt = 0.0; // maximizer offset; w = inv_r corresponds to q = 2
    double q_opt = 0.0;
};

BracketMinLog min_ratio_power_log(double p, double inv_r);

enum class BoundVariant {
    BetaRegular,
    InfRegular,
    MeasurePreservingBeta,
    MeasurePreservingInf,
    IntroForm,
};

const char* bound_variant_name(BoundVariant v);

struct BoundIngredients {
    double area = 0.0;
    double jnorm = 0.0;   // L_beta norm of the Jacobian (or sup for beta=inf)
    double bracket = 0.0; // minimized q-term
};

/// Assembled upper bound on 1/mu_p plus the implied lower bound on mu_p.
struct BoundReport {
    double p = 0.0;
    BetaParam beta;
    double K = 1.0;
    double r = 0.0;
    double q_star = 0.0;
    double q_opt = 0.0;
    double rhs = 0.0;      // upper bound on 1/mu_p
    double mu_lower = 0.0; // 1/rhs
    BoundIngredients ingredients;
    BoundVariant variant = BoundVariant::BetaRegular;
    // For the intro-form variant: the corresponding default-form rhs, kept
    // so the constant-factor discrepancy between the two is reportable.
    std::optional<double> default_form_rhs;
};

/// General beta-regular bound:
/// rhs = inf_q bracket * pi^{p/r - p/2} * K^{p/2} * area^{(p-2)/2} * jnorm.
BoundReport bound_beta_regular(double p, double beta, double K, double area,
                               double jnorm);

/// beta = inf specialization (r = p), jsup the essential sup of |J|.
BoundReport bound_inf_regular(double p, double K, double area, double jsup);

/// Measure-preserving form: rhs = inf_q bracket * K^{p/2}; the area and
/// Jacobian-norm factors cancel exactly for |J| = 1.
BoundReport bound_measure_preserving(double p, BetaParam beta, double K);

/// Alternative headline form inf_q { B_{r,q}^p pi^{p/q} } * K^{p/2} *
/// pi^{1/beta - 1} for measure-preserving maps. Differs from the default
/// form by constant factors; both are valid upper bounds and the report
/// carries both values.
BoundReport bound_intro_form(double p, BetaParam beta, double K);

} // namespace qcspec
