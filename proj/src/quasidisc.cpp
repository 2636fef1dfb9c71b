#include "qcspec/quasidisc.hpp"

#include "qcspec/bounds.hpp"
#include "qcspec/errors.hpp"
#include "qcspec/util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qcspec {

namespace {

constexpr double kLn10 = 2.302585092994046;
// pi^2 (2 + pi^2)^2 / (2 ln 3), the argument of the exponential factor.
const double kExpArg = std::numbers::pi * std::numbers::pi *
                       (2.0 + std::numbers::pi * std::numbers::pi) *
                       (2.0 + std::numbers::pi * std::numbers::pi) /
                       (2.0 * std::log(3.0));

// Floor of the log-uniform eps grid; probes the beta -> 1+ boundary.
constexpr double kEpsFloor = 1e-300;

} // namespace

double distortion_growth_factor(double K, bool reflected) {
    if (!(K >= 1.0)) {
        throw ParameterError("distortion factor requires K >= 1");
    }
    const double pi2 = std::numbers::pi * std::numbers::pi;
    return reflected ? 24.0 * pi2 * K * K : 24.0 * pi2 * K;
}

double nu_log_offset(double eps, double factor) {
    if (!(eps > 0.0)) {
        throw ParameterError("nu requires kappa > 1");
    }
    const double kappa = 1.0 + eps;
    // ln(2 kappa - 2) = ln 2 + ln eps, evaluated in the offset; ln(2k - 1)
    // = log1p(2 eps).
    return 8.0 * kappa * kLn10 + std::log(2.0) + std::log(eps) -
           std::log1p(2.0 * eps) + 2.0 * kappa * std::log(factor);
}

double nu_log(double kappa, double factor) {
    return nu_log_offset(kappa - 1.0, factor);
}

double c_kappa_log_offset(double eps, double factor) {
    const double ln_nu = nu_log_offset(eps, factor);
    if (!(ln_nu < 0.0)) {
        throw DomainError("kappa beyond beta~: nu >= 1");
    }
    const double kappa = 1.0 + eps;
    const double ln_one_minus_nu = log1m_exp(ln_nu);
    return 6.0 * kLn10 -
           (std::log1p(2.0 * eps) + ln_one_minus_nu) / (2.0 * kappa);
}

double c_kappa_log(double kappa, double factor) {
    return c_kappa_log_offset(kappa - 1.0, factor);
}

double beta_tilde_offset(double K) {
    const double factor = distortion_growth_factor(K, true);
    // ln nu is monotone increasing in ln eps; bracket generously.
    double lo = std::log(kEpsFloor);
    double hi = 2.0;
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = nu_log_offset(std::exp(mid), factor);
        if (std::abs(v) < 1e-12) {
            return std::exp(mid);
        }
        if (v < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::exp(0.5 * (lo + hi));
}

double beta_star_offset(double K) {
    if (!(K >= 1.0)) {
        throw ParameterError("beta_star requires K >= 1");
    }
    const double eps_tilde = beta_tilde_offset(K);
    if (K == 1.0) {
        return eps_tilde; // K/(K-1) counts as +inf
    }
    return std::min(1.0 / (K - 1.0), eps_tilde);
}

LogValue reverse_holder_rhs_offset(double eps, double K, double area,
                                   bool reflected) {
    if (!(area > 0.0)) {
        throw ParameterError("reverse_holder_rhs requires area > 0");
    }
    const double factor = distortion_growth_factor(K, reflected);
    const double ln_c = c_kappa_log_offset(eps, factor); // throws if nu >= 1
    const double m = reflected ? 2.0 : 1.0;
    // 1/kappa - 1 = -eps/(1+eps), cancellation-free in the offset
    const double ln = 2.0 * ln_c + m * std::log(K) -
                      eps / (1.0 + eps) * std::log(std::numbers::pi) -
                      std::log(4.0) + std::pow(K, m) * kExpArg + std::log(area);
    return LogValue::from_ln(ln);
}

LogValue reverse_holder_rhs(double kappa, double K, double area,
                            bool reflected) {
    return reverse_holder_rhs_offset(kappa - 1.0, K, area, reflected);
}

namespace {

// Inner objective of the M_p optimization at a given beta offset:
//   ln( ratio^(p - p/q + p/r) ) minimized over q, plus 2 ln C_beta.
// The whole quantity enters M_p reciprocally, so smaller is better here.
double inner_objective(double eps, double p, double factor) {
    const double inv_r = eps / (p * (1.0 + eps)); // 1/r, r = p(1+eps)/eps
    const BracketMinLog bm = min_ratio_power_log(p, inv_r);
    return bm.ln_value + 2.0 * c_kappa_log_offset(eps, factor);
}

} // namespace

QuasidiscConstants mp_constant(double K, double p) {
    if (!(K >= 1.0)) {
        throw ParameterError("mp_constant requires K >= 1");
    }
    if (!(p > 2.0)) {
        throw ParameterError("mp_constant requires p > 2");
    }
    const double factor = distortion_growth_factor(K, true);

    QuasidiscConstants qc;
    qc.K = K;
    qc.p = p;
    qc.beta_tilde_offset = beta_tilde_offset(K);
    qc.beta_star_offset = beta_star_offset(K);

    // ln nu(eps_hi) ~ -1e-9 < 0, so C_beta stays finite on the whole grid.
    const double eps_hi = qc.beta_star_offset * (1.0 - 1e-9);
    const double t_lo = std::log(kEpsFloor);
    const double t_hi = std::log(eps_hi);

    const int grid = 64;
    int best = -1;
    double best_val = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid; ++i) {
        const double eps = std::exp(t_lo + (t_hi - t_lo) * i / grid);
        const double v = inner_objective(eps, p, factor);
        if (v < best_val) { // ties keep the smaller eps
            best_val = v;
            best = i;
        }
    }
    const double cell = (t_hi - t_lo) / grid;
    const double ta = std::max(t_lo, t_lo + (best - 1) * cell);
    const double tb = std::min(t_hi, t_lo + (best + 1) * cell);
    const double t_opt = golden_min(
        [&](double t) { return inner_objective(std::exp(t), p, factor); }, ta,
        tb, 1e-13, 300);
    double eps_opt = std::exp(t_opt);
    double h_min = inner_objective(eps_opt, p, factor);
    if (best == 0) {
        // grid floor won; flag a boundary-attained infimum
        const double h0 = inner_objective(kEpsFloor, p, factor);
        if (h0 < h_min) {
            eps_opt = kEpsFloor;
            h_min = h0;
        }
        qc.beta_boundary_attained = (eps_opt <= kEpsFloor * (1.0 + 1e-9));
    }

    qc.best_beta_offset = eps_opt;
    const double inv_r = eps_opt / (p * (1.0 + eps_opt));
    qc.best_q = min_ratio_power_log(p, inv_r).q_opt;

    const double ln_mp = (p / 2.0) * std::log(std::numbers::pi) -
                         (p - 2.0) * std::log(2.0) -
                         (p / 2.0 + 2.0) * std::log(K) - K * K * kExpArg -
                         h_min;
    qc.mp = LogValue::from_ln(ln_mp);
    qc.mp_star = qc.mp * LogValue::from_ln(-(p / 2.0) *
                                           std::log(std::numbers::pi));
    return qc;
}

QuasidiscBound quasidisc_lower_bound(double K, double p, double area) {
    if (!(area > 0.0)) {
        throw ParameterError("quasidisc_lower_bound requires area > 0");
    }
    const QuasidiscConstants qc = mp_constant(K, p);
    QuasidiscBound b;
    b.mu_lower = qc.mp / LogValue::from_ln((p / 2.0) * std::log(area));
    const double ln_rstar = 0.5 * (std::log(area) - std::log(std::numbers::pi));
    b.via_radius = qc.mp_star / LogValue::from_ln(p * ln_rstar);
    return b;
}

} // namespace qcspec
