#pragma once

#include "qcspec/logvalue.hpp"

namespace qcspec {

/// Quasidisc spectral constants. The reverse-Holder machinery mixes 10^6
/// prefactors, exp(+-thousands) and differences 1 - nu with nu within
/// 1e-300 of 0 or 1, so every quantity here is carried in log space and the
/// integrability exponents are carried as offsets from 1 (beta = 1 + eps;
/// beta itself rounds to 1.0 in doubles for every realistic K).

/// 24 pi^2 K (plain) or 24 pi^2 K^2 (reflected): the growth factor inside
/// nu. Quasidisc estimates use the reflected form throughout.
double distortion_growth_factor(double K, bool reflected);

/// ln nu(kappa) = 8 kappa ln10 + ln(2 kappa - 2) - ln(2 kappa - 1)
///              + 2 kappa ln(factor); kappa > 1.
double nu_log(double kappa, double factor);

/// Offset form, kappa = 1 + eps; exact for eps down to 1e-300.
double nu_log_offset(double eps, double factor);

/// ln C_kappa = 6 ln10 - (1/2kappa) [ln(2 kappa - 1) + ln(1 - nu)], with
/// ln(1 - nu) evaluated from ln nu without cancellation. Requires nu < 1.
double c_kappa_log(double kappa, double factor);
double c_kappa_log_offset(double eps, double factor);

/// Root offset eps of nu(1 + eps) = 1, by bisection on the monotone
/// ln nu; |ln nu(1+eps)| < 1e-10 guaranteed. Uses the reflected factor.
double beta_tilde_offset(double K);

/// Offset of beta* = min(K/(K-1), beta~); K/(K-1) counts as +inf at K = 1.
double beta_star_offset(double K);

/// ln of the reverse-Holder right-hand side
///   C_kappa^2 K^m pi^{1/kappa - 1} / 4 * exp(K^m pi^2 (2+pi^2)^2 / (2 ln 3)) * area
/// with m = 1 plain, m = 2 reflected. Upper-bounds the L_kappa norm of the
/// Jacobian (one-sided and extremely slack).
LogValue reverse_holder_rhs(double kappa, double K, double area, bool reflected);
LogValue reverse_holder_rhs_offset(double eps, double K, double area,
                                   bool reflected);

struct QuasidiscConstants {
    double K = 1.0;
    double p = 0.0;
    double beta_tilde_offset = 0.0; // beta~ = 1 + eps
    double beta_star_offset = 0.0;
    LogValue mp;      // M_p(K)
    LogValue mp_star; // M_p(K) pi^{-p/2}
    double best_beta_offset = 0.0;
    double best_q = 0.0;
    bool beta_boundary_attained = false; // infimum hit the grid's eps floor
};

/// M_p(K): prefactor pi^{p/2} / (2^{p-2} K^{p/2+2}) times the attenuation
/// exp(-K^2 pi^2 (2+pi^2)^2 / (2 ln 3)) times the best constant over
/// beta in (1, beta*) and q in (q*, 2]. The beta search is log-uniform in
/// the offset (64 points plus refinement); the q search runs in the
/// offset form of the bracket minimization.
QuasidiscConstants mp_constant(double K, double p);

struct QuasidiscBound {
    LogValue mu_lower;   // M_p / area^{p/2}
    LogValue via_radius; // M_p* / R*^p, R* = sqrt(area/pi)
};

/// Lower bound on mu_p for a K-quasidisc of the given area; the two
/// expressions agree identically in log arithmetic.
QuasidiscBound quasidisc_lower_bound(double K, double p, double area);

} // namespace qcspec
