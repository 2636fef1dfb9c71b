#include "qcspec/quasidisc.hpp"

#include "qcspec/errors.hpp"
#include "qcspec/maps.hpp"
#include "qcspec/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

using namespace qcspec;

// Reference values in this file come from a 50-digit computation
// (tests/oracles/quasidisc_oracle.py) with an independent golden-section
// minimization.

TEST_SUITE("quasidisc") {

TEST_CASE("nu_log: hand value and vanishing factor at kappa -> 1+") {
    const double f1 = distortion_growth_factor(1.0, false); // 24 pi^2
    CHECK(f1 == doctest::Approx(236.87050562614461).epsilon(1e-14));
    CHECK(nu_log(1.0001, f1) ==
          doctest::Approx(20.841250347421758).epsilon(1e-9));
    // nu -> 0 as kappa -> 1+
    CHECK(nu_log_offset(1e-200, f1) < -400.0);
    CHECK_THROWS_AS(nu_log(1.0, f1), ParameterError);
}

TEST_CASE("nu is monotone increasing on a 100-point grid") {
    for (double K : {1.0, 2.0, 5.0}) {
        const double f = distortion_growth_factor(K, true);
        double prev = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < 100; ++i) {
            const double eps = std::pow(10.0, -20.0 + 20.0 * i / 99.0);
            const double v = nu_log_offset(eps, f);
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("c_kappa: limit 10^6, and no cancellation near nu = 1") {
    const double f = distortion_growth_factor(1.0, true);
    // nu -> 0: C -> 10^6
    CHECK(c_kappa_log_offset(1e-60, f) ==
          doctest::Approx(6.0 * std::log(10.0)).epsilon(1e-12));

    // eps with nu = 1 - 1e-10, found on the monotone ln nu
    double lo = 1e-60, hi = beta_tilde_offset(1.0);
    const double target = std::log1p(-1e-10);
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (nu_log_offset(mid, f) < target) lo = mid; else hi = mid;
    }
    const double eps = std::sqrt(lo * hi);
    const double got = c_kappa_log_offset(eps, f);
    // assembled directly from the pieces, log1p-accurate path
    const double expect = 6.0 * std::log(10.0) -
                          (std::log1p(2.0 * eps) +
                           log1m_exp(nu_log_offset(eps, f))) /
                              (2.0 * (1.0 + eps));
    CHECK(got == doctest::Approx(expect).epsilon(1e-14));
    CHECK(got == doctest::Approx(25.328436022933387).epsilon(1e-4));
    CHECK(std::isfinite(got));

    CHECK_THROWS_AS(c_kappa_log(1.5, f), DomainError); // nu >> 1 there
}

TEST_CASE("c_kappa matches the 50-digit oracle at the K=2 midpoint") {
    const double et = beta_tilde_offset(2.0);
    const double f = distortion_growth_factor(2.0, true);
    // kappa = 1 + eps~/2; oracle: 14.1620841482442011
    CHECK(c_kappa_log_offset(et / 2.0, f) ==
          doctest::Approx(14.162084148244201).epsilon(1e-12));
}

TEST_CASE("beta_tilde: root residual, bracketing, oracle values") {
    const std::vector<std::pair<double, double>> oracle = {
        {1.0, 8.91144292939176e-14},
        {2.0, 5.56965183088249e-15},
        {5.0, 1.42583086870615e-16},
        {10.0, 8.91144292941348e-18},
    };
    for (const auto& [K, expected] : oracle) {
        const double eps = beta_tilde_offset(K);
        CHECK(eps == doctest::Approx(expected).epsilon(1e-9));
        const double f = distortion_growth_factor(K, true);
        CHECK(std::abs(nu_log_offset(eps, f)) < 1e-10); // root residual
        CHECK(nu_log_offset(eps / 2.0, f) < 0.0);       // bracketing
        CHECK(nu_log_offset(2.0 * eps, f) > 0.0);
    }
    // leading-order sanity band: eps(1) ~ 1e-8 (24 pi^2)^-2 / 2, +-20%
    const double lead = 0.5e-8 / std::pow(236.87050562614461, 2.0);
    const double eps1 = beta_tilde_offset(1.0);
    CHECK(eps1 > 0.8 * lead);
    CHECK(eps1 < 1.2 * lead);
    // larger factor crosses earlier
    CHECK(beta_tilde_offset(2.0) < beta_tilde_offset(1.0));
}

TEST_CASE("beta_star: the K/(K-1) cap is never the binding one here") {
    CHECK(beta_star_offset(1.0) == doctest::Approx(beta_tilde_offset(1.0)));
    CHECK(beta_star_offset(2.0) == doctest::Approx(beta_tilde_offset(2.0)));
    // K = 1.0001: K/(K-1) ~ 10001 >> beta~
    CHECK(beta_star_offset(1.0001) ==
          doctest::Approx(beta_tilde_offset(1.0001)));
    CHECK_THROWS_AS(beta_star_offset(0.5), ParameterError);
}

TEST_CASE("reverse_holder_rhs: oracle value, area linearity, domain error") {
    // K=1, kappa = 1+1e-14, area = pi, plain factor: 50-digit oracle
    const LogValue rhs = reverse_holder_rhs_offset(1e-14, 1.0,
                                                   std::numbers::pi, false);
    CHECK(rhs.sign == 1);
    CHECK(rhs.ln_mag == doctest::Approx(660.35411418688201).epsilon(1e-12));

    // doubling the area adds ln 2
    const LogValue rhs2 = reverse_holder_rhs_offset(
        1e-14, 1.0, 2.0 * std::numbers::pi, false);
    CHECK(rhs2.ln_mag - rhs.ln_mag ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(reverse_holder_rhs(1.5, 1.0, 1.0, false), DomainError);
}

TEST_CASE("reverse_holder_rhs dominates the quadrature norm on the catalog") {
    const QuadratureSpec quad{};
    const std::vector<MapDescriptor> maps = {
        MapDescriptor::identity(),
        MapDescriptor::ellipse_shear(1.0),
        MapDescriptor::rose_petal(),
        MapDescriptor::epicycloid(2.0, 1.0, 3),
    };
    for (const auto& m : maps) {
        const double K = map_info(m).distortion;
        const double eps = beta_tilde_offset(K) / 2.0;
        const double kappa = 1.0 + eps;
        const double norm_kappa = jacobian_norm(m, kappa, quad);
        const LogValue rhs = reverse_holder_rhs_offset(
            eps, K, image_area(m, quad), true);
        // one-sided and never remotely tight
        CHECK(rhs.ln_mag > std::log(norm_kappa));
    }
}

TEST_CASE("mp_constant: 50-digit oracle values for ln M_p") {
    struct Case {
        double K, p, ln_mp;
    };
    const std::vector<Case> cases = {
        {1.0, 4.0, -722.96703438501063},
        {2.0, 4.0, -2629.8216952210451},
        {1.0, 3.0, -706.81671454675228},
        {5.0, 6.0, -15971.162396433296},
        {2.0, 6.0, -2665.8271913061966},
        {10.0, 10.0, -63535.180334744394},
    };
    for (const auto& c : cases) {
        const QuasidiscConstants qc = mp_constant(c.K, c.p);
        CHECK(qc.mp.sign == 1);
        CHECK(qc.mp.ln_mag == doctest::Approx(c.ln_mp).epsilon(1e-10));
        // M_p* = M_p pi^{-p/2} exactly in log arithmetic
        CHECK(qc.mp_star.ln_mag ==
              qc.mp.ln_mag - (c.p / 2.0) * std::log(std::numbers::pi));
        CHECK(qc.best_q == doctest::Approx(2.0));
        CHECK_FALSE(qc.beta_boundary_attained);
        CHECK(qc.best_beta_offset < qc.beta_star_offset);
        CHECK(qc.best_beta_offset > 0.0);
    }
    // optimizer location for (K=1, p=4); the objective is flat there, so
    // only the scale is pinned
    const QuasidiscConstants qc = mp_constant(1.0, 4.0);
    CHECK(qc.best_beta_offset ==
          doctest::Approx(5.94096195292780e-14).epsilon(1e-4));
}

TEST_CASE("mp_constant is positive and overflow-free up to K=10, p=10") {
    for (double K : {1.0, 1.5, 2.0, 3.0, 5.0, 10.0}) {
        for (double p : {3.0, 4.0, 6.0, 10.0}) {
            const QuasidiscConstants qc = mp_constant(K, p);
            CHECK(qc.mp.sign == 1);
            CHECK(std::isfinite(qc.mp.ln_mag));
            CHECK(std::isfinite(qc.mp_star.ln_mag));
        }
    }
}

TEST_CASE("quasidisc_lower_bound: the two expressions coincide") {
    // area = pi: both reduce to M_p*
    const QuasidiscBound at_pi = quasidisc_lower_bound(2.0, 4.0, std::numbers::pi);
    const QuasidiscConstants qc = mp_constant(2.0, 4.0);
    CHECK(at_pi.mu_lower.ln_mag ==
          doctest::Approx(qc.mp_star.ln_mag).epsilon(1e-14));
    CHECK(at_pi.via_radius.ln_mag ==
          doctest::Approx(qc.mp_star.ln_mag).epsilon(1e-14));

    // random areas: identical in log arithmetic (double rounding only)
    for (double area : {0.37, 1.0, 8.25, 123.456}) {
        const QuasidiscBound b = quasidisc_lower_bound(2.0, 4.0, area);
        CHECK(std::abs(b.mu_lower.ln_mag - b.via_radius.ln_mag) < 1e-9);
    }

    // scaling law: area x4 divides the bound by 4^{p/2}
    const QuasidiscBound b1 = quasidisc_lower_bound(2.0, 4.0, 1.7);
    const QuasidiscBound b4 = quasidisc_lower_bound(2.0, 4.0, 4.0 * 1.7);
    CHECK(b1.mu_lower.ln_mag - b4.mu_lower.ln_mag ==
          doctest::Approx(2.0 * std::log(4.0)).epsilon(1e-9));
}

} // TEST_SUITE
