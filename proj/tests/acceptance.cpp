// Acceptance suite: end-to-end checks with pinned tolerances, one line per
// criterion. Exit code 0 iff every criterion passes.

#include "qcspec/bounds.hpp"
#include "qcspec/eigensolver.hpp"
#include "qcspec/maps.hpp"
#include "qcspec/mesh.hpp"
#include "qcspec/quadrature.hpp"
#include "qcspec/quasidisc.hpp"
#include "qcspec/util.hpp"
#include "qcspec/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace qcspec;

namespace {

struct Criterion {
    std::string name;
    bool pass = true;
    std::string detail;
    double seconds = 0.0;
};

std::vector<Criterion> results;
std::vector<std::pair<std::string, std::vector<double>>> collected_traces;

void record_trace(const std::string& name, const EigenResult& r) {
    collected_traces.emplace_back(name, r.rayleigh_trace);
}

void run(const std::string& name, const std::function<void(Criterion&)>& body) {
    Criterion c;
    c.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.pass = false;
        c.detail = std::string("exception: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    results.push_back(c);
    std::printf("[%s] %s (%.2f s)%s%s\n", c.pass ? "PASS" : "FAIL",
                c.name.c_str(), c.seconds, c.detail.empty() ? "" : ": ",
                c.detail.c_str());
    std::fflush(stdout);
}

void require(Criterion& c, bool ok, const std::string& what) {
    if (!ok) {
        c.pass = false;
        if (!c.detail.empty()) c.detail += "; ";
        c.detail += what;
    }
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// Independent Bessel-root oracle: J1'(x) via power series, bisection.
double bessel_j(int nu, double x) {
    double term = 1.0;
    for (int k = 1; k <= nu; ++k) term *= 0.5 * x / k;
    double sum = term;
    const double q = -0.25 * x * x;
    for (int k = 1; k < 200; ++k) {
        term *= q / (k * (k + nu));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double disc_mu2_oracle() {
    const auto j1p = [](double x) {
        return bessel_j(0, x) - bessel_j(1, x) / x;
    };
    double lo = 1.5, hi = 2.5;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (j1p(mid) > 0.0) lo = mid; else hi = mid;
    }
    const double r = 0.5 * (lo + hi);
    return r * r;
}

// --- criteria -------------------------------------------------------------

void criterion_epicycloid_area(Criterion& c) {
    const QuadratureSpec quad{};
    const double area =
        image_area(MapDescriptor::epicycloid(2.0, 1.0, 3), quad);
    const double expect = 4.0 * std::numbers::pi;
    const double rel = std::abs(area - expect) / expect;
    require(c, rel < 1e-8, "rel err " + fmt(rel));
    c.detail = "rel err " + fmt(rel);
}

void criterion_measure_preservation(Criterion& c) {
    const QuadratureSpec quad{};
    const std::vector<MapDescriptor> maps = {
        MapDescriptor::ellipse_shear(0.5),
        MapDescriptor::ellipse_shear(1.0),
        MapDescriptor::ellipse_shear(2.0),
        MapDescriptor::rose_petal(),
        MapDescriptor::linear_shear(1.0, ShearProfile::Sine, 1.0),
    };
    double worst = 0.0;
    for (const auto& m : maps) {
        for (double beta : {1.0, 2.0, 3.0}) {
            const double integral = integrate_disc(
                [&](double x, double y) {
                    return std::pow(std::abs(jacobian(m, {x, y})), beta);
                },
                quad);
            worst = std::max(worst,
                             std::abs(integral - std::numbers::pi) /
                                 std::numbers::pi);
            const double norm = jacobian_norm(m, beta, quad);
            worst = std::max(
                worst, std::abs(norm - std::pow(std::numbers::pi, 1.0 / beta)) /
                           std::pow(std::numbers::pi, 1.0 / beta));
        }
    }
    require(c, worst < 1e-10, "worst rel err " + fmt(worst));
    c.detail = "worst rel err " + fmt(worst);
}

void criterion_distortion(Criterion& c) {
    const std::vector<MapDescriptor> maps = {
        MapDescriptor::epicycloid(2.0, 1.0, 3),
        MapDescriptor::epicycloid(1.0, 0.0, 2),
        MapDescriptor::ellipse_shear(0.5),
        MapDescriptor::ellipse_shear(1.0),
        MapDescriptor::rose_petal(),
    };
    const auto pts = disc_quasi_random(100000, 1.0 - 1e-9);
    for (const auto& m : maps) {
        const double K = map_info(m).distortion;
        double sup = 0.0;
        for (const auto& z : pts) {
            const double d = local_distortion(m, z);
            sup = std::max(sup, d);
            if (d > K + 1e-9) {
                require(c, false, format_map(m) + " exceeds K");
                return;
            }
        }
        require(c, sup >= 0.99 * K,
                format_map(m) + " sampled sup " + fmt(sup) + " below 99% of " +
                    fmt(K));
    }
    if (c.pass) c.detail = "sampled sup within [99%, 100%+1e-9] of K for all maps";
}

void criterion_bound_algebra(Criterion& c) {
    // pi-cancellation at 1e-12
    double worst_cancel = 0.0;
    for (double p : {2.5, 3.0, 4.0, 6.0}) {
        for (double beta : {1.5, 2.0, 3.0, 8.0}) {
            const BoundReport general = bound_beta_regular(
                p, beta, 2.0, std::numbers::pi,
                std::pow(std::numbers::pi, 1.0 / beta));
            const BoundReport mp =
                bound_measure_preserving(p, BetaParam::finite(beta), 2.0);
            worst_cancel = std::max(
                worst_cancel, std::abs(general.rhs - mp.rhs) / mp.rhs);
        }
    }
    require(c, worst_cancel < 1e-12, "cancellation " + fmt(worst_cancel));

    // q-infimum vs 4096-point grid at 1e-6
    double worst_grid = 0.0;
    for (const auto& [p, beta] : std::vector<std::pair<double, double>>{
             {4.0, 2.0}, {3.0, 1.2}, {6.0, 4.0}}) {
        const Exponents e = exponents(p, BetaParam::finite(beta));
        const QInfimum inf = infimum_over_q(p, e.r, e.q_star);
        double grid_min = std::numeric_limits<double>::infinity();
        const double lo = e.q_star + 1e-9;
        for (int i = 0; i <= 4096; ++i) {
            const double q = lo + (2.0 - lo) * i / 4096;
            grid_min = std::min(grid_min, q_bracket(p, q, e.r));
        }
        require(c, inf.value <= grid_min * (1.0 + 1e-12),
                "infimum above grid oracle");
        worst_grid =
            std::max(worst_grid, std::abs(inf.value - grid_min) / grid_min);
    }
    require(c, worst_grid < 1e-6, "grid match " + fmt(worst_grid));

    // divergence at q* + 1e-9
    for (double p : {3.0, 4.0}) {
        const Exponents e = exponents(p, BetaParam::finite(2.0));
        require(c, q_bracket(p, e.q_star + 1e-9, e.r) > 1e6,
                "bracket divergence check");
    }
    if (c.pass) {
        c.detail = "cancellation " + fmt(worst_cancel) + ", grid match " +
                   fmt(worst_grid);
    }
}

void criterion_quasidisc(Criterion& c) {
    // root residual and monotone nu
    for (double K : {1.0, 2.0, 5.0}) {
        const double f = distortion_growth_factor(K, true);
        const double eps = beta_tilde_offset(K);
        require(c, std::abs(nu_log_offset(eps, f)) < 1e-10,
                "root residual at K=" + fmt(K));
        double prev = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < 100; ++i) {
            const double e = std::pow(10.0, -20.0 + 20.0 * i / 99.0);
            const double v = nu_log_offset(e, f);
            require(c, v > prev, "nu not monotone at K=" + fmt(K));
            prev = v;
        }
    }

    // overflow-free grid K <= 10, p <= 10, with the exact log identity
    for (double K : {1.0, 2.0, 5.0, 10.0}) {
        for (double p : {3.0, 4.0, 10.0}) {
            const QuasidiscConstants qc = mp_constant(K, p);
            require(c, qc.mp.sign == 1 && std::isfinite(qc.mp.ln_mag),
                    "mp overflow at K=" + fmt(K) + " p=" + fmt(p));
            for (double area : {0.5, std::numbers::pi, 42.0}) {
                const QuasidiscBound b = quasidisc_lower_bound(K, p, area);
                const double diff =
                    std::abs(b.mu_lower.ln_mag - b.via_radius.ln_mag);
                require(c, diff <= 1e-9 * std::max(1.0, std::abs(b.mu_lower.ln_mag)),
                        "log identity " + fmt(diff));
            }
        }
    }

    // 50-digit oracle values (tests/oracles/quasidisc_oracle.py), 10
    // significant digits of ln
    const std::vector<std::tuple<double, double, double>> oracle = {
        {1.0, 4.0, -722.96703438501063},
        {2.0, 4.0, -2629.8216952210451},
        {1.0, 3.0, -706.81671454675228},
        {5.0, 6.0, -15971.162396433296},
        {10.0, 10.0, -63535.180334744394},
    };
    double worst = 0.0;
    for (const auto& [K, p, ln_expect] : oracle) {
        const QuasidiscConstants qc = mp_constant(K, p);
        const double rel =
            std::abs(qc.mp.ln_mag - ln_expect) / std::abs(ln_expect);
        worst = std::max(worst, rel);
        require(c, rel < 1e-10,
                "oracle mismatch at K=" + fmt(K) + " p=" + fmt(p) + ": " +
                    fmt(rel));
    }
    if (c.pass) c.detail = "worst oracle rel err of ln: " + fmt(worst);
}

void criterion_eigensolver_calibration(Criterion& c) {
    const double oracle = disc_mu2_oracle();
    const Mesh mesh = mesh_disc(64);
    const EigenResult r = minimize_eigen(mesh, 2.0);
    record_trace("calibration p=2 rings=64", r);
    const double rel = std::abs(r.mu - oracle) / oracle;
    require(c, r.converged, "solver did not converge");
    require(c, rel < 0.01, "mu off oracle by " + fmt(rel));

    // dilation by 2 rescales mu by 4 to 1e-10 relative
    const EigenResult big = minimize_eigen(scaled(mesh, 2.0), 2.0);
    record_trace("calibration dilated", big);
    const double drel = std::abs(big.mu - r.mu / 4.0) / (r.mu / 4.0);
    require(c, drel < 1e-10, "dilation rel err " + fmt(drel));
    c.detail = "mu=" + fmt(r.mu) + " vs oracle " + fmt(oracle) + " (rel " +
               fmt(rel) + "), dilation rel " + fmt(drel);
}

void criterion_main_verification(Criterion& c) {
    const std::vector<MapDescriptor> maps = {
        MapDescriptor::identity(),
        MapDescriptor::ellipse_shear(0.5),
        MapDescriptor::ellipse_shear(1.0),
        MapDescriptor::rose_petal(),
    };
    double min_slack = std::numeric_limits<double>::infinity();
    for (const auto& m : maps) {
        for (double p : {3.0, 4.0}) {
            VerifyOptions opts;
            opts.rings = 64;
            const VerifyReport rep = verify_bound(m, p, opts);
            record_trace(format_map(m) + " p=" + fmt(p), rep.eigen);
            require(c, rep.status == VerifyReport::Status::Pass,
                    format_map(m) + " p=" + fmt(p) + " status not pass");
            min_slack = std::min(min_slack, rep.slack_log);
            // ENT convex bound on the disc itself
            if (m.kind == MapKind::Identity) {
                const double convex = convex_lower_bound(p, 2.0);
                require(c, rep.mu_numeric >= convex,
                        "disc mu_" + fmt(p) + " below the convex bound");
            }
        }
    }
    if (c.pass) c.detail = "8/8 pass, min ln-slack " + fmt(min_slack);
}

void criterion_quasidisc_validity(Criterion& c) {
    VerifyOptions opts;
    opts.rings = 64;
    opts.variant = VerifyVariant::Quasidisc;
    const VerifyReport rep =
        verify_bound(MapDescriptor::ellipse_shear(1.0), 4.0, opts);
    record_trace("quasidisc ellipse-shear p=4", rep.eigen);
    require(c, rep.status == VerifyReport::Status::Pass, "status not pass");
    require(c, rep.slack_log >= 1000.0,
            "ln slack " + fmt(rep.slack_log) + " below 1000");
    c.detail = "ln slack " + fmt(rep.slack_log);
}

void criterion_self_consistency(Criterion& c) {
    // p=2 descent vs the independent linear path, 1e-6 relative
    const Mesh mesh = mesh_disc(32);
    SolveOptions opts;
    opts.tolerance = 1e-12;
    const EigenResult descent = minimize_eigen(mesh, 2.0, opts);
    record_trace("self-consistency p=2 rings=32", descent);
    const double linear = p2_reference_eigenvalue(mesh);
    const double rel = std::abs(descent.mu - linear) / linear;
    require(c, rel < 1e-6, "p2 route disagreement " + fmt(rel));

    // functional gradient vs finite differences on rings=2
    const Mesh tiny = mesh_disc(2);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double worst_fd = 0.0;
    for (double p : {2.0, 3.0, 4.0}) {
        ScalarField u(tiny.vertex_count());
        for (auto& v : u) v = dist(rng);
        const ScalarField g = rayleigh_gradient(tiny, u, p);
        const double h = 1e-6;
        for (std::size_t i = 0; i < u.size(); ++i) {
            ScalarField up = u, dn = u;
            up[i] += h;
            dn[i] -= h;
            const double fd =
                (rayleigh_quotient(tiny, up, p) - rayleigh_quotient(tiny, dn, p)) /
                (2.0 * h);
            const double scale = std::max(std::abs(g[i]), 1.0);
            worst_fd = std::max(worst_fd, std::abs(fd - g[i]) / scale);
        }
    }
    require(c, worst_fd < 1e-5, "gradient FD mismatch " + fmt(worst_fd));

    // every Rayleigh trace collected across the suite is non-increasing
    std::size_t checked = 0;
    for (const auto& [name, trace] : collected_traces) {
        for (std::size_t i = 1; i < trace.size(); ++i) {
            ++checked;
            if (!(trace[i] <= trace[i - 1])) {
                require(c, false, "trace increase in " + name);
                return;
            }
        }
    }
    c.detail = "p2 routes agree to " + fmt(rel) + ", FD " + fmt(worst_fd) +
               ", " + std::to_string(checked) + " trace steps monotone";
}

} // namespace

int main() {
    std::printf("acceptance suite\n");
    run("1 epicycloid-area", criterion_epicycloid_area);
    run("2 measure-preservation", criterion_measure_preservation);
    run("3 distortion-coefficients", criterion_distortion);
    run("4 bound-algebra", criterion_bound_algebra);
    run("5 quasidisc-constants", criterion_quasidisc);
    run("6 eigensolver-calibration", criterion_eigensolver_calibration);
    run("7 main-verification", criterion_main_verification);
    run("8 quasidisc-validity", criterion_quasidisc_validity);
    run("9 solver-self-consistency", criterion_self_consistency);

    // pinned runtime budgets
    const std::vector<std::pair<std::string, double>> budgets = {
        {"1 epicycloid-area", 1.0},
        {"2 measure-preservation", 1.0},
        {"5 quasidisc-constants", 5.0},
        {"6 eigensolver-calibration", 60.0},
        {"7 main-verification", 900.0},
    };
    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        for (const auto& [name, budget] : budgets) {
            if (r.name == name && r.seconds > budget) {
                std::printf("[FAIL] %s exceeded runtime budget (%.2f s > %.0f s)\n",
                            name.c_str(), r.seconds, budget);
                all = false;
            }
        }
    }
    std::printf(all ? "acceptance: ALL PASS\n" : "acceptance: FAILURES\n");
    return all ? 0 : 1;
}
