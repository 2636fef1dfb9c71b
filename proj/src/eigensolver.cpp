#include "qcspec/eigensolver.hpp"

#include "qcspec/errors.hpp"
#include "qcspec/util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace qcspec {

namespace {

// Order-4 symmetric triangle rule (6 points), weights normalized to 1.
struct TriRule {
    static constexpr int n = 6;
    static constexpr double bary[6][3] = {
        {0.108103018168070, 0.445948490915965, 0.445948490915965},
        {0.445948490915965, 0.108103018168070, 0.445948490915965},
        {0.445948490915965, 0.445948490915965, 0.108103018168070},
        {0.816847572980459, 0.091576213509771, 0.091576213509771},
        {0.091576213509771, 0.816847572980459, 0.091576213509771},
        {0.091576213509771, 0.091576213509771, 0.816847572980459},
    };
    static constexpr double weight[6] = {
        0.223381589678011, 0.223381589678011, 0.223381589678011,
        0.109951743655322, 0.109951743655322, 0.109951743655322,
    };
};

// |x|^e and |x|^{e-1} x with fast paths for the exponents that occur in the
// suite (p in {2, 3, 4}); the general path goes through pow.
inline double abs_pow(double x, double e) {
    const double ax = std::abs(x);
    if (e == 2.0) return ax * ax;
    if (e == 3.0) return ax * ax * ax;
    if (e == 4.0) {
        const double s = ax * ax;
        return s * s;
    }
    if (e == 1.0) return ax;
    if (e == 0.0) return 1.0;
    return std::pow(ax, e);
}

inline double signed_pow(double x, double e) { // |x|^{e-1} x
    if (e == 1.0) return x;
    if (e == 2.0) return std::abs(x) * x;
    if (e == 3.0) return x * x * x;
    return abs_pow(x, e - 1.0) * x;
}

inline double norm_pow(double sq, double e) { // (sq)^{e/2}, sq = |G|^2
    if (e == 0.0) return 1.0;
    if (e == 1.0) return std::sqrt(sq);
    if (e == 2.0) return sq;
    if (e == 3.0) return sq * std::sqrt(sq);
    if (e == 4.0) return sq * sq;
    return std::pow(sq, 0.5 * e);
}

// Per-triangle area and constant hat-function gradients.
struct Geometry {
    std::vector<double> area;
    std::vector<std::array<Vec2, 3>> grad;
};

Geometry build_geometry(const Mesh& mesh) {
    Geometry g;
    g.area.reserve(mesh.triangles.size());
    g.grad.reserve(mesh.triangles.size());
    for (const auto& t : mesh.triangles) {
        const Vec2& a = mesh.vertices[static_cast<std::size_t>(t[0])];
        const Vec2& b = mesh.vertices[static_cast<std::size_t>(t[1])];
        const Vec2& c = mesh.vertices[static_cast<std::size_t>(t[2])];
        const double area = triangle_area(a, b, c);
        if (!(area > 0.0)) {
            throw MeshError("non-positive triangle area");
        }
        const double inv2A = 1.0 / (2.0 * area);
        // grad hat_i = rot90(edge opposite i) / (2 area)
        std::array<Vec2, 3> gr;
        gr[0] = {-(c.y - b.y) * inv2A, (c.x - b.x) * inv2A};
        gr[1] = {-(a.y - c.y) * inv2A, (a.x - c.x) * inv2A};
        gr[2] = {-(b.y - a.y) * inv2A, (b.x - a.x) * inv2A};
        g.area.push_back(area);
        g.grad.push_back(gr);
    }
    return g;
}

struct EnergyMass {
    double energy = 0.0; // int |grad u|^p
    double mass = 0.0;   // int |u|^p
};

EnergyMass energy_mass(const Mesh& mesh, const Geometry& geo,
                       const ScalarField& u, double p) {
    NeumaierSum energy;
    NeumaierSum mass;
    for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
        const auto& t = mesh.triangles[ti];
        const double u0 = u[static_cast<std::size_t>(t[0])];
        const double u1 = u[static_cast<std::size_t>(t[1])];
        const double u2 = u[static_cast<std::size_t>(t[2])];
        const auto& gr = geo.grad[ti];
        // grad hats sum to zero, so the difference form is algebraically
        // identical and exactly zero for constant fields
        const double gx = (u0 - u2) * gr[0].x + (u1 - u2) * gr[1].x;
        const double gy = (u0 - u2) * gr[0].y + (u1 - u2) * gr[1].y;
        const double A = geo.area[ti];
        energy.add(A * norm_pow(gx * gx + gy * gy, p));
        double m = 0.0;
        for (int q = 0; q < TriRule::n; ++q) {
            const double uq = TriRule::bary[q][0] * u0 +
                              TriRule::bary[q][1] * u1 +
                              TriRule::bary[q][2] * u2;
            m += TriRule::weight[q] * abs_pow(uq, p);
        }
        mass.add(A * m);
    }
    return {energy.value(), mass.value()};
}

// Fused evaluation: E, N and both gradients in one sweep.
EnergyMass eval_with_gradients(const Mesh& mesh, const Geometry& geo,
                               const ScalarField& u, double p, ScalarField& gE,
                               ScalarField& gN) {
    gE.assign(u.size(), 0.0);
    gN.assign(u.size(), 0.0);
    NeumaierSum energy;
    NeumaierSum mass;
    for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
        const auto& t = mesh.triangles[ti];
        const double u0 = u[static_cast<std::size_t>(t[0])];
        const double u1 = u[static_cast<std::size_t>(t[1])];
        const double u2 = u[static_cast<std::size_t>(t[2])];
        const auto& gr = geo.grad[ti];
        // grad hats sum to zero, so the difference form is algebraically
        // identical and exactly zero for constant fields
        const double gx = (u0 - u2) * gr[0].x + (u1 - u2) * gr[1].x;
        const double gy = (u0 - u2) * gr[0].y + (u1 - u2) * gr[1].y;
        const double A = geo.area[ti];
        const double gsq = gx * gx + gy * gy;
        energy.add(A * norm_pow(gsq, p));
        const double gfac = A * p * norm_pow(gsq, p - 2.0);
        double m = 0.0;
        double mq[3] = {0.0, 0.0, 0.0};
        for (int q = 0; q < TriRule::n; ++q) {
            const double uq = TriRule::bary[q][0] * u0 +
                              TriRule::bary[q][1] * u1 +
                              TriRule::bary[q][2] * u2;
            m += TriRule::weight[q] * abs_pow(uq, p);
            const double w = TriRule::weight[q] * signed_pow(uq, p - 1.0);
            mq[0] += w * TriRule::bary[q][0];
            mq[1] += w * TriRule::bary[q][1];
            mq[2] += w * TriRule::bary[q][2];
        }
        mass.add(A * m);
        for (int v = 0; v < 3; ++v) {
            const std::size_t vi =
                static_cast<std::size_t>(t[static_cast<std::size_t>(v)]);
            gE[vi] += gfac * (gx * gr[static_cast<std::size_t>(v)].x +
                              gy * gr[static_cast<std::size_t>(v)].y);
            gN[vi] += A * p * mq[v];
        }
    }
    return {energy.value(), mass.value()};
}

void check_field(const Mesh& mesh, const ScalarField& u) {
    if (u.size() != mesh.vertices.size()) {
        throw ParameterError("field length does not match vertex count");
    }
}

struct ConstraintEval {
    double g = 0.0;     // int |u-c|^{p-2} (u-c)
    double scale = 0.0; // int |u-c|^{p-1}
};

ConstraintEval constraint_eval(const Mesh& mesh, const Geometry& geo,
                               const ScalarField& u, double p, double c) {
    NeumaierSum gsum;
    NeumaierSum ssum;
    for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
        const auto& t = mesh.triangles[ti];
        const double u0 = u[static_cast<std::size_t>(t[0])] - c;
        const double u1 = u[static_cast<std::size_t>(t[1])] - c;
        const double u2 = u[static_cast<std::size_t>(t[2])] - c;
        const double A = geo.area[ti];
        double gq = 0.0, sq = 0.0;
        for (int q = 0; q < TriRule::n; ++q) {
            const double uq = TriRule::bary[q][0] * u0 +
                              TriRule::bary[q][1] * u1 +
                              TriRule::bary[q][2] * u2;
            gq += TriRule::weight[q] * signed_pow(uq, p - 1.0);
            sq += TriRule::weight[q] * abs_pow(uq, p - 1.0);
        }
        gsum.add(A * gq);
        ssum.add(A * sq);
    }
    return {gsum.value(), ssum.value()};
}

ShiftResult constraint_shift_impl(const Mesh& mesh, const Geometry& geo,
                                  const ScalarField& u, double p) {
    const auto [mn, mx] = std::minmax_element(u.begin(), u.end());
    if (!(*mx > *mn)) {
        throw DegenerateFieldError("constraint shift of a constant field");
    }
    double c;
    if (p == 2.0) {
        // g is linear in c: the area-weighted mean.
        NeumaierSum num;
        NeumaierSum den;
        for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
            const auto& t = mesh.triangles[ti];
            const double A = geo.area[ti];
            num.add(A * (u[static_cast<std::size_t>(t[0])] +
                         u[static_cast<std::size_t>(t[1])] +
                         u[static_cast<std::size_t>(t[2])]) /
                    3.0);
            den.add(A);
        }
        c = num.value() / den.value();
    } else {
        c = monotone_constraint_root(
            [&](double cc) { return constraint_eval(mesh, geo, u, p, cc).g; },
            [&](double cc) {
                return std::max(constraint_eval(mesh, geo, u, p, cc).scale,
                                1e-300);
            },
            *mn, *mx, 1e-13);
    }
    ShiftResult out;
    out.c = c;
    out.field.resize(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        out.field[i] = u[i] - c;
    }
    return out;
}

double dot(const ScalarField& a, const ScalarField& b) {
    NeumaierSum s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s.add(a[i] * b[i]);
    }
    return s.value();
}

// Shift + normalize int |u|^p = 1; the returned quotient equals the
// quotient of the normalized iterate (the ratio is 0-homogeneous).
double project(const Mesh& mesh, const Geometry& geo, ScalarField& u, double p) {
    const ShiftResult sh = constraint_shift_impl(mesh, geo, u, p);
    u = sh.field;
    const EnergyMass em = energy_mass(mesh, geo, u, p);
    if (!(em.mass > 0.0)) {
        throw DegenerateFieldError("projection produced a zero field");
    }
    const double f = (p == 2.0) ? std::sqrt(em.mass) : std::pow(em.mass, 1.0 / p);
    for (auto& x : u) {
        x /= f;
    }
    return em.energy / em.mass;
}

struct StartResult {
    double mu = std::numeric_limits<double>::infinity();
    ScalarField field;
    std::vector<double> trace;
    int iterations = 0;
    bool converged = false;
};

StartResult descend(const Mesh& mesh, const Geometry& geo, ScalarField u,
                    double p, const SolveOptions& opts) {
    StartResult res;
    double R = project(mesh, geo, u, p);
    res.trace.push_back(R);

    ScalarField gE, gN;
    ScalarField g(u.size());
    ScalarField prev_u, prev_g;
    double t = 0.0;

    for (int it = 0; it < opts.max_iter; ++it) {
        const EnergyMass em = eval_with_gradients(mesh, geo, u, p, gE, gN);
        for (std::size_t i = 0; i < u.size(); ++i) {
            g[i] = (gE[i] - R * gN[i]) / em.mass;
        }
        const double gg = dot(g, g);
        if (!(gg > 0.0)) {
            res.converged = true; // stationary point
            break;
        }
        if (prev_u.empty()) {
            t = std::sqrt(dot(u, u) / gg); // first step: |u|/|g| scale
        } else {
            // Barzilai-Borwein spectral step from the last accepted move.
            NeumaierSum ss, sy;
            for (std::size_t i = 0; i < u.size(); ++i) {
                const double s = u[i] - prev_u[i];
                ss.add(s * s);
                sy.add(s * (g[i] - prev_g[i]));
            }
            const double bb = ss.value() / sy.value();
            t = (std::isfinite(bb) && bb > 0.0) ? bb : 2.0 * t;
        }

        prev_u = u;
        prev_g = g;

        bool accepted = false;
        double R_new = R;
        ScalarField cand(u.size());
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t i = 0; i < u.size(); ++i) {
                cand[i] = u[i] - t * g[i];
            }
            try {
                ScalarField proj = cand;
                const double Rc = project(mesh, geo, proj, p);
                if (Rc <= R - 1e-4 * t * gg) {
                    u = std::move(proj);
                    R_new = Rc;
                    accepted = true;
                    break;
                }
            } catch (const DegenerateFieldError&) {
                // candidate collapsed to a constant; shrink the step
            }
            t *= 0.5;
        }
        if (!accepted) {
            res.converged = true; // no admissible descent step left
            break;
        }
        res.trace.push_back(R_new);
        ++res.iterations;
        const double drop = R - R_new;
        R = R_new;
        if (drop <= opts.tolerance * std::abs(R)) {
            res.converged = true;
            break;
        }
    }
    res.mu = R;
    res.field = u;
    return res;
}

} // namespace

double rayleigh_quotient(const Mesh& mesh, const ScalarField& u, double p) {
    check_field(mesh, u);
    if (!(p >= 2.0)) {
        throw ParameterError("rayleigh_quotient requires p >= 2");
    }
    const Geometry geo = build_geometry(mesh);
    const EnergyMass em = energy_mass(mesh, geo, u, p);
    if (!(em.mass > 0.0)) {
        throw DegenerateFieldError("zero |u|^p mass");
    }
    return em.energy / em.mass;
}

ScalarField rayleigh_gradient(const Mesh& mesh, const ScalarField& u, double p) {
    check_field(mesh, u);
    if (!(p >= 2.0)) {
        throw ParameterError("rayleigh_gradient requires p >= 2");
    }
    const Geometry geo = build_geometry(mesh);
    ScalarField gE, gN;
    const EnergyMass em = eval_with_gradients(mesh, geo, u, p, gE, gN);
    if (!(em.mass > 0.0)) {
        throw DegenerateFieldError("zero |u|^p mass");
    }
    const double R = em.energy / em.mass;
    ScalarField g(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        g[i] = (gE[i] - R * gN[i]) / em.mass;
    }
    return g;
}

double monotone_constraint_root(const std::function<double(double)>& g,
                                const std::function<double(double)>& scale,
                                double lo, double hi, double f_tol_rel) {
    double glo = g(lo);
    double ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo > 0.0) == (ghi > 0.0)) {
        throw DegenerateFieldError("constraint root not bracketed");
    }
    // Illinois regula falsi: bracket-safe, superlinear on smooth g.
    const double width0 = hi - lo;
    double best = 0.5 * (lo + hi);
    int last_side = 0;
    for (int it = 0; it < 200; ++it) {
        double c = (lo * ghi - hi * glo) / (ghi - glo);
        if (!(c > lo) || !(c < hi)) {
            c = 0.5 * (lo + hi); // secant left the bracket
        }
        const double gc = g(c);
        best = c;
        if (std::abs(gc) <= f_tol_rel * scale(c)) {
            return c;
        }
        if ((gc > 0.0) == (glo > 0.0)) {
            lo = c;
            glo = gc;
            if (last_side == -1) ghi *= 0.5;
            last_side = -1;
        } else {
            hi = c;
            ghi = gc;
            if (last_side == 1) glo *= 0.5;
            last_side = 1;
        }
        if ((hi - lo) <= 1e-16 * width0) {
            break;
        }
    }
    return best;
}

ShiftResult constraint_shift(const Mesh& mesh, const ScalarField& u, double p) {
    check_field(mesh, u);
    if (!(p >= 2.0)) {
        throw ParameterError("constraint_shift requires p >= 2");
    }
    const Geometry geo = build_geometry(mesh);
    return constraint_shift_impl(mesh, geo, u, p);
}

EigenResult minimize_eigen_warm(const Mesh& mesh, double p,
                                const ScalarField& start,
                                const SolveOptions& opts) {
    if (!(p >= 2.0)) {
        throw ParameterError("minimize_eigen_warm requires p >= 2");
    }
    check_field(mesh, start);
    const Geometry geo = build_geometry(mesh);
    StartResult sr = descend(mesh, geo, start, p, opts);
    EigenResult out;
    out.mu = sr.mu;
    out.field = std::move(sr.field);
    out.rayleigh_trace = std::move(sr.trace);
    out.iterations = sr.iterations;
    out.converged = sr.converged;
    out.seed = opts.seed;
    out.best_start = "warm";
    const ConstraintEval ce = constraint_eval(mesh, geo, out.field, p, 0.0);
    out.constraint_residual = std::abs(ce.g) / std::max(ce.scale, 1e-300);
    return out;
}

ScalarField interpolate_disc_field(const Mesh& coarse_disc,
                                   const ScalarField& values,
                                   const Mesh& fine_disc) {
    if (values.size() != coarse_disc.vertices.size()) {
        throw ParameterError("field length does not match vertex count");
    }
    // concentric structure: annulus k holds triangles [6(k-1)^2, 6k^2)
    const std::size_t vc = coarse_disc.vertices.size();
    const int rings = static_cast<int>(
        std::lround((-1.0 + std::sqrt(1.0 + 4.0 * (vc - 1) / 3.0)) / 2.0));
    const bool structured =
        rings >= 1 &&
        vc == static_cast<std::size_t>(1 + 3 * rings * (rings + 1)) &&
        coarse_disc.triangles.size() ==
            static_cast<std::size_t>(6 * rings * rings);

    const auto eval_at = [&](const Vec2& q, std::size_t t_begin,
                             std::size_t t_end, double* score,
                             double* value) {
        for (std::size_t ti = t_begin; ti < t_end; ++ti) {
            const auto& t = coarse_disc.triangles[ti];
            const Vec2& a = coarse_disc.vertices[static_cast<std::size_t>(t[0])];
            const Vec2& b = coarse_disc.vertices[static_cast<std::size_t>(t[1])];
            const Vec2& c = coarse_disc.vertices[static_cast<std::size_t>(t[2])];
            const double area2 =
                (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
            const double l0 =
                ((b.x - q.x) * (c.y - q.y) - (b.y - q.y) * (c.x - q.x)) / area2;
            const double l1 =
                ((c.x - q.x) * (a.y - q.y) - (c.y - q.y) * (a.x - q.x)) / area2;
            const double l2 = 1.0 - l0 - l1;
            const double s = std::min({l0, l1, l2});
            if (s > *score) {
                *score = s;
                *value = l0 * values[static_cast<std::size_t>(t[0])] +
                         l1 * values[static_cast<std::size_t>(t[1])] +
                         l2 * values[static_cast<std::size_t>(t[2])];
                if (s >= 0.0) return true;
            }
        }
        return false;
    };

    ScalarField out(fine_disc.vertices.size());
    for (std::size_t i = 0; i < fine_disc.vertices.size(); ++i) {
        const Vec2& q = fine_disc.vertices[i];
        double score = -std::numeric_limits<double>::infinity();
        double value = 0.0;
        bool found = false;
        if (structured) {
            const double r = std::hypot(q.x, q.y);
            const int k = std::clamp(static_cast<int>(std::ceil(r * rings)),
                                     1, rings);
            for (int kk : {k, k - 1, k + 1}) {
                if (kk < 1 || kk > rings) continue;
                const std::size_t t0 = static_cast<std::size_t>(6) * (kk - 1) * (kk - 1);
                const std::size_t t1 = static_cast<std::size_t>(6) * kk * kk;
                if (eval_at(q, t0, t1, &score, &value)) {
                    found = true;
                    break;
                }
            }
        }
        if (!found && score < 0.0) {
            eval_at(q, 0, coarse_disc.triangles.size(), &score, &value);
        }
        out[i] = value;
    }
    return out;
}

EigenResult solve_mapped_eigen(const MapDescriptor& map, double p, int rings,
                               const SolveOptions& opts) {
    // ring ladder: rings, rings/2, ... down to ~8
    std::vector<int> ladder{rings};
    while (ladder.back() > 12) {
        ladder.push_back(ladder.back() / 2);
    }
    std::reverse(ladder.begin(), ladder.end());

    std::vector<Mesh> disc_meshes;
    std::vector<Mesh> image_meshes;
    disc_meshes.reserve(ladder.size());
    image_meshes.reserve(ladder.size());
    for (int r : ladder) {
        disc_meshes.push_back(mesh_disc(r));
        image_meshes.push_back(push_forward(disc_meshes.back(), map));
    }

    SolveOptions coarse_opts = opts;
    coarse_opts.tolerance = std::min(opts.tolerance, 1e-10);

    // three starts at the coarsest level, each continued separately
    struct Track {
        std::string name;
        ScalarField field;
    };
    std::vector<Track> tracks;
    {
        const Mesh& m0 = disc_meshes.front();
        if (opts.starts >= 1) {
            ScalarField x(m0.vertex_count());
            for (std::size_t i = 0; i < x.size(); ++i) x[i] = m0.vertices[i].x;
            tracks.push_back({"x", std::move(x)});
        }
        if (opts.starts >= 2) {
            ScalarField y(m0.vertex_count());
            for (std::size_t i = 0; i < y.size(); ++i) y[i] = m0.vertices[i].y;
            tracks.push_back({"y", std::move(y)});
        }
        if (opts.starts >= 3) {
            std::mt19937_64 rng(opts.seed);
            std::uniform_real_distribution<double> dist(-1.0, 1.0);
            ScalarField rnd(m0.vertex_count());
            for (auto& v : rnd) v = dist(rng);
            tracks.push_back({"random", std::move(rnd)});
        }
        if (tracks.empty()) {
            throw ParameterError("solve_mapped_eigen requires starts >= 1");
        }
    }

    EigenResult best;
    best.mu = std::numeric_limits<double>::infinity();
    best.seed = opts.seed;
    for (auto& track : tracks) {
        ScalarField u = std::move(track.field);
        EigenResult level_result;
        for (std::size_t lvl = 0; lvl < ladder.size(); ++lvl) {
            if (lvl > 0) {
                u = interpolate_disc_field(disc_meshes[lvl - 1], u,
                                           disc_meshes[lvl]);
            }
            const bool last = (lvl + 1 == ladder.size());
            level_result = minimize_eigen_warm(image_meshes[lvl], p, u,
                                               last ? opts : coarse_opts);
            u = level_result.field;
        }
        if (level_result.mu < best.mu) {
            best = std::move(level_result);
            best.best_start = track.name;
            best.seed = opts.seed;
        }
    }
    return best;
}

EigenResult minimize_eigen(const Mesh& mesh, double p, const SolveOptions& opts) {
    if (!(p >= 2.0)) {
        throw ParameterError("minimize_eigen requires p >= 2");
    }
    if (mesh.vertices.size() < 3) {
        throw MeshError("mesh too small");
    }
    const Geometry geo = build_geometry(mesh);

    std::vector<std::pair<std::string, ScalarField>> starts;
    if (opts.starts >= 1) {
        ScalarField x(mesh.vertices.size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = mesh.vertices[i].x;
        starts.emplace_back("x", std::move(x));
    }
    if (opts.starts >= 2) {
        ScalarField y(mesh.vertices.size());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = mesh.vertices[i].y;
        starts.emplace_back("y", std::move(y));
    }
    if (opts.starts >= 3) {
        std::mt19937_64 rng(opts.seed);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        ScalarField rnd(mesh.vertices.size());
        for (auto& v : rnd) v = dist(rng);
        starts.emplace_back("random", std::move(rnd));
    }
    if (starts.empty()) {
        throw ParameterError("minimize_eigen requires starts >= 1");
    }

    EigenResult best;
    best.mu = std::numeric_limits<double>::infinity();
    best.seed = opts.seed;
    for (auto& [name, field] : starts) {
        StartResult sr = descend(mesh, geo, std::move(field), p, opts);
        if (sr.mu < best.mu) {
            best.mu = sr.mu;
            best.field = std::move(sr.field);
            best.rayleigh_trace = std::move(sr.trace);
            best.iterations = sr.iterations;
            best.converged = sr.converged;
            best.best_start = name;
        }
    }
    const ConstraintEval ce = constraint_eval(mesh, geo, best.field, p, 0.0);
    best.constraint_residual = std::abs(ce.g) / std::max(ce.scale, 1e-300);
    return best;
}

ConvergenceStudyResult convergence_study(const MapDescriptor& map, double p,
                                         const std::vector<int>& ring_list,
                                         const SolveOptions& opts) {
    if (ring_list.empty()) {
        throw ParameterError("convergence_study requires at least one level");
    }
    for (std::size_t i = 1; i < ring_list.size(); ++i) {
        if (ring_list[i] <= ring_list[i - 1]) {
            throw ParameterError("ring_list must be strictly increasing");
        }
    }
    ConvergenceStudyResult out;
    for (int rings : ring_list) {
        const EigenResult r = solve_mapped_eigen(map, p, rings, opts);
        out.rows.push_back({rings, 1.0 / rings, r.mu});
    }
    out.extrapolated = out.rows.back().mu;
    out.observed_order = 0.0;
    if (out.rows.size() >= 3) {
        const auto& r1 = out.rows[out.rows.size() - 3];
        const auto& r2 = out.rows[out.rows.size() - 2];
        const auto& r3 = out.rows[out.rows.size() - 1];
        const double d12 = r1.mu - r2.mu;
        const double d23 = r2.mu - r3.mu;
        if (d23 != 0.0 && d12 / d23 > 1.0) {
            // fit mu_h = mu + C h^alpha through the last three levels
            const auto ratio_at = [&](double alpha) {
                return (std::pow(r1.h, alpha) - std::pow(r2.h, alpha)) /
                       (std::pow(r2.h, alpha) - std::pow(r3.h, alpha));
            };
            const double target = d12 / d23;
            double lo = 0.05, hi = 10.0;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (ratio_at(mid) < target) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            const double alpha = 0.5 * (lo + hi);
            const double c = d23 / (std::pow(r2.h, alpha) - std::pow(r3.h, alpha));
            out.observed_order = alpha;
            out.extrapolated = r3.mu - c * std::pow(r3.h, alpha);
        }
    }
    return out;
}

} // namespace qcspec
