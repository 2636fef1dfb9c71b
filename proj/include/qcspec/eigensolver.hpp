#pragma once

#include "qcspec/mesh.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qcspec {

/// One value per mesh vertex; piecewise-linear interpolation implied.
using ScalarField = std::vector<double>;

struct SolveOptions {
    double tolerance = 1e-8; // relative Rayleigh-quotient decrease
    int max_iter = 20000;
    int starts = 3; // x-coordinate, y-coordinate, seeded random
    std::uint64_t seed = 12345;
};

struct EigenResult {
    double mu = 0.0;
    ScalarField field;
    double constraint_residual = 0.0; // |int |u|^{p-2} u| / int |u|^{p-1}
    int iterations = 0;
    std::vector<double> rayleigh_trace; // non-increasing
    bool converged = false;
    std::uint64_t seed = 0;
    std::string best_start;
};

/// (sum_T |grad u|_T^p area_T) / (int |u|^p). The gradient term is the
/// exact constant gradient of the linear interpolant; the mass term uses an
/// order-4 symmetric triangle rule.
double rayleigh_quotient(const Mesh& mesh, const ScalarField& u, double p);

/// Raw functional gradient of the Rayleigh quotient with respect to the
/// vertex values: (grad E - R grad N) / N.
ScalarField rayleigh_gradient(const Mesh& mesh, const ScalarField& u, double p);

struct ShiftResult {
    ScalarField field;
    double c = 0.0;
};

/// The unique c with int |u-c|^{p-2} (u-c) dx = 0 (the integrand is strictly
/// monotone in c), found by bisection; returns u - c.
ShiftResult constraint_shift(const Mesh& mesh, const ScalarField& u, double p);

/// Root of a strictly decreasing scalar function g on [lo, hi] with
/// |g| driven below f_tol_rel * scale(c); `scale` supplies the positive
/// normalization at each candidate. Used by constraint_shift and exposed
/// for direct testing against hand-computed roots.
double monotone_constraint_root(const std::function<double(double)>& g,
                                const std::function<double(double)>& scale,
                                double lo, double hi, double f_tol_rel);

/// Projected-descent minimization of the p-Rayleigh quotient under the
/// zero-mean constraint: descend along the negative functional gradient
/// with backtracking, re-shift, re-normalize; multi-start over the x, y and
/// seeded-random fields; the reported mu is the best over starts.
EigenResult minimize_eigen(const Mesh& mesh, double p,
                           const SolveOptions& opts = SolveOptions{});

/// Single-start projected descent from a caller-supplied field.
EigenResult minimize_eigen_warm(const Mesh& mesh, double p,
                                const ScalarField& start,
                                const SolveOptions& opts = SolveOptions{});

/// Values of the coarse piecewise-linear interpolant at the fine mesh's
/// vertices; both meshes triangulate the unit disc. Points falling just
/// outside the coarse polygon (fine boundary vertices) use the nearest
/// triangle's linear extension.
ScalarField interpolate_disc_field(const Mesh& coarse_disc,
                                   const ScalarField& values,
                                   const Mesh& fine_disc);

/// Eigen-solve on the mapped disc at the given resolution, accelerated by
/// coarse-to-fine continuation: every start (x, y, seeded random) is solved
/// on a ring ladder and interpolated upward, and the best final result
/// wins. Same minimizer semantics as minimize_eigen, far fewer fine-level
/// iterations.
EigenResult solve_mapped_eigen(const MapDescriptor& map, double p, int rings,
                               const SolveOptions& opts = SolveOptions{});

struct ConvergenceRow {
    int rings = 0;
    double h = 0.0;
    double mu = 0.0;
};

struct ConvergenceStudyResult {
    std::vector<ConvergenceRow> rows;
    double extrapolated = 0.0;
    double observed_order = 0.0;
};

/// minimize_eigen per refinement level plus Richardson extrapolation from
/// the last three levels.
ConvergenceStudyResult convergence_study(const MapDescriptor& map, double p,
                                         const std::vector<int>& ring_list,
                                         const SolveOptions& opts = SolveOptions{});

/// Independent p = 2 path: assembled stiffness/mass matrices, inverse
/// iteration with mean-zero deflation. Verification oracle for
/// minimize_eigen at p = 2.
double p2_reference_eigenvalue(const Mesh& mesh);

} // namespace qcspec
