#include "qcspec/eigensolver.hpp"

#include "qcspec/errors.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <vector>

namespace qcspec {

// Independent p = 2 route: assembled piecewise-linear stiffness/mass
// matrices, shift-inverted iteration with mean-zero deflation. The 6-point
// mass quadrature used by the descent solver is exact for quadratics, so
// both routes discretize the same operator pencil and must agree.
double p2_reference_eigenvalue(const Mesh& mesh) {
    using SpMat = Eigen::SparseMatrix<double>;
    using Trip = Eigen::Triplet<double>;

    const int n = static_cast<int>(mesh.vertices.size());
    std::vector<Trip> kt, mt;
    kt.reserve(mesh.triangles.size() * 9);
    mt.reserve(mesh.triangles.size() * 9);
    for (const auto& t : mesh.triangles) {
        const Vec2& a = mesh.vertices[static_cast<std::size_t>(t[0])];
        const Vec2& b = mesh.vertices[static_cast<std::size_t>(t[1])];
        const Vec2& c = mesh.vertices[static_cast<std::size_t>(t[2])];
        const double area = triangle_area(a, b, c);
        if (!(area > 0.0)) {
            throw MeshError("non-positive triangle area");
        }
        const double inv2A = 1.0 / (2.0 * area);
        const double gx[3] = {-(c.y - b.y) * inv2A, -(a.y - c.y) * inv2A,
                              -(b.y - a.y) * inv2A};
        const double gy[3] = {(c.x - b.x) * inv2A, (a.x - c.x) * inv2A,
                              (b.x - a.x) * inv2A};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                kt.emplace_back(t[static_cast<std::size_t>(i)],
                                t[static_cast<std::size_t>(j)],
                                area * (gx[i] * gx[j] + gy[i] * gy[j]));
                mt.emplace_back(t[static_cast<std::size_t>(i)],
                                t[static_cast<std::size_t>(j)],
                                area / 12.0 * (i == j ? 2.0 : 1.0));
            }
        }
    }
    SpMat K(n, n), M(n, n);
    K.setFromTriplets(kt.begin(), kt.end());
    M.setFromTriplets(mt.begin(), mt.end());

    SpMat B = K + M; // sigma = 1 shift keeps B positive definite
    Eigen::SimplicialLDLT<SpMat> solver;
    solver.compute(B);
    if (solver.info() != Eigen::Success) {
        throw MeshError("p2 reference: factorization failed");
    }

    Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    const Eigen::VectorXd Mones = M * ones;
    const double mass_total = ones.dot(Mones);

    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = mesh.vertices[static_cast<std::size_t>(i)].x;
    }
    v -= (Mones.dot(v) / mass_total) * ones;
    v /= std::sqrt(v.dot(M * v));

    double lambda = 0.0;
    double lambda_prev = -1.0;
    for (int it = 0; it < 500; ++it) {
        Eigen::VectorXd w = solver.solve(M * v);
        w -= (Mones.dot(w) / mass_total) * ones;
        const double mnorm = std::sqrt(w.dot(M * w));
        if (!(mnorm > 0.0)) {
            throw MeshError("p2 reference: iteration collapsed");
        }
        w /= mnorm;
        lambda = w.dot(K * w) / w.dot(M * w);
        if (std::abs(lambda - lambda_prev) <= 1e-13 * std::abs(lambda)) {
            return lambda;
        }
        lambda_prev = lambda;
        v = w;
    }
    return lambda;
}

} // namespace qcspec
