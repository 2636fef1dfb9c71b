#include "qcspec/mesh.hpp"

#include "qcspec/errors.hpp"
#include "qcspec/util.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <set>
#include <utility>

namespace qcspec {

double triangle_area(const Vec2& a, const Vec2& b, const Vec2& c) {
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

double Mesh::total_area() const {
    NeumaierSum sum;
    for (const auto& t : triangles) {
        sum.add(triangle_area(vertices[static_cast<std::size_t>(t[0])],
                              vertices[static_cast<std::size_t>(t[1])],
                              vertices[static_cast<std::size_t>(t[2])]));
    }
    return sum.value();
}

std::size_t Mesh::edge_count() const {
    std::set<std::pair<int, int>> edges;
    for (const auto& t : triangles) {
        for (int e = 0; e < 3; ++e) {
            const int a = t[static_cast<std::size_t>(e)];
            const int b = t[static_cast<std::size_t>((e + 1) % 3)];
            edges.emplace(std::min(a, b), std::max(a, b));
        }
    }
    return edges.size();
}

namespace {

std::vector<double> ring_radii(int rings, double grading, int graded_rings) {
    std::vector<double> radii(static_cast<std::size_t>(rings) + 1, 0.0);
    if (grading >= 1.0 || rings < 2) {
        for (int k = 0; k <= rings; ++k) {
            radii[static_cast<std::size_t>(k)] = static_cast<double>(k) / rings;
        }
        return radii;
    }
    const int L = std::min(graded_rings, rings - 1);
    // uniform widths c up to ring R-L, then c*g, c*g^2, ...
    double geo = 0.0;
    for (int j = 1; j <= L; ++j) geo += std::pow(grading, j);
    const double c = 1.0 / ((rings - L) + geo);
    double r = 0.0;
    for (int k = 1; k <= rings; ++k) {
        r += (k <= rings - L) ? c : c * std::pow(grading, k - (rings - L));
        radii[static_cast<std::size_t>(k)] = r;
    }
    radii.back() = 1.0;
    return radii;
}

} // namespace

Mesh mesh_disc(int rings, double grading, int graded_rings) {
    if (rings < 1) {
        throw ParameterError("mesh_disc requires rings >= 1");
    }
    if (!(grading > 0.0) || grading > 1.0) {
        throw ParameterError("mesh_disc grading must be in (0, 1]");
    }
    const std::vector<double> radii = ring_radii(rings, grading, graded_rings);

    Mesh m;
    m.vertices.push_back({0.0, 0.0});
    std::vector<int> ring_start(static_cast<std::size_t>(rings) + 1, 0);
    for (int k = 1; k <= rings; ++k) {
        ring_start[static_cast<std::size_t>(k)] = static_cast<int>(m.vertices.size());
        const int nk = 6 * k;
        for (int j = 0; j < nk; ++j) {
            const double th = 2.0 * std::numbers::pi * j / nk;
            m.vertices.push_back({radii[static_cast<std::size_t>(k)] * std::cos(th),
                                  radii[static_cast<std::size_t>(k)] * std::sin(th)});
        }
    }
    m.boundary.assign(m.vertices.size(), 0);
    for (int j = 0; j < 6 * rings; ++j) {
        m.boundary[static_cast<std::size_t>(ring_start[static_cast<std::size_t>(rings)] + j)] = 1;
    }

    // center fan
    for (int j = 0; j < 6; ++j) {
        m.triangles.push_back({0, 1 + j, 1 + (j + 1) % 6});
    }
    // annulus zipper between ring k-1 (n1 vertices) and ring k (n2 vertices):
    // advance whichever ring's next vertex comes first in angle.
    for (int k = 2; k <= rings; ++k) {
        const int n1 = 6 * (k - 1);
        const int n2 = 6 * k;
        const int s1 = ring_start[static_cast<std::size_t>(k - 1)];
        const int s2 = ring_start[static_cast<std::size_t>(k)];
        int i = 0, j = 0;
        while (i < n1 || j < n2) {
            const int vi = s1 + (i % n1);
            const int vj = s2 + (j % n2);
            const bool advance_outer =
                (j < n2) &&
                (i == n1 ||
                 static_cast<long long>(j + 1) * n1 <= static_cast<long long>(i + 1) * n2);
            if (advance_outer) {
                m.triangles.push_back({vi, vj, s2 + ((j + 1) % n2)});
                ++j;
            } else {
                m.triangles.push_back({vj, s1 + ((i + 1) % n1), vi});
                ++i;
            }
        }
    }
    return m;
}

Mesh push_forward(const Mesh& mesh, const MapDescriptor& map) {
    Mesh out = mesh;
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
        const auto w = evaluate(map, {mesh.vertices[v].x, mesh.vertices[v].y});
        out.vertices[v] = {w.real(), w.imag()};
    }
    for (const auto& t : out.triangles) {
        const double area =
            triangle_area(out.vertices[static_cast<std::size_t>(t[0])],
                          out.vertices[static_cast<std::size_t>(t[1])],
                          out.vertices[static_cast<std::size_t>(t[2])]);
        if (!(area > 0.0)) {
            throw MeshError("degenerate image triangle; refine the mesh");
        }
    }
    return out;
}

Mesh mesh_for_map(const MapDescriptor& map, int rings) {
    // Uniform ring spacing for every kind. Radially graded rings flip near
    // epicycloid cusps: the cusp map doubles direction angles, and once the
    // radial spacing drops below the angular spacing the direction spread
    // of a cusp-adjacent triangle exceeds 90 degrees and its image wraps.
    return push_forward(mesh_disc(rings), map);
}

Mesh scaled(const Mesh& mesh, double factor) {
    Mesh out = mesh;
    for (auto& v : out.vertices) {
        v.x *= factor;
        v.y *= factor;
    }
    return out;
}

Mesh rotated(const Mesh& mesh, double angle) {
    Mesh out = mesh;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    for (auto& v : out.vertices) {
        const double x = c * v.x - s * v.y;
        const double y = s * v.x + c * v.y;
        v.x = x;
        v.y = y;
    }
    return out;
}

void write_mesh(std::ostream& os, const Mesh& mesh) {
    os << "vertices " << mesh.vertices.size() << "\n";
    os.precision(17);
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
        os << mesh.vertices[v].x << " " << mesh.vertices[v].y << " "
           << static_cast<int>(mesh.boundary[v]) << "\n";
    }
    os << "triangles " << mesh.triangles.size() << "\n";
    for (const auto& t : mesh.triangles) {
        os << t[0] << " " << t[1] << " " << t[2] << "\n";
    }
}

void write_field(std::ostream& os, const std::vector<double>& field) {
    os.precision(17);
    for (std::size_t i = 0; i < field.size(); ++i) {
        os << i << " " << field[i] << "\n";
    }
}

} // namespace qcspec

