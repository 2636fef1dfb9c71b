#pragma once

#include "qcspec/maps.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace qcspec {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Conforming triangulation with positively oriented triangles and
/// per-vertex boundary flags. Disc topology: V - E + F = 1 counting
/// interior faces only.
struct Mesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::uint8_t> boundary;

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t triangle_count() const { return triangles.size(); }

    /// Sum of signed triangle areas.
    double total_area() const;

    /// Number of distinct undirected edges.
    std::size_t edge_count() const;
};

double triangle_area(const Vec2& a, const Vec2& b, const Vec2& c);

/// Concentric-ring triangulation of the unit disc: ring k at radius k/rings
/// with 6k vertices, fan at the center. With grading < 1 the last
/// `graded_rings` ring spacings shrink geometrically toward the boundary
/// (vertex counts per ring are unchanged).
Mesh mesh_disc(int rings, double grading = 1.0, int graded_rings = 8);

/// Vertices mapped through phi; throws MeshError (suggesting refinement) if
/// any image triangle degenerates or flips.
Mesh push_forward(const Mesh& mesh, const MapDescriptor& map);

/// Map-aware mesh policy. Uniform ring spacing throughout: radial boundary
/// grading flips cusp-adjacent image triangles on epicycloids (the cusp
/// doubles direction angles, so a triangle whose vertex directions from the
/// cusp spread beyond 90 degrees wraps and inverts).
Mesh mesh_for_map(const MapDescriptor& map, int rings);

Mesh scaled(const Mesh& mesh, double factor);
Mesh rotated(const Mesh& mesh, double angle);

/// Plain text export: vertex lines "x y boundary_flag", then triangle
/// index triples.
void write_mesh(std::ostream& os, const Mesh& mesh);

/// Vertex-value table matching the mesh vertex order.
void write_field(std::ostream& os, const std::vector<double>& field);

} // namespace qcspec
