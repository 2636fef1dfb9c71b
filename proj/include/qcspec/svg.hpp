#pragma once

#include "qcspec/eigensolver.hpp"
#include "qcspec/maps.hpp"
#include "qcspec/mesh.hpp"

#include <complex>
#include <iosfwd>
#include <vector>

namespace qcspec {

/// Image of the unit circle under phi, sampled at n equally spaced angles
/// (closed polyline; the first point is not repeated).
std::vector<std::complex<double>> boundary_polyline(const MapDescriptor& map,
                                                    int samples);

/// Count of cusp-like vertices: samples where the polyline's turning angle
/// exceeds the threshold (radians).
int count_cusps(const std::vector<std::complex<double>>& polyline,
                double threshold = 1.0);

/// Standalone SVG of the domain boundary. Byte-deterministic for fixed
/// inputs (fixed formatting, no timestamps).
void emit_boundary_svg(std::ostream& os, const MapDescriptor& map,
                       int samples = 720);

/// Boundary plus eigenfunction rendered as 11 filled level bands (each
/// triangle filled by the band of its mean value).
void emit_field_svg(std::ostream& os, const Mesh& mesh, const ScalarField& u,
                    const MapDescriptor& map);

} // namespace qcspec
