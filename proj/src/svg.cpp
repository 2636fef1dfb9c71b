#include "qcspec/svg.hpp"

#include "qcspec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace qcspec {

std::vector<std::complex<double>> boundary_polyline(const MapDescriptor& map,
                                                    int samples) {
    if (samples < 3) {
        throw ParameterError("boundary_polyline requires samples >= 3");
    }
    std::vector<std::complex<double>> pts;
    pts.reserve(static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j) {
        const double th = 2.0 * std::numbers::pi * j / samples;
        pts.push_back(evaluate(map, std::polar(1.0, th)));
    }
    return pts;
}

int count_cusps(const std::vector<std::complex<double>>& polyline,
                double threshold) {
    const std::size_t n = polyline.size();
    int count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& prev = polyline[(i + n - 1) % n];
        const auto& cur = polyline[i];
        const auto& next = polyline[(i + 1) % n];
        const std::complex<double> e1 = cur - prev;
        const std::complex<double> e2 = next - cur;
        if (std::abs(e1) == 0.0 || std::abs(e2) == 0.0) {
            ++count;
            continue;
        }
        const double turn = std::arg(e2 / e1);
        if (std::abs(turn) > threshold) {
            ++count;
        }
    }
    return count;
}

namespace {

struct Frame {
    double min_x, min_y, scale; // world -> 640x640 viewport with margin
};

Frame fit_frame(double min_x, double max_x, double min_y, double max_y) {
    const double span = std::max(max_x - min_x, max_y - min_y);
    const double scale = (span > 0.0) ? 600.0 / span : 1.0;
    return {min_x - 0.5 * (span - (max_x - min_x)),
            min_y - 0.5 * (span - (max_y - min_y)), scale};
}

void fmt_point(std::ostream& os, const Frame& f, double x, double y) {
    char buf[64];
    // y axis flipped for SVG
    std::snprintf(buf, sizeof buf, "%.6f,%.6f", 20.0 + (x - f.min_x) * f.scale,
                  620.0 - (y - f.min_y) * f.scale);
    os << buf;
}

const char* kBandColors[11] = {
    "#30123b", "#4458cb", "#3e9bfe", "#18d5cc", "#46f884", "#a2fc3c",
    "#e1dd37", "#fea331", "#ef5a11", "#c22402", "#7a0402",
};

} // namespace

void emit_boundary_svg(std::ostream& os, const MapDescriptor& map,
                       int samples) {
    const auto pts = boundary_polyline(map, samples);
    double min_x = pts[0].real(), max_x = pts[0].real();
    double min_y = pts[0].imag(), max_y = pts[0].imag();
    for (const auto& p : pts) {
        min_x = std::min(min_x, p.real());
        max_x = std::max(max_x, p.real());
        min_y = std::min(min_y, p.imag());
        max_y = std::max(max_y, p.imag());
    }
    const Frame f = fit_frame(min_x, max_x, min_y, max_y);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
          "height=\"640\" viewBox=\"0 0 640 640\">\n";
    os << "<title>" << format_map(map) << "</title>\n";
    os << "<polygon fill=\"none\" stroke=\"#1f3552\" stroke-width=\"1.5\" "
          "points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) os << ' ';
        fmt_point(os, f, pts[i].real(), pts[i].imag());
    }
    os << "\"/>\n</svg>\n";
}

void emit_field_svg(std::ostream& os, const Mesh& mesh, const ScalarField& u,
                    const MapDescriptor& map) {
    if (u.size() != mesh.vertices.size()) {
        throw ParameterError("field length does not match vertex count");
    }
    double min_x = mesh.vertices[0].x, max_x = min_x;
    double min_y = mesh.vertices[0].y, max_y = min_y;
    for (const auto& v : mesh.vertices) {
        min_x = std::min(min_x, v.x);
        max_x = std::max(max_x, v.x);
        min_y = std::min(min_y, v.y);
        max_y = std::max(max_y, v.y);
    }
    const Frame f = fit_frame(min_x, max_x, min_y, max_y);
    const auto [umin_it, umax_it] = std::minmax_element(u.begin(), u.end());
    const double umin = *umin_it;
    const double span = std::max(*umax_it - umin, 1e-300);

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
          "height=\"640\" viewBox=\"0 0 640 640\">\n";
    os << "<title>" << format_map(map) << "</title>\n";
    for (const auto& t : mesh.triangles) {
        const double mean = (u[static_cast<std::size_t>(t[0])] +
                             u[static_cast<std::size_t>(t[1])] +
                             u[static_cast<std::size_t>(t[2])]) /
                            3.0;
        int band = static_cast<int>(std::floor((mean - umin) / span * 11.0));
        band = std::clamp(band, 0, 10);
        os << "<polygon fill=\"" << kBandColors[band] << "\" stroke=\"none\" "
              "points=\"";
        for (int v = 0; v < 3; ++v) {
            if (v) os << ' ';
            const auto& p =
                mesh.vertices[static_cast<std::size_t>(t[static_cast<std::size_t>(v)])];
            fmt_point(os, f, p.x, p.y);
        }
        os << "\"/>\n";
    }
    const auto pts = boundary_polyline(map, 720);
    os << "<polygon fill=\"none\" stroke=\"#1f3552\" stroke-width=\"1.5\" "
          "points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) os << ' ';
        fmt_point(os, f, pts[i].real(), pts[i].imag());
    }
    os << "\"/>\n</svg>\n";
}

} // namespace qcspec
