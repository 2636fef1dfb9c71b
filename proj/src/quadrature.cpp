#include "qcspec/quadrature.hpp"

#include "qcspec/errors.hpp"
#include "qcspec/util.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qcspec {

namespace {

void validate(const QuadratureSpec& spec) {
    if (spec.radial_nodes < 4) {
        throw ParameterError("quadrature: radial_nodes must be >= 4");
    }
    if (spec.angular_nodes < 8) {
        throw ParameterError("quadrature: angular_nodes must be >= 8");
    }
    if (!(spec.boundary_grading > 0.0) || spec.boundary_grading > 1.0) {
        throw ParameterError("quadrature: boundary_grading must be in (0, 1]");
    }
    if (spec.graded_panels < 1) {
        throw ParameterError("quadrature: graded_panels must be >= 1");
    }
}

// Radial panel breakpoints. Ungraded: single panel [0, 1]. Graded: a base
// panel [0, 0.5] plus panels over [0.5, 1] with geometrically shrinking
// widths toward r = 1.
std::vector<double> radial_breaks(const QuadratureSpec& spec) {
    if (spec.boundary_grading >= 1.0) {
        return {0.0, 1.0};
    }
    const double g = spec.boundary_grading;
    const int L = spec.graded_panels;
    std::vector<double> breaks{0.0, 0.5};
    double scale = (1.0 - std::pow(g, L)) / (1.0 - g);
    double r = 0.5;
    for (int j = 0; j < L - 1; ++j) {
        r += 0.5 * std::pow(g, j) / scale;
        breaks.push_back(r);
    }
    breaks.push_back(1.0);
    return breaks;
}

struct RadialRule {
    std::vector<double> nodes;
    std::vector<double> weights; // includes the polar factor r
};

RadialRule radial_rule(const QuadratureSpec& spec) {
    const std::vector<double> breaks = radial_breaks(spec);
    const int panels = static_cast<int>(breaks.size()) - 1;
    const int per_panel = std::max(4, spec.radial_nodes / panels);
    const GaussLegendre gl = gauss_legendre(per_panel);
    RadialRule rule;
    for (int pnl = 0; pnl < panels; ++pnl) {
        const double lo = breaks[static_cast<std::size_t>(pnl)];
        const double hi = breaks[static_cast<std::size_t>(pnl) + 1];
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        for (int i = 0; i < per_panel; ++i) {
            const double r = mid + half * gl.nodes[static_cast<std::size_t>(i)];
            rule.nodes.push_back(r);
            rule.weights.push_back(half * gl.weights[static_cast<std::size_t>(i)] * r);
        }
    }
    return rule;
}

} // namespace

double integrate_disc(const DiscIntegrand& f, const QuadratureSpec& spec) {
    validate(spec);
    const RadialRule rad = radial_rule(spec);
    const int m = spec.angular_nodes;
    const double dtheta = 2.0 * std::numbers::pi / m;

    NeumaierSum total;
    for (std::size_t i = 0; i < rad.nodes.size(); ++i) {
        const double r = rad.nodes[i];
        NeumaierSum ring;
        for (int j = 0; j < m; ++j) {
            const double th = dtheta * j;
            const double x = r * std::cos(th);
            const double y = r * std::sin(th);
            const double v = f(x, y);
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "non-finite integrand at node r=" << r << " theta=" << th;
                throw EvalError(os.str());
            }
            ring.add(v);
        }
        total.add(rad.weights[i] * dtheta * ring.value());
    }
    return total.value();
}

RefinementReport integrate_disc_refined(const DiscIntegrand& f,
                                        const QuadratureSpec& spec) {
    RefinementReport rep;
    rep.coarse = integrate_disc(f, spec);
    rep.value = integrate_disc(f, spec.doubled());
    const double denom = std::max(std::abs(rep.value), 1e-300);
    rep.rel_change = std::abs(rep.value - rep.coarse) / denom;
    return rep;
}

double jacobian_norm(const MapDescriptor& map, double beta,
                     const QuadratureSpec& spec) {
    if (!(beta >= 1.0)) {
        throw ParameterError("jacobian_norm: beta must be >= 1");
    }
    if (beta == 1.0) {
        return image_area(map, spec); // same quadrature values, bit for bit
    }
    const double integral = integrate_disc(
        [&](double x, double y) {
            const double j = jacobian(map, {x, y});
            return std::pow(std::abs(j), beta);
        },
        spec);
    return std::pow(integral, 1.0 / beta);
}

SupEstimate jacobian_sup(const MapDescriptor& map, const QuadratureSpec& spec) {
    const MapInfo info = map_info(map);
    if (info.measure_preserving) {
        return {1.0, true};
    }
    if (map.kind == MapKind::Epicycloid) {
        // sup of (A^2-B^2)|1+z^{n-1}|^2, approached as z^{n-1} -> 1.
        return {4.0 * (map.A * map.A - map.B * map.B), true};
    }
    (void)spec;
    return {jacobian_sup_sampled(map, 200000), false};
}

double jacobian_sup_sampled(const MapDescriptor& map, std::size_t samples) {
    double best = 0.0;
    for (const auto& z : disc_quasi_random(samples, 1.0 - 1e-9)) {
        best = std::max(best, std::abs(jacobian(map, z)));
    }
    return best;
}

double image_area(const MapDescriptor& map, const QuadratureSpec& spec) {
    return integrate_disc(
        [&](double x, double y) { return std::abs(jacobian(map, {x, y})); },
        spec);
}

} // namespace qcspec
