#pragma once

#include "qcspec/maps.hpp"

#include <functional>

namespace qcspec {

/// Polar tensor-product quadrature over the unit disc: Gauss-Legendre in r,
/// uniform (periodic trapezoid) in theta. With boundary_grading < 1 the
/// radial interval is split into a base panel plus `graded_panels` panels
/// whose widths shrink geometrically toward r = 1.
struct QuadratureSpec {
    int radial_nodes = 64;
    int angular_nodes = 256;
    double boundary_grading = 1.0; // in (0, 1]; 1 disables grading
    int graded_panels = 8;

    QuadratureSpec doubled() const {
        QuadratureSpec s = *this;
        s.radial_nodes *= 2;
        s.angular_nodes *= 2;
        return s;
    }
};

using DiscIntegrand = std::function<double(double x, double y)>;

/// Integral of f over the unit disc (area measure). Summation is
/// radial-major with compensated accumulation; results are run-to-run
/// deterministic. Throws EvalError naming the node if f is non-finite there.
double integrate_disc(const DiscIntegrand& f, const QuadratureSpec& spec);

/// Node-doubling refinement: `value` from the doubled spec, `coarse` from
/// the base spec, rel_change their relative difference (the reported error
/// estimate bounds the last increment).
struct RefinementReport {
    double value = 0.0;
    double coarse = 0.0;
    double rel_change = 0.0;
};

RefinementReport integrate_disc_refined(const DiscIntegrand& f,
                                        const QuadratureSpec& spec);

/// (integral of |J(.,phi)|^beta)^(1/beta), beta >= 1.
double jacobian_norm(const MapDescriptor& map, double beta,
                     const QuadratureSpec& spec);

/// Essential supremum of |J|. `analytic` is set when the catalog provides a
/// closed form; otherwise the value is a dense-sampling maximum, a lower
/// estimate of the true sup.
struct SupEstimate {
    double value = 0.0;
    bool analytic = false;
};

SupEstimate jacobian_sup(const MapDescriptor& map, const QuadratureSpec& spec);

/// Dense quasi-random sampling maximum of |J| (always a lower estimate).
double jacobian_sup_sampled(const MapDescriptor& map, std::size_t samples);

/// Image area: integral of |J| over the disc.
double image_area(const MapDescriptor& map, const QuadratureSpec& spec);

} // namespace qcspec
