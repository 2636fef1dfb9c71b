#pragma once

#include "qcspec/bounds.hpp"
#include "qcspec/eigensolver.hpp"
#include "qcspec/logvalue.hpp"
#include "qcspec/maps.hpp"
#include "qcspec/quadrature.hpp"

#include <optional>

namespace qcspec {

/// Which theoretical lower bound the numerical eigenvalue is checked
/// against. Auto picks the measure-preserving form when the map has unit
/// Jacobian and the inf-regular form otherwise.
enum class VerifyVariant {
    Auto,
    BetaRegular,
    InfRegular,
    MeasurePreservingBeta,
    MeasurePreservingInf,
    IntroForm,
    Quasidisc,
    Convex,
};

const char* verify_variant_name(VerifyVariant v);
VerifyVariant parse_verify_variant(const std::string& name);

struct VerifyOptions {
    VerifyVariant variant = VerifyVariant::Auto;
    std::optional<double> beta; // required by the beta-indexed variants
    int rings = 64;
    SolveOptions solve;
    QuadratureSpec quad;
};

struct VerifyReport {
    MapDescriptor map;
    double K = 1.0;
    double p = 0.0;
    VerifyVariant variant = VerifyVariant::Auto;

    LogValue mu_lower_log;                // always set
    std::optional<double> mu_lower;       // when representable as a double
    double area = 0.0;

    EigenResult eigen;
    double mu_numeric = 0.0;

    double slack_log = 0.0; // ln(mu_numeric) - ln(mu_lower)

    enum class Status { Pass, Fail, Inconclusive };
    Status status = Status::Inconclusive;
};

/// Pass iff the solver converged and mu_numeric >= mu_lower * 0.98
/// (2% discretization allowance). A converged local minimum can only
/// overestimate mu, so failures are meaningful.
VerifyReport verify_bound(const MapDescriptor& map, double p,
                          const VerifyOptions& opts = VerifyOptions{});

/// Theoretical side only (no eigensolve); used by the CLI `bound` paths and
/// by verify_bound itself.
struct TheoreticalBound {
    LogValue mu_lower_log;
    std::optional<double> mu_lower;
    double area = 0.0;
    double K = 1.0;
    VerifyVariant variant = VerifyVariant::Auto;
};

TheoreticalBound theoretical_lower_bound(const MapDescriptor& map, double p,
                                         const VerifyOptions& opts);

} // namespace qcspec
