#include "qcspec/verify.hpp"

#include "qcspec/errors.hpp"
#include "qcspec/quasidisc.hpp"

#include <cmath>
#include <string>

namespace qcspec {

const char* verify_variant_name(VerifyVariant v) {
    switch (v) {
        case VerifyVariant::Auto: return "auto";
        case VerifyVariant::BetaRegular: return "beta-regular";
        case VerifyVariant::InfRegular: return "inf-regular";
        case VerifyVariant::MeasurePreservingBeta: return "measure-preserving-beta";
        case VerifyVariant::MeasurePreservingInf: return "measure-preserving-inf";
        case VerifyVariant::IntroForm: return "intro-form";
        case VerifyVariant::Quasidisc: return "quasidisc";
        case VerifyVariant::Convex: return "convex";
    }
    return "unknown";
}

VerifyVariant parse_verify_variant(const std::string& name) {
    if (name == "auto") return VerifyVariant::Auto;
    if (name == "beta-regular") return VerifyVariant::BetaRegular;
    if (name == "inf-regular") return VerifyVariant::InfRegular;
    if (name == "measure-preserving-beta") return VerifyVariant::MeasurePreservingBeta;
    if (name == "measure-preserving-inf") return VerifyVariant::MeasurePreservingInf;
    if (name == "intro-form") return VerifyVariant::IntroForm;
    if (name == "quasidisc") return VerifyVariant::Quasidisc;
    if (name == "convex") return VerifyVariant::Convex;
    throw ParameterError("unknown verify variant: " + name);
}

namespace {

double convex_diameter(const MapDescriptor& map) {
    switch (map.kind) {
        case MapKind::Identity:
            return 2.0;
        case MapKind::EllipseShear:
            // major semi-axis sqrt(a^2+1) + a
            return 2.0 * (std::sqrt(map.a * map.a + 1.0) + map.a);
        default:
            throw ParameterError(
                "convex variant supported only for identity and ellipse-shear");
    }
}

} // namespace

TheoreticalBound theoretical_lower_bound(const MapDescriptor& map, double p,
                                         const VerifyOptions& opts) {
    const MapInfo info = map_info(map);
    TheoreticalBound out;
    out.K = info.distortion;
    out.area = info.area ? *info.area : image_area(map, opts.quad);

    VerifyVariant variant = opts.variant;
    if (variant == VerifyVariant::Auto) {
        variant = info.measure_preserving ? VerifyVariant::MeasurePreservingInf
                                          : VerifyVariant::InfRegular;
    }
    out.variant = variant;

    const auto require_beta = [&]() -> double {
        if (!opts.beta || !(*opts.beta > 1.0)) {
            throw ParameterError("variant requires --beta > 1");
        }
        return *opts.beta;
    };
    const auto require_mp = [&]() {
        if (!info.measure_preserving) {
            throw ParameterError(
                "measure-preserving variant on a non-measure-preserving map");
        }
    };

    BoundReport rep;
    switch (variant) {
        case VerifyVariant::BetaRegular: {
            const double beta = require_beta();
            rep = bound_beta_regular(p, beta, out.K, out.area,
                                     jacobian_norm(map, beta, opts.quad));
            break;
        }
        case VerifyVariant::InfRegular:
            rep = bound_inf_regular(p, out.K, out.area,
                                    jacobian_sup(map, opts.quad).value);
            break;
        case VerifyVariant::MeasurePreservingBeta:
            require_mp();
            rep = bound_measure_preserving(p, BetaParam::finite(require_beta()),
                                           out.K);
            break;
        case VerifyVariant::MeasurePreservingInf:
            require_mp();
            rep = bound_measure_preserving(p, BetaParam::infinite(), out.K);
            break;
        case VerifyVariant::IntroForm:
            require_mp();
            rep = bound_intro_form(p,
                                   opts.beta ? BetaParam::finite(require_beta())
                                             : BetaParam::infinite(),
                                   out.K);
            break;
        case VerifyVariant::Quasidisc: {
            const QuasidiscBound qb = quasidisc_lower_bound(out.K, p, out.area);
            out.mu_lower_log = qb.mu_lower;
            const double plain = qb.mu_lower.to_double();
            if (plain > 0.0 && std::isfinite(plain)) {
                out.mu_lower = plain;
            }
            return out;
        }
        case VerifyVariant::Convex: {
            const double mu = convex_lower_bound(p, convex_diameter(map));
            out.mu_lower = mu;
            out.mu_lower_log = LogValue::from_double(mu);
            return out;
        }
        case VerifyVariant::Auto:
            throw ParameterError("unresolved auto variant");
    }
    out.mu_lower = rep.mu_lower;
    out.mu_lower_log = LogValue::from_double(rep.mu_lower);
    return out;
}

VerifyReport verify_bound(const MapDescriptor& map, double p,
                          const VerifyOptions& opts) {
    VerifyReport rep;
    rep.map = map;
    rep.p = p;

    const TheoreticalBound tb = theoretical_lower_bound(map, p, opts);
    rep.K = tb.K;
    rep.variant = tb.variant;
    rep.mu_lower_log = tb.mu_lower_log;
    rep.mu_lower = tb.mu_lower;
    rep.area = tb.area;

    rep.eigen = solve_mapped_eigen(map, p, opts.rings, opts.solve);
    rep.mu_numeric = rep.eigen.mu;

    rep.slack_log = std::log(rep.mu_numeric) - rep.mu_lower_log.ln_mag;
    if (!rep.eigen.converged) {
        rep.status = VerifyReport::Status::Inconclusive;
        return rep;
    }
    // pass iff mu_numeric >= mu_lower * 0.98 (log-space comparison so the
    // quasidisc variant works with its astronomically small bound)
    const double margin = std::log(0.98);
    rep.status = (std::log(rep.mu_numeric) >= rep.mu_lower_log.ln_mag + margin)
                     ? VerifyReport::Status::Pass
                     : VerifyReport::Status::Fail;
    return rep;
}

} // namespace qcspec
