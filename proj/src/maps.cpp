#include "qcspec/maps.hpp"

#include "qcspec/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qcspec {

namespace {

constexpr double kBoundaryTol = 1e-12;
// Exclusion radius around the rose-petal derivative singularity at z = -1.
constexpr double kPetalSingularRadius = 1e-8;

void validate(const MapDescriptor& m) {
    switch (m.kind) {
        case MapKind::Identity:
        case MapKind::RosePetal:
            return;
        case MapKind::Epicycloid:
            if (!(m.A > m.B) || !(m.B >= 0.0) || m.n < 1) {
                throw ParameterError("epicycloid requires A > B >= 0 and n >= 1");
            }
            return;
        case MapKind::EllipseShear:
            if (!(m.a >= 0.0)) {
                throw ParameterError("ellipse-shear requires a >= 0");
            }
            return;
        case MapKind::LinearShear:
            if (!(m.a > 0.0)) {
                throw ParameterError("linear-shear requires a > 0");
            }
            return;
    }
    throw ParameterError("unknown map kind");
}

void check_in_disc(std::complex<double> z, double slack) {
    if (std::abs(z) > 1.0 + slack) {
        throw DomainError("point outside the closed unit disc");
    }
}

std::complex<double> ipow(std::complex<double> z, int n) {
    std::complex<double> r{1.0, 0.0};
    for (int i = 0; i < n; ++i) r *= z;
    return r;
}

} // namespace

MapDescriptor MapDescriptor::identity() {
    return MapDescriptor{};
}

MapDescriptor MapDescriptor::epicycloid(double A, double B, int n) {
    MapDescriptor m;
    m.kind = MapKind::Epicycloid;
    m.A = A;
    m.B = B;
    m.n = n;
    validate(m);
    return m;
}

MapDescriptor MapDescriptor::ellipse_shear(double a) {
    MapDescriptor m;
    m.kind = MapKind::EllipseShear;
    m.a = a;
    validate(m);
    return m;
}

MapDescriptor MapDescriptor::rose_petal() {
    MapDescriptor m;
    m.kind = MapKind::RosePetal;
    return m;
}

MapDescriptor MapDescriptor::linear_shear(double a, ShearProfile profile,
                                          double amplitude) {
    MapDescriptor m;
    m.kind = MapKind::LinearShear;
    m.a = a;
    m.profile = profile;
    m.amplitude = amplitude;
    validate(m);
    return m;
}

double shear_profile_derivative(const MapDescriptor& map, double y) {
    switch (map.profile) {
        case ShearProfile::Sine:
            return map.amplitude * std::cos(y);
        case ShearProfile::Quadratic:
            return 2.0 * map.amplitude * y;
    }
    throw ParameterError("unknown shear profile");
}

namespace {

double shear_profile_value(const MapDescriptor& map, double y) {
    switch (map.profile) {
        case ShearProfile::Sine:
            return map.amplitude * std::sin(y);
        case ShearProfile::Quadratic:
            return map.amplitude * y * y;
    }
    throw ParameterError("unknown shear profile");
}

// sup of |f'| over y in [-1, 1], analytic per profile.
double shear_profile_derivative_sup(const MapDescriptor& map) {
    switch (map.profile) {
        case ShearProfile::Sine:
            return std::abs(map.amplitude); // attained at y = 0
        case ShearProfile::Quadratic:
            return 2.0 * std::abs(map.amplitude); // approached at y -> +-1
    }
    throw ParameterError("unknown shear profile");
}

} // namespace

std::complex<double> evaluate(const MapDescriptor& map, std::complex<double> z) {
    validate(map);
    check_in_disc(z, kBoundaryTol);
    switch (map.kind) {
        case MapKind::Identity:
            return z;
        case MapKind::Epicycloid: {
            const std::complex<double> zn = ipow(z, map.n);
            const std::complex<double> zb = std::conj(z);
            const std::complex<double> zbn = std::conj(zn);
            return map.A * (z + zn / static_cast<double>(map.n)) +
                   map.B * (zb + zbn / static_cast<double>(map.n));
        }
        case MapKind::EllipseShear:
            return std::sqrt(map.a * map.a + 1.0) * z + map.a * std::conj(z);
        case MapKind::RosePetal: {
            // Principal branches; 1+z has positive real part on the open
            // disc, so the cut is never crossed.
            const std::complex<double> w = 1.0 + z;
            return std::numbers::sqrt2 * std::pow(w, 0.75) *
                   std::pow(std::conj(w), 0.25);
        }
        case MapKind::LinearShear: {
            const double x = z.real();
            const double y = z.imag();
            return {map.a * x + shear_profile_value(map, y), y / map.a};
        }
    }
    throw ParameterError("unknown map kind");
}

Wirtinger wirtinger(const MapDescriptor& map, std::complex<double> z) {
    validate(map);
    check_in_disc(z, kBoundaryTol);
    switch (map.kind) {
        case MapKind::Identity:
            return {{1.0, 0.0}, {0.0, 0.0}};
        case MapKind::Epicycloid: {
            const std::complex<double> zn1 = ipow(z, map.n - 1);
            return {map.A * (1.0 + zn1), map.B * std::conj(1.0 + zn1)};
        }
        case MapKind::EllipseShear:
            return {{std::sqrt(map.a * map.a + 1.0), 0.0}, {map.a, 0.0}};
        case MapKind::RosePetal: {
            const std::complex<double> w = 1.0 + z;
            if (std::abs(w) < kPetalSingularRadius) {
                throw SingularityError(
                    "rose-petal derivatives are unbounded at z = -1");
            }
            const std::complex<double> wb = std::conj(w);
            const std::complex<double> dz =
                std::numbers::sqrt2 * 0.75 * std::pow(w, -0.25) * std::pow(wb, 0.25);
            const std::complex<double> dzbar =
                std::numbers::sqrt2 * 0.25 * std::pow(w, 0.75) * std::pow(wb, -0.75);
            return {dz, dzbar};
        }
        case MapKind::LinearShear: {
            const double fp = shear_profile_derivative(map, z.imag());
            const double s = 0.5 * (map.a + 1.0 / map.a);
            const double d = 0.5 * (map.a - 1.0 / map.a);
            return {{s, -0.5 * fp}, {d, 0.5 * fp}};
        }
    }
    throw ParameterError("unknown map kind");
}

double jacobian(const MapDescriptor& map, std::complex<double> z) {
    if (map.kind == MapKind::RosePetal &&
        std::abs(1.0 + z) < kPetalSingularRadius) {
        // The petal Jacobian is identically 1; extend by that value where
        // the individual derivatives blow up.
        return 1.0;
    }
    const Wirtinger d = wirtinger(map, z);
    return std::norm(d.dz) - std::norm(d.dzbar);
}

double local_distortion(const MapDescriptor& map, std::complex<double> z) {
    const Wirtinger d = wirtinger(map, z);
    const double lo = std::abs(d.dz);
    const double hi = std::abs(d.dzbar);
    if (!(lo > hi)) {
        throw OrientationError("orientation not preserved: |phi_z| <= |phi_zbar|");
    }
    return (lo + hi) / (lo - hi);
}

double shear_lambda(double fprime) {
    const double t = 2.0 + fprime * fprime;
    return (1.0 + 0.5 * fprime * fprime) *
           (1.0 + std::sqrt(1.0 - 4.0 / (t * t)));
}

double shear_lambda_general(double a, double fprime) {
    if (!(a > 0.0)) {
        throw ParameterError("shear_lambda_general requires a > 0");
    }
    // trace of D D^T; det D D^T = 1.
    const double t = a * a + 1.0 / (a * a) + fprime * fprime;
    return 0.5 * (t + std::sqrt(t * t - 4.0));
}

MapInfo map_info(const MapDescriptor& map) {
    validate(map);
    MapInfo info;
    switch (map.kind) {
        case MapKind::Identity:
            info.distortion = 1.0;
            info.area = std::numbers::pi;
            info.measure_preserving = true;
            return info;
        case MapKind::Epicycloid:
            info.distortion = (map.A + map.B) / (map.A - map.B);
            info.area = (map.A * map.A - map.B * map.B) *
                        (map.n + 1.0) / map.n * std::numbers::pi;
            info.measure_preserving = false; // analytic flag, not empirical
            return info;
        case MapKind::EllipseShear: {
            const double s = std::sqrt(map.a * map.a + 1.0);
            info.distortion = (s + map.a) / (s - map.a);
            info.area = std::numbers::pi;
            info.measure_preserving = true;
            return info;
        }
        case MapKind::RosePetal:
            info.distortion = 2.0;
            info.area = std::numbers::pi;
            info.measure_preserving = true;
            return info;
        case MapKind::LinearShear: {
            const double fmax = shear_profile_derivative_sup(map);
            info.distortion = shear_lambda_general(map.a, fmax);
            info.area = std::numbers::pi;
            info.measure_preserving = true;
            info.distortion_is_profile_sup = true;
            return info;
        }
    }
    throw ParameterError("unknown map kind");
}

const char* map_kind_name(MapKind kind) {
    switch (kind) {
        case MapKind::Identity: return "identity";
        case MapKind::Epicycloid: return "epicycloid";
        case MapKind::EllipseShear: return "ellipse-shear";
        case MapKind::RosePetal: return "rose-petal";
        case MapKind::LinearShear: return "linear-shear";
    }
    return "unknown";
}

std::string format_map(const MapDescriptor& map) {
    std::ostringstream os;
    os.precision(17);
    switch (map.kind) {
        case MapKind::Identity:
            return "identity";
        case MapKind::Epicycloid:
            os << "epicycloid(A=" << map.A << ",B=" << map.B << ",n=" << map.n
               << ")";
            return os.str();
        case MapKind::EllipseShear:
            os << "ellipse-shear(a=" << map.a << ")";
            return os.str();
        case MapKind::RosePetal:
            return "rose-petal";
        case MapKind::LinearShear:
            os << "linear-shear(a=" << map.a << ",profile="
               << (map.profile == ShearProfile::Sine ? "sine" : "quadratic")
               << ",amplitude=" << map.amplitude << ")";
            return os.str();
    }
    throw ParameterError("unknown map kind");
}

namespace {

// key=value parser for the parenthesized parameter list.
void parse_params(const std::string& body, MapDescriptor& m) {
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw ParameterError("malformed map parameter: " + item);
        }
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        if (key == "A") m.A = std::stod(val);
        else if (key == "B") m.B = std::stod(val);
        else if (key == "n") m.n = std::stoi(val);
        else if (key == "a") m.a = std::stod(val);
        else if (key == "amplitude") m.amplitude = std::stod(val);
        else if (key == "profile") {
            if (val == "sine") m.profile = ShearProfile::Sine;
            else if (val == "quadratic" || val == "poly") m.profile = ShearProfile::Quadratic;
            else throw ParameterError("unknown shear profile: " + val);
        } else {
            throw ParameterError("unknown map parameter: " + key);
        }
    }
}

} // namespace

MapDescriptor parse_map(const std::string& text) {
    std::string kind = text;
    std::string body;
    const auto open = text.find('(');
    if (open != std::string::npos) {
        if (text.back() != ')') {
            throw ParameterError("malformed map descriptor: " + text);
        }
        kind = text.substr(0, open);
        body = text.substr(open + 1, text.size() - open - 2);
    }
    MapDescriptor m;
    if (kind == "identity") m.kind = MapKind::Identity;
    else if (kind == "epicycloid") m.kind = MapKind::Epicycloid;
    else if (kind == "ellipse-shear") m.kind = MapKind::EllipseShear;
    else if (kind == "rose-petal") m.kind = MapKind::RosePetal;
    else if (kind == "linear-shear") m.kind = MapKind::LinearShear;
    else throw ParameterError("unknown map kind: " + kind);
    if (m.kind == MapKind::LinearShear) m.a = 1.0; // default shear scale
    parse_params(body, m);
    validate(m);
    return m;
}

} // namespace qcspec
