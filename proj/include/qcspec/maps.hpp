#pragma once

#include <complex>
#include <optional>
#include <string>

namespace qcspec {

/// Quasiconformal mappings of the unit disc with closed-form evaluation,
/// Wirtinger derivatives and distortion data.
///
/// Catalog:
///   identity       z
///   epicycloid     A(z + z^n/n) + B(conj(z) + conj(z)^n/n),  A > B >= 0
///   ellipse-shear  sqrt(a^2+1) z + a conj(z),                a >= 0
///   rose-petal     sqrt(2) (1+z)^{3/4} (1+conj(z))^{1/4}
///   linear-shear   (x,y) -> (a x + f(y), y/a),               a > 0
enum class MapKind {
    Identity,
    Epicycloid,
    EllipseShear,
    RosePetal,
    LinearShear,
};

/// Closed-form shear profiles; f' is evaluated analytically so the global
/// distortion coefficient stays computable.
enum class ShearProfile {
    Sine,      // f(y) = amplitude * sin(y)
    Quadratic, // f(y) = amplitude * y^2
};

struct MapDescriptor {
    MapKind kind = MapKind::Identity;

    // epicycloid
    double A = 0.0;
    double B = 0.0;
    int n = 0;

    // ellipse-shear / linear-shear
    double a = 0.0;

    // linear-shear profile
    ShearProfile profile = ShearProfile::Sine;
    double amplitude = 0.0;

    static MapDescriptor identity();
    static MapDescriptor epicycloid(double A, double B, int n);
    static MapDescriptor ellipse_shear(double a);
    static MapDescriptor rose_petal();
    static MapDescriptor linear_shear(double a, ShearProfile profile,
                                      double amplitude);
};

struct Wirtinger {
    std::complex<double> dz;    // phi_z
    std::complex<double> dzbar; // phi_zbar
};

/// Analytic constants of a catalog map. `distortion_is_profile_sup` marks
/// linear-shear, whose coefficient is the supremum of the pointwise
/// distortion over the profile's derivative range rather than a closed-form
/// catalog constant.
struct MapInfo {
    double distortion = 1.0; // quasiconformality coefficient K
    std::optional<double> area;
    bool measure_preserving = false;
    bool distortion_is_profile_sup = false;
};

/// phi(z) for z in the closed unit disc.
std::complex<double> evaluate(const MapDescriptor& map, std::complex<double> z);

/// (phi_z, phi_zbar) at an interior point. Rose-petal derivatives are
/// unbounded at z = -1; points within 1e-8 of it raise SingularityError.
Wirtinger wirtinger(const MapDescriptor& map, std::complex<double> z);

/// J(z, phi) = |phi_z|^2 - |phi_zbar|^2. The rose-petal Jacobian is
/// constant 1 and is extended by that value at z = -1.
double jacobian(const MapDescriptor& map, std::complex<double> z);

/// (|phi_z| + |phi_zbar|) / (|phi_z| - |phi_zbar|) >= 1.
double local_distortion(const MapDescriptor& map, std::complex<double> z);

/// Largest eigenvalue of D D^T for the basic shear (x,y) -> (x + f(y), y):
/// (1 + f'^2/2)(1 + sqrt(1 - 4/(2+f'^2)^2)). Equals the local distortion
/// coefficient of the shear since its Jacobian is 1.
double shear_lambda(double fprime);

/// General-a shear distortion: largest eigenvalue of D D^T for
/// (x,y) -> (a x + f(y), y/a), again equal to the local distortion.
double shear_lambda_general(double a, double fprime);

/// Derivative f'(y) of a linear-shear profile.
double shear_profile_derivative(const MapDescriptor& map, double y);

MapInfo map_info(const MapDescriptor& map);

/// Canonical one-line text form, e.g. "epicycloid(A=2,B=1,n=3)".
std::string format_map(const MapDescriptor& map);

/// Parses the format produced by format_map. Throws ParameterError on
/// unknown kinds or invalid parameters.
MapDescriptor parse_map(const std::string& text);

const char* map_kind_name(MapKind kind);

} // namespace qcspec
