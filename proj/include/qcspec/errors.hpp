#pragma once

#include <stdexcept>
#include <string>

namespace qcspec {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid parameter value (out of the documented range).
struct ParameterError : Error {
    using Error::Error;
};

/// Point outside the domain of validity of an operation.
struct DomainError : Error {
    using Error::Error;
};

/// Evaluation at a singular point of a map derivative.
struct SingularityError : Error {
    using Error::Error;
};

/// Local orientation not preserved (|phi_z| <= |phi_zbar|).
struct OrientationError : Error {
    using Error::Error;
};

/// Non-finite integrand or other evaluation failure at a quadrature node.
struct EvalError : Error {
    using Error::Error;
};

/// Degenerate or inconsistent mesh.
struct MeshError : Error {
    using Error::Error;
};

/// Constant or zero field where a non-degenerate one is required.
struct DegenerateFieldError : Error {
    using Error::Error;
};

} // namespace qcspec
