#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace qcspec {

/// Signed magnitude stored as a natural log. The quasidisc constants mix
/// 10^6-scale prefactors with exp(-thousands) attenuations, so plain doubles
/// under/overflow; everything in that chain is carried as a LogValue.
struct LogValue {
    double ln_mag = -std::numeric_limits<double>::infinity();
    int sign = 0; // -1, 0, +1

    static LogValue zero() { return LogValue{}; }

    static LogValue from_double(double x) {
        LogValue v;
        if (x > 0.0) {
            v.sign = 1;
            v.ln_mag = std::log(x);
        } else if (x < 0.0) {
            v.sign = -1;
            v.ln_mag = std::log(-x);
        }
        return v;
    }

    static LogValue from_ln(double ln_mag, int sign = 1) {
        LogValue v;
        v.sign = sign;
        v.ln_mag = (sign == 0) ? -std::numeric_limits<double>::infinity() : ln_mag;
        return v;
    }

    /// May overflow to +-inf or underflow to +-0 outside double range.
    double to_double() const {
        if (sign == 0) return 0.0;
        return sign * std::exp(ln_mag);
    }

    bool is_zero() const { return sign == 0; }

    LogValue operator*(const LogValue& o) const {
        if (sign == 0 || o.sign == 0) return zero();
        return from_ln(ln_mag + o.ln_mag, sign * o.sign);
    }

    LogValue operator/(const LogValue& o) const {
        if (o.sign == 0) return from_ln(std::numeric_limits<double>::infinity(), sign);
        if (sign == 0) return zero();
        return from_ln(ln_mag - o.ln_mag, sign * o.sign);
    }

    LogValue operator-() const { return from_ln(ln_mag, -sign); }

    /// x^e for positive x; exponent scales the log.
    LogValue pow(double e) const {
        if (sign == 0) return (e == 0.0) ? from_ln(0.0, 1) : zero();
        return from_ln(ln_mag * e, sign); // negative base with fractional e unsupported
    }

    bool operator<(const LogValue& o) const {
        if (sign != o.sign) return sign < o.sign;
        if (sign == 0) return false;
        return (sign > 0) ? ln_mag < o.ln_mag : ln_mag > o.ln_mag;
    }
    bool operator>(const LogValue& o) const { return o < *this; }
};

/// ln(1 - e^x) for x < 0, accurate at both ends: expm1 when e^x is near 1,
/// log1p when e^x is near 0.
inline double log1m_exp(double x) {
    if (x >= 0.0) return std::numeric_limits<double>::quiet_NaN();
    if (x > -0.6931471805599453) { // x > -ln 2
        return std::log(-std::expm1(x));
    }
    return std::log1p(-std::exp(x));
}

/// Decimal rendering used by the CLI: plain decimal when the value fits a
/// double, otherwise empty.
inline std::string decimal_if_representable(const LogValue& v) {
    if (v.sign == 0) return "0";
    if (std::abs(v.ln_mag) >= 700.0) return {};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v.to_double());
    return buf;
}

} // namespace qcspec
