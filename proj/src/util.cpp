#include "qcspec/util.hpp"

#include "qcspec/errors.hpp"

#include <algorithm>
#include <numbers>

namespace qcspec {

GaussLegendre gauss_legendre(int n) {
    if (n < 1) {
        throw ParameterError("gauss_legendre: n must be >= 1");
    }
    GaussLegendre gl;
    gl.nodes.resize(static_cast<std::size_t>(n));
    gl.weights.resize(static_cast<std::size_t>(n));
    // Newton iteration from the Chebyshev-like initial guess; nodes come out
    // symmetric, we compute the lower half and mirror.
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                break;
            }
        }
        gl.nodes[static_cast<std::size_t>(i)] = -x;
        gl.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        gl.weights[static_cast<std::size_t>(i)] = w;
        gl.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return gl;
}

double halton(std::uint64_t index, std::uint32_t base) {
    double f = 1.0;
    double r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

std::vector<std::complex<double>> disc_quasi_random(std::size_t count,
                                                    double radius) {
    std::vector<std::complex<double>> pts;
    pts.reserve(count);
    for (std::size_t i = 1; i <= count; ++i) {
        const double r = radius * std::sqrt(halton(i, 2));
        const double th = 2.0 * std::numbers::pi * halton(i, 3);
        pts.emplace_back(r * std::cos(th), r * std::sin(th));
    }
    return pts;
}

double golden_min(const std::function<double(double)>& f, double a, double b,
                  double tol, int max_iter) {
    constexpr double invphi = 0.6180339887498949; // (sqrt(5)-1)/2
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < max_iter && (b - a) > tol * std::max({std::abs(a), std::abs(b), 1.0}); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double f_tol, double x_tol, int max_iter) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        throw ParameterError("bisect_root: endpoints do not bracket a root");
    }
    double mid = 0.5 * (a + b);
    for (int it = 0; it < max_iter; ++it) {
        mid = 0.5 * (a + b);
        const double fm = f(mid);
        if (std::abs(fm) < f_tol) {
            return mid;
        }
        if ((fm > 0.0) == (fa > 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
        if ((b - a) < x_tol * std::max({std::abs(a), std::abs(b), 1.0})) {
            break;
        }
    }
    return mid;
}

} // namespace qcspec
