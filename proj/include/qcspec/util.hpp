#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace qcspec {

/// Compensated (Neumaier) accumulator. Summation order is part of the
/// deterministic-output contract, so callers add terms in a fixed order.
class NeumaierSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

/// Halton low-discrepancy sequence value, index >= 0, base a small prime.
double halton(std::uint64_t index, std::uint32_t base);

/// Deterministic area-uniform quasi-random points in the disc of radius
/// `radius` (Halton bases 2 and 3; indices start at 1).
std::vector<std::complex<double>> disc_quasi_random(std::size_t count,
                                                    double radius = 1.0);

/// Golden-section minimization of a unimodal function on [a, b].
/// Returns the abscissa of the minimum; tol is on the bracket width.
double golden_min(const std::function<double(double)>& f, double a, double b,
                  double tol = 1e-14, int max_iter = 200);

/// Bisection root of a monotone function with f(a), f(b) of opposite sign.
/// Stops when |f| < f_tol or the bracket width drops below
/// x_tol * max(|a|,|b|,1).
double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double f_tol, double x_tol = 1e-16, int max_iter = 400);

} // namespace qcspec
