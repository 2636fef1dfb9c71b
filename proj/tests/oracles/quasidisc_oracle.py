#!/usr/bin/env python3
"""Extended-precision oracle for the quasidisc constants.

Recomputes, at 50+ significant digits with mpmath, every frozen reference
value asserted in tests/test_quasidisc.cpp and tests/acceptance.cpp:

  * beta~ offsets (the root of nu = 1 in the offset variable eps),
  * ln C_kappa at probe points,
  * ln nu at kappa = 1.0001,
  * ln of the reverse-Holder right-hand side at a probe point,
  * ln M_p(K) for the (K, p) grid, using an independent golden-section
    minimization over the beta offset (the q minimization reduces to the
    endpoint q = 2; a dense grid cross-checks that).

Run:  python3 tests/oracles/quasidisc_oracle.py
"""

from mpmath import mp, mpf, exp, log, pi, sqrt

mp.dps = 60

LN10 = log(10)
EXP_ARG = pi**2 * (2 + pi**2) ** 2 / (2 * log(3))  # exponential growth arg


def growth_factor(K, reflected=True):
    return 24 * pi**2 * (K**2 if reflected else K)


def ln_nu(eps, F):
    """ln nu at kappa = 1 + eps: 10^{8k} (2k-2)/(2k-1) F^{2k}."""
    k = 1 + eps
    return 8 * k * LN10 + log(2 * eps) - log(1 + 2 * eps) + 2 * k * log(F)


def beta_tilde_offset(K):
    F = growth_factor(K)
    lo, hi = mpf(-800), mpf(10)  # bisection in t = ln eps
    for _ in range(400):
        mid = (lo + hi) / 2
        if ln_nu(exp(mid), F) < 0:
            lo = mid
        else:
            hi = mid
    return exp((lo + hi) / 2)


def ln_c(eps, F):
    lnnu = ln_nu(eps, F)
    assert lnnu < 0, "kappa beyond beta~"
    k = 1 + eps
    return 6 * LN10 - (log(2 * k - 1) + log(1 - exp(lnnu))) / (2 * k)


def ln_reverse_holder_rhs(eps, K, area, reflected):
    F = growth_factor(K, reflected)
    m = 2 if reflected else 1
    k = 1 + eps
    return (2 * ln_c(eps, F) + m * log(K) + (1 / k - 1) * log(pi) - log(4)
            + K**m * EXP_ARG + log(area))


def inner_objective(eps, p, F):
    """ln(ratio^(p - p/q + p/r)) at the optimal q = 2, plus 2 ln C_beta."""
    r = p * (1 + eps) / eps
    E = p * (mpf(1) / 2 + 1 / r)
    return E * log(1 + r / 2) + 2 * ln_c(eps, F)


def min_inner(p, K):
    """Golden section over t = ln eps; the objective is unimodal there."""
    F = growth_factor(K)
    et = beta_tilde_offset(K)
    gr = (sqrt(5) - 1) / 2
    a = log(et) - 80
    b = log(et) + log(1 - mpf("1e-40"))
    f = lambda t: inner_objective(exp(t), p, F)
    c, d = b - gr * (b - a), a + gr * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(500):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - gr * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + gr * (b - a)
            fd = f(d)
    t = (a + b) / 2
    return f(t), exp(t)


def ln_mp(K, p):
    hmin, eps_opt = min_inner(p, K)
    value = ((mpf(p) / 2) * log(pi) - (p - 2) * log(2)
             - (mpf(p) / 2 + 2) * log(K) - K**2 * EXP_ARG - hmin)
    return value, eps_opt


def q_endpoint_crosscheck(p, r, n=20000):
    """Dense grid over q in (q*, 2] confirming the minimum sits at q = 2."""
    qs = 2 * r / (r + 1)  # 1/q* = 1/2 + 1/r
    best_q, best_v = None, None
    for i in range(1, n + 1):
        q = qs + (2 - qs) * mpf(i) / n
        num = 1 - 1 / q + 1 / r
        den = mpf("0.5") - 1 / q + 1 / r
        v = p * log(2) + (p - p / q + p / r) * log(num / den)
        if best_v is None or v < best_v:
            best_q, best_v = q, v
    return best_q


def main():
    print("beta~ offsets (root of nu = 1):")
    for K in (1, 2, 5, 10):
        print(f"  K={K:>2}: eps = {beta_tilde_offset(K)}")

    print("\nln nu(kappa=1.0001, F=24 pi^2):",
          ln_nu(mpf("0.0001"), growth_factor(1, reflected=False)))

    et2 = beta_tilde_offset(2)
    print("ln C at K=2, kappa = 1 + eps~/2:", ln_c(et2 / 2, growth_factor(2)))

    print("ln reverse-Holder rhs (eps=1e-14, K=1, area=pi, plain):",
          ln_reverse_holder_rhs(mpf("1e-14"), 1, pi, reflected=False))

    print("\nq-endpoint cross-check (argmin over a dense grid):")
    for (p, r) in [(4, 8), (3, 3), (4, 4)]:
        print(f"  p={p}, r={r}: argmin q = {q_endpoint_crosscheck(p, r)}")

    print("\nln M_p(K):")
    for (K, p) in [(1, 4), (2, 4), (1, 3), (5, 6), (2, 6), (10, 10)]:
        v, eps_opt = ln_mp(K, p)
        print(f"  K={K:>2} p={p:>2}: ln M_p = {v}")
        print(f"            ln M_p* = {v - mpf(p) / 2 * log(pi)}")
        print(f"            eps_opt = {eps_opt}")


if __name__ == "__main__":
    main()
