"""Independent oracles for the bound-dominance and convolution tests.

Everything here is deliberately built from plain numpy/scipy primitives
(trapezoid cumulatives, adaptive quadrature) and never calls the package's
own quadrature machinery, so a bug in the library cannot cancel out of the
comparison.

The integral inequalities have extremal solutions that solve them as
equalities; Picard sweeps on a fine grid converge to those equalities, and
the library's closed-form bounds must dominate them pointwise.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import quad


def _cumtrapz(values: np.ndarray, h: float) -> np.ndarray:
    out = np.empty_like(values)
    out[0] = 0.0
    np.cumsum(0.5 * h * (values[1:] + values[:-1]), out=out[1:])
    return out


def picard_equality(update, z0: np.ndarray, tol: float = 1e-12,
                    max_sweeps: int = 500) -> np.ndarray:
    """Iterate z <- update(z) until the max change drops below tol."""
    z = z0.copy()
    for _ in range(max_sweeps):
        z_new = update(z)
        delta = float(np.max(np.abs(z_new - z)))
        z = z_new
        if delta <= tol * (1.0 + float(np.max(np.abs(z)))):
            return z
    raise RuntimeError("picard iteration for the equality oracle did not converge")


def nonlinear_equality(taus, g, phi, c1, c2, c3, gamma):
    """Extremal solution of z = c1 + c2 t^g + c3 t^g int_0^t g(s) phi(z) ds."""
    h = taus[1] - taus[0]
    inhom = c1 + c2 * taus ** gamma

    def update(z):
        return inhom + c3 * taus ** gamma * _cumtrapz(g * phi(z), h)

    return picard_equality(update, inhom)


def linear_class_equality(taus, F1, F2, h_vals, c1, c2, c3, c4, gamma):
    """Extremal solution of
    z = c1 t^g + c2 t^g int_0^t [F1(s, z+c3) + F2(s, z+c4) + h(s)] ds."""
    h = taus[1] - taus[0]
    inhom = c1 * taus ** gamma

    def update(z):
        integrand = (np.array([F1(s, zz + c3) for s, zz in zip(taus, z)])
                     + np.array([F2(s, zz + c4) for s, zz in zip(taus, z)])
                     + h_vals)
        return inhom + c2 * taus ** gamma * _cumtrapz(integrand, h)

    return picard_equality(update, inhom)


def lq_equality(taus, h_vals, phi1, phi2, k1, k2, q):
    """Extremal solution of
    z = k1 + k2 (int_0^t h^q phi1^q(z) phi2^q(z) ds)^(1/q)."""
    h = taus[1] - taus[0]
    z0 = np.full_like(taus, k1)

    def update(z):
        integrand = h_vals ** q * phi1(z) ** q * phi2(z) ** q
        return k1 + k2 * _cumtrapz(integrand, h) ** (1.0 / q)

    return picard_equality(update, z0)


def singular_convolution_lhs(g_callable, upsilon: float, lam: float, tau: float,
                             knots=None) -> float:
    """int_0^tau (tau-s)^(upsilon-1) s^lam g(s) ds by adaptive quadrature.

    The substitution u = (tau - s)^upsilon removes the endpoint singularity:
    ds = -(1/upsilon) u^(1/upsilon - 1) du.  Known kink locations of g can be
    passed as breakpoints so the quadrature sees piecewise-smooth panels.
    """
    def integrand(u):
        s = tau - u ** (1.0 / upsilon)
        s = min(max(s, 0.0), tau)
        return s ** lam * g_callable(s) / upsilon * u ** (1.0 / upsilon - 1.0)

    points = None
    if knots is not None:
        mapped = [(tau - t) ** upsilon for t in knots if 0.0 < t < tau]
        points = sorted(mapped) or None
    val, _ = quad(integrand, 0.0, tau ** upsilon, limit=800,
                  epsabs=1e-13, epsrel=1e-10, points=points)
    return float(val)


def lq_norm(g_callable, r: float, tau: float) -> float:
    """(int_0^tau g^r ds)^(1/r) by adaptive quadrature."""
    val, _ = quad(lambda s: g_callable(s) ** r, 0.0, tau, limit=400,
                  epsabs=1e-13, epsrel=1e-11)
    return float(val) ** (1.0 / r)


def random_piecewise_linear(rng, t_end: float, n_knots: int = 9,
                            lo: float = 0.0, hi: float = 2.0):
    """A non-negative piecewise-linear callable with random knot values."""
    knots_t = np.linspace(0.0, t_end, n_knots)
    knots_v = rng.uniform(lo, hi, size=n_knots)

    def fn(s):
        return np.interp(s, knots_t, knots_v)

    return fn, knots_t, knots_v
