"""Numerical verification of the limit statements.

A finite-horizon computation cannot certify a limit, so everything here
reports falsifiable surrogates: trailing-window spreads, extrapolated tail
values, residuals of limit identities at the final node, and
convergence/divergence verdicts for improper integrals backed by analytic
tail tags.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import quad

from .bounds import BoundReport
from .errors import DomainError
from .fracops import rl_integral
from .gamma import gamma_fn
from .grid import GridFunction
from .solvers import Solution

__all__ = [
    "SlopeEstimate",
    "power_slope",
    "lhopital_residual",
    "TailIntegrand",
    "make_integrand",
    "TailEstimate",
    "improper_tail",
    "integrable_limit_check",
    "BoundednessVerdict",
    "boundedness_verdict",
]

_QUAD_OPTS = dict(epsabs=1e-14, epsrel=1e-11, limit=200)


@dataclass(frozen=True)
class SlopeEstimate:
    """Estimate of the limit of x(tau)/tau^alpha from a finite run.

    raw_tail is the ratio at the final node; accelerated applies one Aitken
    delta-squared step to the ratios at T/4, T/2, T; spread is max - min of
    the ratio over the trailing window and is the convergence indicator.
    """

    raw_tail: float
    accelerated: float
    spread: float
    window_fraction: float


def power_slope(sol: Solution, window_fraction: float = 0.25) -> SlopeEstimate:
    """Power-slope estimate of the solution's tail growth x ~ a tau^alpha."""
    if not 0.0 < window_fraction <= 0.9:
        raise DomainError(f"window_fraction must lie in (0, 0.9], got {window_fraction}")
    grid = sol.x
    if grid.t_end < 10.0:
        raise DomainError(f"slope estimation needs t_end >= 10, got {grid.t_end}")
    alpha = sol.spec.alpha
    taus = grid.taus
    n = grid.n_steps
    start = max(1, int(math.ceil((1.0 - window_fraction) * n)))
    if n + 1 - start < 3:
        raise DomainError("trailing window has fewer than 3 nodes")
    ratios = grid.values[start:] / taus[start:] ** alpha
    raw = float(ratios[-1])
    spread = float(np.max(ratios) - np.min(ratios))

    full = grid.values[1:] / taus[1:] ** alpha
    i2 = n - 1  # index into full[] for tau = T
    i1 = grid.index_at(grid.t_end / 2.0) - 1
    i0 = grid.index_at(grid.t_end / 4.0) - 1
    s0, s1, s2 = float(full[i0]), float(full[i1]), float(full[i2])
    denom = s2 - 2.0 * s1 + s0
    if abs(denom) < 1e-14 * (abs(s2) + abs(s1) + abs(s0) + 1e-300):
        accelerated = raw
    else:
        accelerated = s2 - (s2 - s1) ** 2 / denom
    return SlopeEstimate(raw_tail=raw, accelerated=accelerated, spread=spread,
                         window_fraction=window_fraction)


def lhopital_residual(sol: Solution) -> float:
    """|x(T)/T^alpha - Dalpha x(T)/Gamma(1+alpha)| at the final node.

    The two quantities share their limit (the fractional L'Hopital
    identity), so the residual measures how far the run is from the
    asymptotic regime; for x with x(0) = b1 it cannot drop below roughly
    |b1|/T^alpha at horizon T.
    """
    alpha = sol.spec.alpha
    t_end = sol.x.t_end
    x_tail = sol.x.values[-1] / t_end ** alpha
    d_tail = sol.dalpha_x.values[-1] / gamma_fn(1.0 + alpha)
    return abs(float(x_tail - d_tail))


@dataclass(frozen=True)
class TailIntegrand:
    """An integrand with a declared analytic tail class, so that improper
    integrals can be given honest convergence verdicts."""

    ident: str
    fn: Callable[[float], float]
    tail_class: str  # "exponential" | "power" | "unknown"
    tail_exponent: float = 0.0
    description: str = ""


_INTEGRANDS: dict[str, Callable[..., TailIntegrand]] = {}


def _register(name: str):
    def deco(factory):
        _INTEGRANDS[name] = factory
        return factory
    return deco


@_register("exp_decay")
def _exp_decay(rate: float = 1.0) -> TailIntegrand:
    if rate <= 0:
        raise DomainError(f"exp_decay needs rate > 0, got {rate}")
    return TailIntegrand("exp_decay", lambda s: math.exp(-rate * s),
                         "exponential",
                         description=f"exp(-{rate}*s)")


@_register("power")
def _power(exponent: float) -> TailIntegrand:
    return TailIntegrand("power", lambda s: s ** exponent,
                         "power", tail_exponent=exponent,
                         description=f"s^{exponent}")


@_register("power_exp")
def _power_exp(exponent: float, rate: float = 1.0) -> TailIntegrand:
    if rate <= 0:
        raise DomainError(f"power_exp needs rate > 0, got {rate}")
    return TailIntegrand("power_exp", lambda s: s ** exponent * math.exp(-rate * s),
                         "exponential",
                         description=f"s^{exponent} * exp(-{rate}*s)")


def make_integrand(name: str, **params) -> TailIntegrand:
    """Look up a catalog integrand by id."""
    if name not in _INTEGRANDS:
        raise DomainError(f"unknown integrand {name!r}; known: {sorted(_INTEGRANDS)}")
    return _INTEGRANDS[name](**params)


def integrand_ids() -> list[str]:
    return sorted(_INTEGRANDS)


class TailEstimate(NamedTuple):
    finite_estimate: float
    verdict: str  # "converges" | "diverges" | "inconclusive"


def improper_tail(integrand: TailIntegrand | str, weight_power: float = 0.0,
                  split: float = 1.0, params: dict | None = None) -> TailEstimate:
    """Estimate int_split^inf s^weight_power * f(s) ds with a verdict.

    The verdict combines the integrand's analytic tail tag with the numeric
    behavior: exponential tails always converge, power tails follow the
    p-integral rule, and untagged integrands are never certified convergent
    unless their dyadic increments both shrink below tolerance and decay
    geometrically.
    """
    if isinstance(integrand, str):
        integrand = make_integrand(integrand, **(params or {}))
    if split < 0:
        raise DomainError(f"split must be >= 0, got {split}")

    def f(s: float) -> float:
        return s ** weight_power * integrand.fn(s)

    if integrand.tail_class == "power":
        p_total = integrand.tail_exponent + weight_power
        if p_total >= -1.0:
            return TailEstimate(math.inf, "diverges")

    total = 0.0
    lo = split
    hi = max(1.0, 2.0 * split)
    increments = []
    for _ in range(64):
        piece, _ = quad(f, lo, hi, **_QUAD_OPTS)
        total += piece
        increments.append(abs(piece))
        lo, hi = hi, 2.0 * hi
        if increments[-1] < 1e-10:
            break

    if integrand.tail_class == "exponential":
        return TailEstimate(total + _exponential_tail_bound(f, lo), "converges")
    if integrand.tail_class == "power":
        p_total = integrand.tail_exponent + weight_power
        tail = lo ** (p_total + 1.0) / (-1.0 - p_total)
        return TailEstimate(total + tail, "converges")

    # untagged integrand: demand clear geometric decay of the increments
    if len(increments) >= 3 and increments[-1] < 1e-10:
        ratios = [increments[i + 1] / increments[i]
                  for i in range(len(increments) - 1) if increments[i] > 0]
        if ratios and max(ratios[-4:]) <= 0.9:
            return TailEstimate(total, "converges")
    return TailEstimate(total, "inconclusive")


def _exponential_tail_bound(f: Callable[[float], float], H: float) -> float:
    """Crude remainder bound past H for exponentially decaying integrands:
    one more dyadic piece dominates the geometric remainder."""
    piece, _ = quad(f, H, 2.0 * H, **_QUAD_OPTS)
    return abs(piece)


def integrable_limit_check(fgrid: GridFunction, alpha: float,
                           tau_list, total_integral: float) -> list[float]:
    """Residuals of the averaged-integral limit
        (1/tau^alpha) J^(alpha+1) f(tau) -> total_integral / Gamma(alpha+1)
    at the requested times; J^(alpha+1) is realized as J^1 o J^alpha."""
    inner = rl_integral(fgrid, alpha)
    outer = GridFunction(fgrid.t_end, inner.values).cumulative_integral()
    limit = total_integral / gamma_fn(alpha + 1.0)
    out = []
    for tau in tau_list:
        idx = fgrid.index_at(float(tau))
        if idx == 0:
            raise DomainError("limit check requires tau > 0")
        t = fgrid.taus[idx]
        out.append(abs(float(outer[idx]) / t ** alpha - limit))
    return out


class BoundednessVerdict(NamedTuple):
    sup_x: float
    sup_dbeta: float
    within_bound: bool


def boundedness_verdict(sol: Solution, bound: BoundReport) -> BoundednessVerdict:
    """Compare trajectory sups against a uniform-bound report.

    sup |x| is over the whole grid; sup |Dbeta x| only over tau >= tau0
    (taken from the report), matching the region where the derivative bound
    is claimed.
    """
    c = bound.constants["C"]
    tau0 = bound.constants.get("tau0", 0.0)
    sup_x = float(np.max(np.abs(sol.x.values)))
    taus = sol.dbeta_x.taus
    mask = taus >= tau0
    sup_db = float(np.max(np.abs(sol.dbeta_x.values[mask]))) if np.any(mask) else 0.0
    within = bool(sup_x <= c * (1.0 + 1e-9) and sup_db <= c * (1.0 + 1e-9))
    return BoundednessVerdict(sup_x=sup_x, sup_dbeta=sup_db, within_bound=within)
