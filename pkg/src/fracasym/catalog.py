"""Named building blocks referenced by experiment configurations.

Everything an experiment JSON may refer to by name lives here: right-hand
sides, comparison functions, weight functions (with their analytic tail
tags) and exact solutions for the manufactured problems.  Keeping the
registry data-driven is what makes configs pure data and runs reproducible.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .asymptotics import TailIntegrand, make_integrand
from .bounds import ComparisonFunction
from .errors import ConfigError, DomainError
from .gamma import gamma_fn
from .solvers import ProblemKind, ProblemSpec, RightHandSide

__all__ = [
    "signed_power",
    "make_rhs",
    "make_phi",
    "make_weight",
    "exact_solution",
    "rhs_ids",
    "phi_ids",
    "builtin_config_ids",
    "BUILTIN_CONFIGS",
]


def signed_power(u: float, p: float) -> float:
    """sign(u) |u|^p: the real odd-power extension used by the catalog
    nonlinearities, so trajectories may cross zero without leaving the
    reals.  The growth hypotheses only ever see |u|^p, so bounds are
    unaffected."""
    if u == 0.0:
        return 0.0
    return math.copysign(abs(u) ** p, u)


# --------------------------------------------------------------------------
# right-hand sides

def _rhs_zero() -> RightHandSide:
    return RightHandSide(lambda tau, u, v: 0.0, name="zero",
                         description="f = 0 (closed-form smoke problems)")


def _rhs_exp_decay_power(rate: float = 1.0, exponent: float = 0.5) -> RightHandSide:
    if rate <= 0:
        raise ConfigError(f"exp_decay_power needs rate > 0, got {rate}")
    if not 0 < exponent <= 1:
        raise ConfigError(f"exp_decay_power needs exponent in (0, 1], got {exponent}")

    def fn(tau, u, v):
        return math.exp(-rate * tau) * signed_power(u, exponent)

    return RightHandSide(
        fn, name="exp_decay_power",
        description=f"exp(-{rate}*tau) * x^{exponent}: exponentially damped "
                    "sublinear feedback; tail slope of x/tau^alpha settles")


def _rhs_damped_singular_product(pre_exponent: float, rate: float = 1.0,
                                 u_exponent: float = 0.6, v_exponent: float = 1.0 / 3.0,
                                 forcing: float = 0.0) -> RightHandSide:
    if rate <= 0:
        raise ConfigError(f"damped_singular_product needs rate > 0, got {rate}")

    def fn(tau, u, v):
        return (tau ** pre_exponent * math.exp(-rate * tau)
                * (signed_power(u, u_exponent) * signed_power(v, v_exponent)
                   * math.cos(v) + forcing))

    return RightHandSide(
        fn, name="damped_singular_product",
        singular_at_zero=pre_exponent < 0,
        description=f"tau^{pre_exponent} exp(-{rate}*tau) * (x^{u_exponent} "
                    f"v^{v_exponent} cos(v) + {forcing}): damped product "
                    "nonlinearity in the state and its fractional derivative")


def _rhs_manufactured_power(mu: float, alpha: float, kind: str) -> RightHandSide:
    """Source that makes x(tau) = tau^mu the exact solution (state-independent)."""
    if mu <= alpha:
        raise ConfigError(f"manufactured power needs mu > alpha, got mu={mu}")
    coeff = gamma_fn(mu + 1.0) / gamma_fn(mu + 1.0 - alpha)
    if kind == "direct":
        expo = mu - alpha

        def fn(tau, u, v):
            return coeff * tau ** expo
    else:
        expo = mu - alpha - 1.0
        if expo < 0:
            raise ConfigError(
                f"sequential manufactured power needs mu >= alpha + 1, got mu={mu}")
        scale = coeff * (mu - alpha)

        def fn(tau, u, v):
            return scale * tau ** expo

    return RightHandSide(
        fn, name="manufactured_power_mu",
        description=f"source making x = tau^{mu} exact (order check oracle)")


_RHS_FACTORIES: dict[str, Callable[..., RightHandSide]] = {
    "zero": _rhs_zero,
    "exp_decay_power": _rhs_exp_decay_power,
    "damped_singular_product": _rhs_damped_singular_product,
    "manufactured_power_mu": _rhs_manufactured_power,
}

RHS_DESCRIPTIONS = {
    "zero": "f = 0; closed-form solutions",
    "exp_decay_power": "exp(-rate*tau) * x^exponent  [params: rate, exponent]",
    "damped_singular_product": ("tau^pre_exponent exp(-rate*tau) * (x^u_exponent "
                                "* Dbeta^v_exponent * cos(Dbeta) + forcing)  "
                                "[params: pre_exponent, rate, u_exponent, "
                                "v_exponent, forcing]"),
    "manufactured_power_mu": "state-independent source with exact solution tau^mu  [params: mu]",
}


def rhs_ids() -> list[str]:
    return sorted(_RHS_FACTORIES)


def make_rhs(name: str, params: dict | None, alpha: float, kind: str) -> RightHandSide:
    if name not in _RHS_FACTORIES:
        raise ConfigError(f"unknown rhs {name!r}; known: {rhs_ids()}")
    params = dict(params or {})
    if name == "manufactured_power_mu":
        params.setdefault("alpha", alpha)
        params.setdefault("kind", kind)
    try:
        return _RHS_FACTORIES[name](**params)
    except TypeError as exc:
        raise ConfigError(f"bad parameters for rhs {name!r}: {exc}") from exc


# --------------------------------------------------------------------------
# comparison functions

def make_phi(name: str, params: dict | None = None, xi0: float = 1e-8) -> ComparisonFunction:
    params = dict(params or {})
    if name == "identity":
        return ComparisonFunction(lambda s: s, xi0=xi0, name="identity")
    if name == "power":
        r = float(params.pop("exponent"))
        if params:
            raise ConfigError(f"unknown phi parameters {sorted(params)}")
        if not 0 < r <= 1:
            raise ConfigError(f"power comparison function needs exponent in (0,1], got {r}")
        return ComparisonFunction(lambda s: s ** r, xi0=xi0, name=f"s^{r}")
    if name == "power_plus_one":
        r = float(params.pop("exponent"))
        if params:
            raise ConfigError(f"unknown phi parameters {sorted(params)}")
        if not 0 < r <= 1:
            raise ConfigError(f"power comparison function needs exponent in (0,1], got {r}")
        return ComparisonFunction(lambda s: s ** r + 1.0, xi0=xi0, name=f"s^{r}+1")
    if name == "constant":
        c = float(params.pop("value", 1.0))
        if params:
            raise ConfigError(f"unknown phi parameters {sorted(params)}")
        if c <= 0:
            raise ConfigError(f"constant comparison function needs value > 0, got {c}")
        return ComparisonFunction(lambda s: c, xi0=xi0, name=f"const {c}")
    raise ConfigError(f"unknown comparison function {name!r}; known: {phi_ids()}")


def phi_ids() -> list[str]:
    return ["constant", "identity", "power", "power_plus_one"]


# --------------------------------------------------------------------------
# weight functions (P in the envelope hypothesis, h in the uniform bound)

def make_weight(name: str, params: dict | None = None) -> TailIntegrand:
    """Weight functions are catalog integrands so their improper integrals
    carry honest verdicts."""
    return make_integrand(name, **(params or {}))


# --------------------------------------------------------------------------
# exact solutions for study configs

def exact_solution(problem: dict) -> Callable[[np.ndarray], np.ndarray] | None:
    """Exact x(tau) for the catalog problems that have one, else None."""
    rhs = problem["rhs"]["name"]
    alpha = float(problem["alpha"])
    kind = problem["kind"]
    b1 = float(problem.get("b1", 0.0))
    b2 = float(problem.get("b2", 0.0))
    if rhs == "zero":
        if kind == "direct":
            return lambda taus: np.full_like(np.asarray(taus, dtype=float), b1)
        ga1 = gamma_fn(alpha + 1.0)
        return lambda taus: b1 + b2 / ga1 * np.asarray(taus, dtype=float) ** alpha
    if rhs == "manufactured_power_mu":
        mu = float(problem["rhs"]["params"]["mu"])
        if b1 != 0.0 or b2 != 0.0:
            raise ConfigError("manufactured problems need zero initial data")
        return lambda taus: np.asarray(taus, dtype=float) ** mu
    return None


def build_problem_spec(problem: dict) -> ProblemSpec:
    kind_name = problem["kind"]
    try:
        kind = ProblemKind(kind_name)
    except ValueError:
        raise ConfigError(f"unknown problem kind {kind_name!r}") from None
    rhs_cfg = problem["rhs"]
    rhs = make_rhs(rhs_cfg["name"], rhs_cfg.get("params"), float(problem["alpha"]),
                   kind_name)
    try:
        return ProblemSpec(
            kind=kind,
            alpha=float(problem["alpha"]),
            beta=float(problem.get("beta", 0.0)),
            b1=float(problem["b1"]),
            b2=float(problem.get("b2", 0.0)),
            rhs=rhs,
        )
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


# --------------------------------------------------------------------------
# builtin experiment configs (shipped as package data)

BUILTIN_CONFIGS = {
    "example46": "sequential problem with exponentially damped square-root feedback; "
                 "slope, tail-identity and growth-envelope checks",
    "example63": "direct problem with singular-prefactor product nonlinearity; "
                 "uniform-bound and divergence-hypothesis checks",
    "example63_forced": "forced variant of example63 with non-trivial dynamics",
    "zero_rhs": "f = 0 smoke run with closed-form expectations",
    "manufactured_tau2": "direct problem with exact solution tau^2 (convergence study)",
    "manufactured_tau2_seq": "sequential problem with exact solution tau^2 "
                             "(convergence study)",
    "hypothesis_violation": "boundedness check whose divergence hypothesis fails "
                            "(exit-code contract demo)",
}


def builtin_config_ids() -> list[str]:
    return sorted(BUILTIN_CONFIGS)
