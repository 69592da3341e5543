"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: hypothesis violations are reported but
do not abort a run (exit 2), solver failures abort it (exit 1).
"""


class FracasymError(Exception):
    """Base class for all package-specific errors."""


class DomainError(FracasymError, ValueError):
    """A parameter is outside the mathematical domain of an operation."""


class ConfigError(FracasymError, ValueError):
    """An experiment configuration is malformed (unknown keys, bad values)."""


class HypothesisViolation(FracasymError):
    """A bound's integrability/divergence hypothesis fails, so the bound
    construction is inapplicable (not a programming error)."""


class ClassViolation(HypothesisViolation):
    """A sampled membership check for a comparison-function or
    Lipschitz-majorant class failed."""


class StepFailure(FracasymError, RuntimeError):
    """The time-marching corrector could not be solved at some node."""

    def __init__(self, node: int, tau: float, message: str):
        self.node = node
        self.tau = tau
        super().__init__(f"step {node} (tau={tau:.6g}): {message}")


class RhsEvaluationError(StepFailure):
    """The right-hand side returned a non-finite value during marching."""
