"""Shared result containers and error types for the transform modules."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple


class ContractViolation(ValueError):
    """An input breaks a documented precondition (non-harmonic, stray zbar
    terms, wrong spinor grade, ...).  Carries the measured residual when one
    exists; the CLI maps this to exit code 2."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SingularKernelError(ZeroDivisionError):
    """Closed-form kernel denominator vanished (boundary of the domain)."""


class TruncatedSum(NamedTuple):
    """Value of a truncated series plus the magnitude of its last shell,
    reported so callers can judge the truncation error."""

    value: complex
    last_shell: float

    def __complex__(self):
        return complex(self.value)


@dataclass
class ProjectionResult:
    """Outcome of projecting onto a tuple's plane-wave span.

    coefficients maps the wave label (bi-degree pair, or plain degree for the
    holomorphic spaces) to its coordinate; zero coordinates are omitted.
    reconstructed is the projected element, exactly the coefficient-weighted
    wave sum.
    """

    coefficients: dict
    reconstructed: object
    space: str = ""

    def __bool__(self):
        return bool(self.coefficients)


@dataclass
class MonteCarloEstimate:
    """Stiefel-averaged dual estimated from Haar samples.

    stderr maps each reported key to the standard error of its mean value
    (combined real+imag spread); estimates converge at the usual 1/sqrt(N).
    """

    mean: object
    stderr: dict
    samples: int

    def within(self, reference, sigmas=3.0):
        """True when every reference coefficient lies inside the +-sigmas band
        (and no extra mass appears elsewhere)."""
        ref = dict(reference)
        got = dict(self._mean_items())
        for key in set(ref) | set(got):
            delta = abs(complex(got.get(key, 0.0)) - complex(ref.get(key, 0.0)))
            band = sigmas * self.stderr.get(key, 0.0)
            if delta > band and delta > 1e-14:
                return False
        return True

    def _mean_items(self):
        terms = getattr(self.mean, "terms", None)
        if terms is not None:
            return terms.items()
        coeffs = getattr(self.mean, "coeffs", None)
        if coeffs is not None:
            return coeffs.items()
        return dict(self.mean).items()


@dataclass
class CheckResult:
    """One named verification check with its measured evidence."""

    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""
    advisory: bool = False  # advisory checks report but never gate

    def line(self):
        status = "PASS" if self.passed else ("NOTE" if self.advisory else "FAIL")
        return f"{status} {self.name}: measured={self.measured:.3e} tol={self.tolerance:.1e} {self.detail}".rstrip()
