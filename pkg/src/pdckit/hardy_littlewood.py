"""Prediction-side integrals and the truncated expansion factor.

li_k(x) = integral of 1/log^k t on [2, x], evaluated by adaptive Simpson
bisection with an absolute tolerance.  Predictions pair the singular series
with li_{k+1} on the shifted range [2, x - d_k] and report exact counts
alongside, with the normalized error |E| log^{k+3} x / x.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from typing import Sequence

from .counting import DifferenceSet, count_tuple
from .sieve import PrimeTable
from .singular import SingularValue, singular_series


def _adaptive_simpson(f, a: float, b: float, tolerance: float) -> tuple[float, float]:
    """Integrate f on [a, b]; returns (value, error_estimate).

    Interval bisection with the standard |S2 - S1| / 15 acceptance test;
    the error estimate is the sum of accepted per-interval estimates, so it
    stays below the requested tolerance.
    """

    def simpson(lo, hi, flo, fmid, fhi):
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)

    total = 0.0
    err = 0.0
    mid = 0.5 * (a + b)
    stack = [(a, b, f(a), f(mid), f(b), simpson(a, b, f(a), f(mid), f(b)), tolerance, 0)]
    while stack:
        lo, hi, flo, fmid, fhi, whole, tol, depth = stack.pop()
        m = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + m), 0.5 * (m + hi)
        flm, frm = f(lm), f(rm)
        left = simpson(lo, m, flo, flm, fmid)
        right = simpson(m, hi, fmid, frm, fhi)
        diff = left + right - whole
        if abs(diff) <= 15.0 * tol or depth >= 60:
            total += left + right + diff / 15.0
            err += abs(diff) / 15.0
        else:
            stack.append((lo, m, flo, flm, fmid, left, tol / 2.0, depth + 1))
            stack.append((m, hi, fmid, frm, fhi, right, tol / 2.0, depth + 1))
    return total, err


def li_k(x: float, k: int, tolerance: float = 1e-9) -> float:
    """Integral of dt / log^k t over [2, x]; 0 for x <= 2."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    if x <= 2:
        return 0.0
    value, _ = _adaptive_simpson(lambda t: math.log(t) ** -k, 2.0, float(x), tolerance)
    return value


def li_upper(x: float, D: DifferenceSet, tolerance: float = 1e-9) -> float:
    """li_{k+1} on the shifted range [2, x - d_k]; 0 when the range is empty."""
    upper = x - D.elements[-1]
    if upper <= 2:
        return 0.0
    return li_k(upper, D.k + 1, tolerance)


@dataclass(frozen=True)
class ExpansionFactor:
    """Truncated expansion 1 + (k+1)/log x + (k+1)(k+2)/log^2 x.

    The two dropped terms are reported as magnitude bounds with constant 1
    (artifact convention; the true implied constants are unspecified).
    """

    value: float
    dk_error_bound: float  # ~ d_k / (x log x)
    log_cubed_error_bound: float  # ~ 1 / log^3 x


def h_factor(x: float, D: DifferenceSet) -> ExpansionFactor:
    if x < 10:
        raise ValueError(f"need x >= 10, got {x}")
    k = D.k
    lg = math.log(x)
    value = 1.0 + (k + 1) / lg + (k + 1) * (k + 2) / lg**2
    return ExpansionFactor(
        value=value,
        dk_error_bound=D.elements[-1] / (x * lg),
        log_cubed_error_bound=1.0 / lg**3,
    )


@dataclass(frozen=True)
class Prediction:
    x: int
    elements: tuple[int, ...]
    singular: SingularValue
    predicted: float
    exact: int
    ratio: float | None  # exact / predicted; None when predicted is 0
    quadrature_error: float
    normalized_error: float  # |exact - predicted| * log^{k+3} x / x

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "k": len(self.elements),
            "elements": list(self.elements),
            "singular": {
                "value": self.singular.value,
                "truncation_prime": self.singular.truncation_prime,
                "tail_bound": self.singular.tail_bound,
                "is_zero": self.singular.is_zero,
            },
            "predicted": self.predicted,
            "exact": self.exact,
            "ratio": self.ratio,
            "quadrature_error": self.quadrature_error,
            "normalized_error": self.normalized_error,
        }


def predict(
    table: PrimeTable, x: int, D: DifferenceSet, tolerance: float = 1e-6
) -> Prediction:
    """Singular series times li_{k+1}(x - d_k) against the exact count.

    A vanishing singular series predicts 0; the exact side is still
    computed (obstructed tuples can have boundary solutions).
    """
    sv = singular_series((0, *D.elements), tolerance)
    upper = x - D.elements[-1]
    if sv.is_zero or upper <= 2:
        li_val, quad_err = 0.0, 0.0
    else:
        li_val, quad_err = _adaptive_simpson(
            lambda t: math.log(t) ** -(D.k + 1), 2.0, float(upper), tolerance
        )
    predicted = sv.value * li_val
    exact = count_tuple(table, x, D)
    ratio = exact / predicted if predicted > 0 else None
    norm = abs(exact - predicted) * math.log(x) ** (D.k + 3) / x
    return Prediction(
        x=x,
        elements=D.elements,
        singular=sv,
        predicted=predicted,
        exact=exact,
        ratio=ratio,
        quadrature_error=quad_err,
        normalized_error=norm,
    )


def predictions_to_json(
    predictions: Sequence[Prediction], path: str | os.PathLike, config: dict | None = None
) -> None:
    payload = {"results": [p.to_dict() for p in predictions]}
    if config is not None:
        payload["config"] = config
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
