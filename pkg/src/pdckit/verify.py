"""Profiles champion records against divisibility and reciprocal-sum claims.

A profile extracts from one winner: d* (gcd of the differences), its
factorization summary, the exact reciprocal sum over primes dividing d*,
and the two small-prime reciprocal sums that the theorem-level bounds
control.  Verdicts split into assert-class checks (theorem-backed
inequalities that must hold, subject to an explicit slack for the o(1)
term) and report-class observations whose implied constants are
unspecified.  Exact rationals are used for every reciprocal sum; floats
appear only next to their exact values.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .champions import ChampionRecord
from .counting import DifferenceSet
from .sieve import primes_array
from .singular import factorize, is_squarefree


@dataclass(frozen=True)
class TheoremProfile:
    x: int
    k: int
    mode: str
    winner: tuple[int, ...]
    d_star: int
    omega: int  # distinct prime divisors of d_star
    reciprocal_sum: Fraction  # sum of 1/p over p | d_star
    logloglog_x: float
    nondivisor_sum: Fraction  # sum 1/p over p <= 2 log x with p not dividing d_star
    nondivisor_bound: float  # log k! + k log 2 + log(2 (k+1)^2)
    delta_nondivisor_sum: Fraction  # same sum with p not dividing delta({0} u winner)
    delta_nondivisor_bound: float  # (log k!)/k + log 2 + log(2 (k+1)^2)/k
    squarefree: bool
    primorial_divisor: int  # largest p_n# dividing d_star
    largest_prime_ratio: float  # max prime of d_star / loglog x; 0 when d_star = 1
    dk_below_half_x: bool

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "k": self.k,
            "mode": self.mode,
            "winner": list(self.winner),
            "d_star": self.d_star,
            "omega": self.omega,
            "reciprocal_sum": float(self.reciprocal_sum),
            "reciprocal_sum_exact": str(self.reciprocal_sum),
            "logloglog_x": self.logloglog_x,
            "nondivisor_sum": float(self.nondivisor_sum),
            "nondivisor_bound": self.nondivisor_bound,
            "delta_nondivisor_sum": float(self.delta_nondivisor_sum),
            "delta_nondivisor_bound": self.delta_nondivisor_bound,
            "squarefree": self.squarefree,
            "primorial_divisor": self.primorial_divisor,
            "largest_prime_ratio": self.largest_prime_ratio,
            "dk_below_half_x": self.dk_below_half_x,
        }


def _largest_primorial_divisor(n: int) -> int:
    value = 1
    for p in primes_array(max(2, n)).tolist():
        if n % (value * p):
            break
        value *= p
    return value


def profile(record: ChampionRecord) -> tuple[TheoremProfile, ...]:
    """One profile per winner; verdicts must hold for every one of them."""
    if not record.winners:
        raise ValueError("record has no winners")
    out = []
    x, k = record.x, record.k
    small = [int(p) for p in primes_array(math.floor(2 * math.log(x))).tolist()]
    for w in record.winners:
        d_star = w.gcd
        fac = factorize(d_star) if d_star > 1 else []
        div_primes = [p for p, _ in fac]
        delta = DifferenceSet(w.elements).delta
        out.append(
            TheoremProfile(
                x=x,
                k=k,
                mode=record.mode,
                winner=w.elements,
                d_star=d_star,
                omega=len(div_primes),
                reciprocal_sum=sum((Fraction(1, p) for p in div_primes), Fraction(0)),
                logloglog_x=math.log(math.log(math.log(x))),
                nondivisor_sum=sum(
                    (Fraction(1, p) for p in small if d_star % p), Fraction(0)
                ),
                nondivisor_bound=math.log(math.factorial(k))
                + k * math.log(2)
                + math.log(2 * (k + 1) ** 2),
                delta_nondivisor_sum=sum(
                    (Fraction(1, p) for p in small if delta % p), Fraction(0)
                ),
                delta_nondivisor_bound=math.log(math.factorial(k)) / k
                + math.log(2)
                + math.log(2 * (k + 1) ** 2) / k,
                squarefree=is_squarefree(d_star) if d_star > 1 else True,
                primorial_divisor=_largest_primorial_divisor(d_star),
                largest_prime_ratio=(
                    max(div_primes) / math.log(math.log(x)) if div_primes else 0.0
                ),
                dk_below_half_x=w.elements[-1] < x / 2,
            )
        )
    return tuple(out)


@dataclass(frozen=True)
class Verdict:
    name: str
    kind: str  # "assert" or "report"
    passed: bool | None  # None for pure reports
    detail: str


@dataclass(frozen=True)
class VerdictReport:
    profile: TheoremProfile
    slack: float
    entries: tuple[Verdict, ...]

    @property
    def ok(self) -> bool:
        return all(v.passed is not False for v in self.entries if v.kind == "assert")

    def to_dict(self) -> dict:
        return {
            "profile": self.profile.to_dict(),
            "slack": self.slack,
            "ok": self.ok,
            "entries": [
                {"name": v.name, "kind": v.kind, "passed": v.passed, "detail": v.detail}
                for v in self.entries
            ],
        }


def verdicts(prof: TheoremProfile, slack: float = 1.0) -> VerdictReport:
    """Assert- and report-class checks for one profiled winner.

    The small-prime reciprocal bound absorbs an o(1) term; slack covers it
    and defaults to 1.0.  Squarefreeness is assert-class only for
    exhaustive-mode winners (a pruned winner is just a family member).
    """
    lhs = float(prof.nondivisor_sum)
    entries = [
        Verdict(
            name="small_prime_reciprocal_bound",
            kind="assert",
            passed=lhs <= prof.nondivisor_bound + slack,
            detail=f"sum 1/p (p<=2 log x, p not | d*) = {lhs:.6f} "
            f"vs {prof.nondivisor_bound:.6f} + slack {slack}",
        ),
        Verdict(
            name="squarefree_d_star",
            kind="assert" if prof.mode == "exhaustive" else "report",
            passed=prof.squarefree,
            detail=f"d* = {prof.d_star} squarefree: {prof.squarefree}",
        ),
        Verdict(
            name="reciprocal_sum_vs_logloglog",
            kind="report",
            passed=None,
            detail=f"sum 1/p (p | d*) = {float(prof.reciprocal_sum):.6f}, "
            f"logloglog x = {prof.logloglog_x:.6f}, "
            f"difference {float(prof.reciprocal_sum) - prof.logloglog_x:+.6f}",
        ),
        Verdict(
            name="primorial_divisor",
            kind="report",
            passed=None,
            detail=f"largest primorial dividing d* = {prof.primorial_divisor}",
        ),
        Verdict(
            name="delta_variant_bound",
            kind="report",
            passed=float(prof.delta_nondivisor_sum) <= prof.delta_nondivisor_bound + slack,
            detail=f"sum 1/p (p<=2 log x, p not | delta) = {float(prof.delta_nondivisor_sum):.6f} "
            f"vs {prof.delta_nondivisor_bound:.6f} + slack {slack}",
        ),
        Verdict(
            name="largest_prime_over_loglog",
            kind="report",
            passed=None,
            detail=f"max prime of d* over loglog x = {prof.largest_prime_ratio:.4f}",
        ),
        Verdict(
            name="d_k_below_half_x",
            kind="report",
            passed=prof.dk_below_half_x,
            detail=f"d_k = {prof.winner[-1]} vs x/2 = {prof.x / 2:g}",
        ),
    ]
    return VerdictReport(profile=prof, slack=slack, entries=tuple(entries))


def verdict_table(reports: Sequence[VerdictReport]) -> str:
    """Human-readable fixed-width summary, one block per winner."""
    lines = []
    for rep in reports:
        p = rep.profile
        lines.append(
            f"x={p.x} k={p.k} winner={p.winner} d*={p.d_star} "
            f"[{p.mode}] -> {'OK' if rep.ok else 'FAIL'}"
        )
        for v in rep.entries:
            status = "----" if v.passed is None else ("pass" if v.passed else "FAIL")
            lines.append(f"  {status}  {v.kind:<6} {v.name:<32} {v.detail}")
    return "\n".join(lines)


def reports_to_json(
    reports: Sequence[VerdictReport], path: str | os.PathLike, config: dict | None = None
) -> None:
    payload = {"reports": [r.to_dict() for r in reports]}
    if config is not None:
        payload["config"] = config
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
