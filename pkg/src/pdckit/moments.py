"""Moments of prime counts in residue classes and their exact identities.

The m-th power of a class count decomposes over ordered distinct tuples:

    n^m = sum_{j=1..m} S(m, j) * n_(j)        (falling factorial n_(j))

summed over classes this links moment sums to counts of ordered tuples of
distinct primes sharing a residue class, and those in turn to sums of
k-tuple counts over difference sets divisible by q.  All identities here
are exact integer statements; verification functions return flags computed
from exact arithmetic.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .sieve import PrimeTable


def class_counts(table: PrimeTable, x: int, q: int) -> list[int]:
    """pi(x; q, a) for a = 0 .. q-1, as exact Python ints."""
    if q < 1:
        raise ValueError(f"modulus must be >= 1, got {q}")
    table._check_range(x)
    binned = np.bincount(table.primes_up_to(x) % q, minlength=q)
    return [int(c) for c in binned]


def moment_sum(table: PrimeTable, x: int, q: int, k: int, *, coprime_only: bool = False) -> int:
    """Sum of pi(x; q, a)^k over residue classes a mod q.

    With coprime_only, classes with gcd(a, q) > 1 are skipped; k = 0 then
    returns the number of coprime classes (Euler phi of q).  Exact integers
    throughout, no word-size limits.
    """
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    counts = class_counts(table, x, q)
    total = 0
    for a, c in enumerate(counts):
        if coprime_only and math.gcd(a, q) != 1:
            continue
        total += c**k
    return total


@lru_cache(maxsize=None)
def _stirling2(m: int, j: int) -> int:
    """Stirling partition number S(m, j) via the standard recurrence."""
    if j == m or (j == 0 and m == 0):
        return 1
    if j == 0 or j > m:
        return 0
    return j * _stirling2(m - 1, j) + _stirling2(m - 1, j - 1)


def stirling_coefficient(m: int, i: int) -> int:
    """Coefficient of the j = m - i distinct-tuple sum in the m-th power identity.

    Equals S(m, m - i); exact integer.  Requires 0 <= i < m.
    """
    if m < 1 or i < 0 or i >= m:
        raise ValueError(f"need 0 <= i < m, got m={m}, i={i}")
    return _stirling2(m, m - i)


def _falling(n: int, j: int) -> int:
    out = 1
    for t in range(j):
        out *= n - t
    return out


def distinct_tuple_sum(table: PrimeTable, x: int, q: int, j: int) -> int:
    """Number of ordered j-tuples of distinct primes <= x in a common class mod q.

    Computed per class as the falling factorial pi(x; q, a)_(j), summed over
    all classes.  j is small (<= 5 is plenty at desk scale).
    """
    if j < 1:
        raise ValueError(f"need j >= 1, got {j}")
    return sum(_falling(c, j) for c in class_counts(table, x, q))


def distinct_tuple_sum_oracle(table: PrimeTable, x: int, q: int, j: int) -> int:
    """Literal enumeration of ordered distinct prime tuples; tiny x only."""
    from itertools import permutations

    primes = table.primes_up_to(x).tolist()
    total = 0
    for tup in permutations(primes, j):
        if all(p % q == tup[0] % q for p in tup):
            total += 1
    return total


def verify_power_identity(table: PrimeTable, x: int, q: int, m: int) -> tuple[bool, int]:
    """Check sum_a pi^m = sum_i S(m, m-i) * distinct_tuple_sum(j = m - i).

    Returns (flag, residual); the residual is exactly 0 when the identity
    holds.  Both sides run over all residue classes.
    """
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    lhs = moment_sum(table, x, q, m)
    rhs = sum(
        stirling_coefficient(m, i) * distinct_tuple_sum(table, x, q, m - i)
        for i in range(m)
    )
    return lhs == rhs, lhs - rhs


def verify_tuple_link(table: PrimeTable, x: int, q: int, k: int) -> bool:
    """Check the ordered k-tuple count against k! times a sum of tuple counts.

    The right side enumerates difference sets {d_1 < ... < d_{k-1}} with
    q | d_i and counts primes p with p + d_i prime for all i, p + d_{k-1} <= x.
    Supported for k in {2, 3}.
    """
    if k not in (2, 3):
        raise ValueError(f"need k in {{2, 3}}, got {k}")
    lhs = distinct_tuple_sum(table, x, q, k)
    mask = table.prime_mask_int(x)
    total = 0
    if k == 2:
        for d in range(q, x - 1, q):
            total += (mask & (mask >> d)).bit_count()
    else:
        for d1 in range(q, x - 1, q):
            m1 = mask & (mask >> d1)
            if not m1:
                continue
            for d2 in range(d1 + q, x - 1, q):
                total += (m1 & (mask >> d2)).bit_count()
    return lhs == math.factorial(k) * total


@dataclass(frozen=True)
class InequalityMargin:
    margin: float  # sum_a pi^k - (pi/phi) * sum_a pi^{k-1}
    budget: float  # (pi/phi)^{k-1} * log q, constant 1 convention
    ok: bool  # margin >= -budget


def verify_moment_inequality(table: PrimeTable, x: int, q: int, k: int) -> InequalityMargin:
    """Margin of the k-th moment over its main term, with the error budget.

    Both sums run over all residue classes.  The budget constant is fixed
    at 1 (artifact convention; the true implied constant is unspecified,
    so a negative ok flag is a report, not a failure).  Intended for
    q <= x/log^2 x, not enforced.
    """
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    a_k = moment_sum(table, x, q, k)
    a_prev = moment_sum(table, x, q, k - 1)
    pi_x = table.pi(x)
    phi = sum(1 for a in range(q) if math.gcd(a, q) == 1)
    main = pi_x / phi * a_prev
    margin = a_k - main
    budget = (pi_x / phi) ** (k - 1) * math.log(q) if q > 1 else 0.0
    return InequalityMargin(margin=margin, budget=budget, ok=margin >= -budget)


@dataclass(frozen=True)
class MomentReport:
    x: int
    q: int
    k: int
    a_k: int  # coprime-class moment sum
    full_sum: int  # all-class moment sum
    b_k: float  # a_k - (pi/phi) a_{k-1}, coprime classes
    distinct_sums: tuple[int, ...]  # distinct_tuple_sum for j = 1..k
    identity_ok: bool
    inequality_margin: float | None  # None for k < 2

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "q": self.q,
            "k": self.k,
            "a_k": self.a_k,
            "full_sum": self.full_sum,
            "b_k": self.b_k,
            "distinct_sums": list(self.distinct_sums),
            "identity_ok": self.identity_ok,
            "inequality_margin": self.inequality_margin,
        }


def moment_report(table: PrimeTable, x: int, q: int, k: int) -> MomentReport:
    a_k = moment_sum(table, x, q, k, coprime_only=True)
    a_prev = moment_sum(table, x, q, k - 1, coprime_only=True)
    phi = sum(1 for a in range(q) if math.gcd(a, q) == 1)
    b_k = a_k - table.pi(x) / phi * a_prev
    ok, _ = verify_power_identity(table, x, q, k)
    margin = verify_moment_inequality(table, x, q, k).margin if k >= 2 else None
    return MomentReport(
        x=x,
        q=q,
        k=k,
        a_k=a_k,
        full_sum=moment_sum(table, x, q, k),
        b_k=b_k,
        distinct_sums=tuple(distinct_tuple_sum(table, x, q, j) for j in range(1, k + 1)),
        identity_ok=ok,
        inequality_margin=margin,
    )


def report_to_json(report: MomentReport, path: str | os.PathLike, config: dict | None = None) -> None:
    payload = {"report": report.to_dict()}
    if config is not None:
        payload["config"] = config
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
