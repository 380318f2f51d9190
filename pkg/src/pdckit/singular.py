"""Singular series Euler products, Mertens products, and primorials.

The singular series for a tuple T = {0} u D with |T| = m is

    prod_p (1 - 1/p)^(-m) * (1 - v(p)/p)

where v(p) is the number of distinct residues of T mod p.  For p not
dividing delta(T) the residues are all distinct, so v(p) = m and the factor
is generic.  The product is evaluated in the log domain with numpy
longdouble (80-bit extended on x86-64), exact residue counts up to the
last prime that can divide delta, generic factors up to a truncation point
Q chosen from the requested tolerance, and a certified bound on the
omitted tail:

    |log factor(p)| <= m^2 / p^2       for p >= 2m,
    sum_{p > Q} 1/p^2 < 1/Q            by integral comparison,

so the truncated value is within a relative expm1(m^2/Q) of the limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .counting import DifferenceSet
from .errors import ToleranceError
from .sieve import primes_array

# Largest truncation point the generic tail may request before erroring.
DEFAULT_FACTOR_BUDGET = 1 << 27

EULER_GAMMA = 0.5772156649015329


@dataclass(frozen=True)
class SingularValue:
    value: float
    truncation_prime: int  # last prime whose factor entered the product
    tail_bound: float  # certified relative bound on the omitted tail
    is_zero: bool


@dataclass(frozen=True)
class Primorial:
    index: int  # number of primes multiplied
    value: int


def _is_prime_int(p: int) -> bool:
    if p < 2:
        return False
    for q in range(2, math.isqrt(p) + 1):
        if p % q == 0:
            return False
    return True


def residue_count(points: Iterable[int], p: int) -> int:
    """Number of distinct residues of the point set mod a prime p."""
    pts = list(points)
    if not pts:
        raise ValueError("point set must be nonempty")
    if not _is_prime_int(p):
        raise ValueError(f"modulus {p} is not prime")
    return len({v % p for v in pts})


def delta(D: DifferenceSet | Iterable[int]) -> int:
    """Product of all pairwise differences; exact integer.

    A DifferenceSet carries an implicit 0; a plain iterable is taken as the
    literal point set.
    """
    if isinstance(D, DifferenceSet):
        return D.delta
    pts = sorted(set(int(v) for v in D))
    out = 1
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            out *= pts[j] - pts[i]
    return out


def singular_series(
    points: Iterable[int],
    tolerance: float = 1e-6,
    *,
    factor_budget: int = DEFAULT_FACTOR_BUDGET,
) -> SingularValue:
    """Evaluate the singular series of a tuple containing 0.

    tolerance is relative; the returned tail_bound certifies the truncation
    and is strictly below it.  A tuple covering all residues mod some prime
    p <= |T| yields the exact value 0 with tail_bound 0.
    """
    pts = sorted({int(v) for v in points})
    if 0 not in pts:
        raise ValueError("tuple must contain 0")
    if not 0 < tolerance < 1:
        raise ValueError(f"tolerance must be in (0, 1), got {tolerance}")
    m = len(pts)
    if m == 1:
        return SingularValue(value=1.0, truncation_prime=2, tail_bound=0.0, is_zero=False)

    spread = pts[-1] - pts[0]
    # Primes dividing delta divide some pairwise difference, hence are <= spread.
    exact_cut = max(spread, m)
    need = max(exact_cut, 2 * m, math.ceil(2 * m * m / tolerance))
    if need > factor_budget:
        achievable = math.expm1(m * m / factor_budget)
        raise ToleranceError(
            f"tolerance {tolerance} needs primes up to {need}, over the factor "
            f"budget {factor_budget}; achievable tail bound {achievable:.3e}"
        )
    primes = primes_array(need)

    total = np.longdouble(0)
    head = primes[primes <= exact_cut]
    for p in head.tolist():
        v = len({d % p for d in pts})
        if v == p:
            return SingularValue(value=0.0, truncation_prime=p, tail_bound=0.0, is_zero=True)
        total += -m * np.log1p(np.longdouble(-1) / p) + np.log1p(np.longdouble(-v) / p)
    tail = primes[primes > exact_cut].astype(np.longdouble)
    if tail.size:
        total += (-m * np.log1p(-1 / tail) + np.log1p(-m / tail)).sum(dtype=np.longdouble)

    q = int(primes[-1]) if primes.size else 2
    return SingularValue(
        value=float(np.exp(total)),
        truncation_prime=q,
        tail_bound=float(math.expm1(m * m / need)),
        is_zero=False,
    )


def mertens_product(y: float) -> float:
    """prod_{p <= y} (1 - 1/p)^(-1), exact to longdouble rounding."""
    if y < 2:
        raise ValueError(f"need y >= 2, got {y}")
    p = primes_array(math.floor(y)).astype(np.longdouble)
    return float(np.exp(-np.log1p(-1 / p).sum(dtype=np.longdouble)))


def primorial_floor(x: float) -> Primorial:
    """Largest primorial <= x (x >= 2); exact integer ladder 2, 6, 30, ..."""
    if x < 2:
        raise ValueError(f"no primorial <= {x}; need x >= 2")
    value, index = 1, 0
    for p in _iter_primes():
        if value * p > x:
            break
        value *= p
        index += 1
    return Primorial(index=index, value=value)


def primorials_up_to(x: float) -> list[Primorial]:
    """All primorials p_1# ... p_n# with value <= x, ascending."""
    out = []
    value, index = 1, 0
    for p in _iter_primes():
        if value * p > x:
            break
        value *= p
        index += 1
        out.append(Primorial(index=index, value=value))
    return out


def _iter_primes():
    limit = 1 << 10
    idx = 0
    while True:
        arr = primes_array(limit)
        while idx < arr.size:
            yield int(arr[idx])
            idx += 1
        limit *= 4


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 by trial division, [(p, exponent), ...]."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    out = []
    rem = n
    for p in primes_array(math.isqrt(n)).tolist():
        if p * p > rem:
            break
        if rem % p == 0:
            e = 0
            while rem % p == 0:
                rem //= p
                e += 1
            out.append((p, e))
    if rem > 1:
        out.append((rem, 1))
    return out


def omega(n: int) -> int:
    """Number of distinct prime divisors."""
    return len(factorize(n))


def big_omega(n: int) -> int:
    """Number of prime divisors counted with multiplicity."""
    return sum(e for _, e in factorize(n))


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n))
