"""Searches for the most frequent prime gaps and difference patterns.

Two search modes.  Exhaustive sweeps every admissible difference set and is
limited to small (k, x): k = 1 runs off the full pair histogram, k in
{2, 3} run a depth-first sweep over d_1 < d_2 < ... where the set of
admissible start primes is intersected one difference at a time; a branch
dies as soon as its surviving-prime count drops below the incumbent, and
the last level is evaluated for all candidates at once by cross
correlation.  Pruned mode evaluates only the primorial-structured family
d * D' and is a heuristic search: counts are still exact, only coverage is
restricted.  Ties are returned in full, lexicographically sorted.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .counting import DifferenceSet, count_tuple, gap_histogram, pair_difference_histogram
from .errors import InsufficientPrimesError, SearchLimitError
from .sieve import BOUND_CEILING, PrimeTable
from .singular import primorials_up_to

DEFAULT_EXHAUSTIVE_LIMITS = {1: BOUND_CEILING, 2: 10**5, 3: 5 * 10**3}
DEFAULT_M_MAX = 30


@dataclass(frozen=True)
class ChampionRecord:
    x: int
    k: int
    winners: tuple[DifferenceSet, ...]  # all maximizers, lexicographic
    max_count: int
    runners_up: tuple[tuple[DifferenceSet, int], ...]
    mode: str
    search_space: str

    @property
    def d_star(self) -> int:
        """gcd of the first winner's differences."""
        return self.winners[0].gcd

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "k": self.k,
            "winners": [list(w.elements) for w in self.winners],
            "max_count": self.max_count,
            "runners_up": [[list(d.elements), c] for d, c in self.runners_up],
            "mode": self.mode,
            "search_space": self.search_space,
            "gcd": self.d_star,
        }


def jumping_champion(table: PrimeTable, x: int) -> ChampionRecord:
    """Most frequent consecutive-prime gap up to x, with all ties."""
    hist = gap_histogram(table, x)
    runners = sorted(
        ((d, c) for d, c in hist.counts.items() if c < hist.max_count),
        key=lambda t: (-t[1], t[0]),
    )
    return ChampionRecord(
        x=x,
        k=1,
        winners=tuple(DifferenceSet((d,)) for d in hist.argmax),
        max_count=hist.max_count,
        runners_up=tuple((DifferenceSet((d,)), c) for d, c in runners[:5]),
        mode="exhaustive",
        search_space="consecutive prime gaps",
    )


def _runner_list(
    pool: Iterable[tuple[int, tuple[int, ...]]], winners: set[tuple[int, ...]], n: int
) -> tuple[tuple[DifferenceSet, int], ...]:
    seen = {}
    for count, els in pool:
        if els not in winners and count > 0:
            seen[els] = count
    ordering = sorted(seen.items(), key=lambda t: (-t[1], t[0]))
    return tuple((DifferenceSet(els), c) for els, c in ordering[:n])


def _exhaustive_k1(table: PrimeTable, x: int, runner_count: int) -> ChampionRecord:
    counts = pair_difference_histogram(table, x, max(1, x - 2))
    mx = int(counts.max())
    winners = tuple(int(d) for d in np.flatnonzero(counts == mx))
    pool = [(int(counts[d]), (int(d),)) for d in range(1, len(counts))]
    return ChampionRecord(
        x=x,
        k=1,
        winners=tuple(DifferenceSet((d,)) for d in winners),
        max_count=mx,
        runners_up=_runner_list(pool, {(d,) for d in winners}, runner_count),
        mode="exhaustive",
        search_space=f"all single differences 1..{x - 2}",
    )


def _shifted(flags: np.ndarray, d: int) -> np.ndarray:
    out = np.zeros(flags.size, dtype=bool)
    out[: flags.size - d] = flags[d:]
    return out


def _exhaustive_multi(
    table: PrimeTable, x: int, k: int, runner_count: int, seed: int
) -> ChampionRecord:
    flags = table.flags_bool(x)
    fftn = 1 << (2 * (x + 1) - 1).bit_length()
    spec = np.fft.rfft(flags.astype(np.float64), fftn)

    best = seed
    pool: list[tuple[int, tuple[int, ...]]] = []
    runner_pool: list[tuple[int, tuple[int, ...]]] = []

    def correlate(prefix: np.ndarray) -> np.ndarray:
        a = np.fft.rfft(prefix.astype(np.float64), fftn)
        return np.rint(np.fft.irfft(a.conj() * spec, fftn)[: x + 1]).astype(np.int64)

    def final_level(prefix: np.ndarray, chosen: tuple[int, ...]) -> None:
        nonlocal best
        counts = correlate(prefix)
        lo = chosen[-1] + 1
        view = counts[lo:]
        if view.size == 0:
            return
        floor = max(best, 1)
        for d in np.flatnonzero(view >= floor):
            pool.append((int(view[d]), chosen + (lo + int(d),)))
        local = int(view.max())
        if local > best:
            best = local
        if runner_count:
            r = min(runner_count, view.size)
            top = np.argpartition(view, -r)[-r:]
            for d in top:
                if view[d] > 0:
                    runner_pool.append((int(view[d]), chosen + (lo + int(d),)))

    def descend(prefix: np.ndarray, chosen: tuple[int, ...]) -> None:
        if len(chosen) == k - 1:
            final_level(prefix, chosen)
            return
        start = chosen[-1] + 1 if chosen else 1
        for d in range(start, x - 1):
            nxt = prefix & _shifted(flags, d)
            if int(np.count_nonzero(nxt)) < best:
                continue
            descend(nxt, chosen + (d,))

    descend(flags.copy(), ())

    winner_els = sorted({els for c, els in pool if c == best})
    if not winner_els:
        raise RuntimeError("exhaustive sweep found no positive count")  # pragma: no cover
    return ChampionRecord(
        x=x,
        k=k,
        winners=tuple(DifferenceSet(els) for els in winner_els),
        max_count=best,
        runners_up=_runner_list(
            pool + runner_pool, set(winner_els), runner_count
        ),
        mode="exhaustive",
        search_space=f"all difference sets d_1<..<d_{k} within 1..{x - 2}",
    )


def _pruned_candidates(x: int, k: int, m_max: int, pattern_bound: int) -> list[tuple[int, ...]]:
    bases = sorted(
        {
            m * pr.value
            for pr in primorials_up_to(x)
            for m in range(1, m_max + 1)
            if m * pr.value < x
        }
    )
    patterns = [
        pat for pat in combinations(range(1, pattern_bound + 1), k) if math.gcd(*pat) == 1
    ]
    out = []
    for d in bases:
        for pat in patterns:
            if d * pat[-1] < x:
                out.append(tuple(d * e for e in pat))
    return out


def _admissible(els: tuple[int, ...], k: int) -> bool:
    """Reject sets covering all residues mod a prime <= k+1 (singular series 0)."""
    pts = (0,) + els
    for p in (2, 3, 5, 7, 11):
        if p > k + 1:
            return True
        if len({v % p for v in pts}) == p:
            return False
    return True


def _pruned(
    table: PrimeTable,
    x: int,
    k: int,
    runner_count: int,
    m_max: int,
    pattern_bound: int,
    threads: int,
) -> ChampionRecord:
    cands = [els for els in _pruned_candidates(x, k, m_max, pattern_bound) if _admissible(els, k)]
    space = (
        f"d*D' with d = m*primorial (primorial <= {x}, m <= {m_max}), "
        f"D' subset of 1..{pattern_bound}, |D'| = {k}, gcd(D') = 1"
    )
    if not cands:
        raise SearchLimitError(f"pruned family empty for x={x}, k={k}")

    def evaluate(els: tuple[int, ...]) -> int:
        return count_tuple(table, x, DifferenceSet(els))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            counts = list(ex.map(evaluate, cands, chunksize=64))
    else:
        counts = [evaluate(els) for els in cands]

    best = max(counts)
    winner_els = sorted(els for els, c in zip(cands, counts) if c == best)
    return ChampionRecord(
        x=x,
        k=k,
        winners=tuple(DifferenceSet(els) for els in winner_els),
        max_count=best,
        runners_up=_runner_list(zip(counts, cands), set(winner_els), runner_count),
        mode="pruned",
        search_space=space,
    )


def find_pdc(
    table: PrimeTable,
    x: int,
    k: int,
    mode: str = "exhaustive",
    *,
    limits: dict[int, int] | None = None,
    runner_count: int = 5,
    m_max: int = DEFAULT_M_MAX,
    pattern_bound: int | None = None,
    threads: int = 1,
) -> ChampionRecord:
    """Difference sets of size k with the most occurrences among primes <= x.

    Exhaustive mode is complete within its (k, x) limits; pruned mode scans
    the primorial-structured candidate family only, so its winner is a
    lower-bound certificate, not a proven champion.  Counts are exact in
    both modes.
    """
    table._check_range(x)
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if table.pi(x) < k + 1:
        raise InsufficientPrimesError(
            f"need at least {k + 1} primes up to {x}, have {table.pi(x)}"
        )
    if mode == "exhaustive":
        lims = DEFAULT_EXHAUSTIVE_LIMITS if limits is None else limits
        if k not in lims:
            raise SearchLimitError(
                f"exhaustive search supports k in {sorted(lims)}; use pruned mode for k={k}"
            )
        if x > lims[k]:
            raise SearchLimitError(
                f"exhaustive search for k={k} limited to x <= {lims[k]}; "
                f"got x={x}; raise the limit explicitly or use pruned mode"
            )
        if k == 1:
            return _exhaustive_k1(table, x, runner_count)
        seed = 0
        for els in _pruned_candidates(x, k, 6, 4 * k):
            if _admissible(els, k):
                seed = max(seed, count_tuple(table, x, DifferenceSet(els)))
        return _exhaustive_multi(table, x, k, runner_count, seed)
    if mode == "pruned":
        return _pruned(
            table, x, k, runner_count, m_max, pattern_bound or 12 * k, threads
        )
    raise ValueError(f"unknown mode {mode!r}")


def champion_scan(
    table: PrimeTable,
    x_grid: Sequence[int],
    k: int,
    mode: str = "exhaustive",
    **kwargs,
) -> list[ChampionRecord]:
    """find_pdc across an ascending grid of x values, one record each."""
    return [find_pdc(table, x, k, mode, **kwargs) for x in x_grid]


def records_to_csv(
    records: Sequence[ChampionRecord], path: str | os.PathLike | None = None
) -> str:
    """CSV schema x,k,mode,max_count,winners,gcd,runner_ups.

    Winners are semicolon-joined comma-separated difference lists; the gcd
    column is d* of the first winner.  Returns the CSV text; writes it to
    path when one is given.
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "k", "mode", "max_count", "winners", "gcd", "runner_ups"])
    for r in records:
        winners = ";".join(",".join(str(d) for d in ds.elements) for ds in r.winners)
        runners = ";".join(
            ",".join(str(d) for d in ds.elements) + f":{c}" for ds, c in r.runners_up
        )
        w.writerow([r.x, r.k, r.mode, r.max_count, winners, r.d_star, runners])
    text = buf.getvalue()
    if path is not None:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    return text


def records_to_json(
    records: Sequence[ChampionRecord], path: str | os.PathLike, config: dict | None = None
) -> None:
    payload = {"records": [r.to_dict() for r in records]}
    if config is not None:
        payload["config"] = config
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
