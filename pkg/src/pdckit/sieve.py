"""Bit-packed segmented prime sieve with residue-class counting queries.

Storage is odd-only: bit j of the packed array corresponds to the odd
number 3 + 2j, packed little-endian (least-significant bit of byte 0 is 3).
The prime 2 is implicit.  Tables are immutable once built and can be saved
to / loaded from a small cache file (magic "PDCS", version 0x01, 8-byte
little-endian bound, then the packed bits).  The loader never trusts a
stored count; pi is recomputed from the bits on load.
"""

from __future__ import annotations

import math
import os
import struct
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import CacheFormatError, MemoryBudgetError, SieveRangeError

BOUND_CEILING = 2**32 - 1
DEFAULT_SEGMENT_BITS = 1 << 22  # odd entries per segment; must stay a multiple of 8
DEFAULT_MEMORY_BUDGET = 2 << 30  # bytes

_MAGIC = b"PDCS"
_VERSION = 1

_POPCOUNT = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint16)


def _dense_flags(limit: int) -> np.ndarray:
    """Boolean primality flags on [0, limit] by a plain dense sieve."""
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def _odd_base_primes(limit: int) -> list[int]:
    if limit < 3:
        return []
    flags = _dense_flags(limit)
    return [int(p) for p in np.flatnonzero(flags) if p > 2]


def _sieve_segment(lo: int, hi: int, base: list[int]) -> np.ndarray:
    """Packed primality bits for odd-index range [lo, hi); index i <-> 3 + 2i."""
    seg = np.ones(hi - lo, dtype=bool)
    lo_val = 3 + 2 * lo
    hi_val = 3 + 2 * (hi - 1)
    for p in base:
        start = p * p
        if start > hi_val:
            break
        if start < lo_val:
            start = ((lo_val + p - 1) // p) * p
            if start % 2 == 0:
                start += p
        if start > hi_val:
            continue
        seg[(start - 3) // 2 - lo :: p] = False
    return np.packbits(seg, bitorder="little")


class PrimeTable:
    """Immutable prime membership table over [2, bound]."""

    def __init__(self, bound: int, bits: np.ndarray, count: int):
        self.bound = bound
        self.count = count  # pi(bound)
        self._bits = bits
        self._bits.setflags(write=False)
        self._bits_bytes: bytes | None = None
        self._primes: np.ndarray | None = None
        self._mask_cache: tuple[int, int] | None = None

    @property
    def bits(self) -> np.ndarray:
        """Packed odd-only membership bits (read-only view)."""
        return self._bits

    # -- scalar and bulk membership -------------------------------------

    def _check_range(self, x: int) -> None:
        if x < 2 or x > self.bound:
            raise SieveRangeError(f"query {x} outside table range [2, {self.bound}]")

    def is_prime(self, n: int) -> bool:
        if n > self.bound:
            raise SieveRangeError(f"query {n} beyond table bound {self.bound}")
        if n < 3:
            return n == 2
        if n % 2 == 0:
            return False
        if self._bits_bytes is None:
            self._bits_bytes = self._bits.tobytes()
        j = (n - 3) >> 1
        return bool((self._bits_bytes[j >> 3] >> (j & 7)) & 1)

    def is_prime_bulk(self, values: np.ndarray) -> np.ndarray:
        """Vectorized membership for an int array; all values must be <= bound."""
        v = np.asarray(values, dtype=np.int64)
        if v.size and int(v.max()) > self.bound:
            raise SieveRangeError(f"bulk query beyond table bound {self.bound}")
        out = np.zeros(v.shape, dtype=bool)
        out[v == 2] = True
        odd = (v >= 3) & ((v & 1) == 1)
        idx = (v[odd] - 3) >> 1
        out[odd] = ((self._bits[idx >> 3] >> (idx & 7)) & 1).astype(bool)
        return out

    # -- prime enumeration ----------------------------------------------

    def primes(self) -> np.ndarray:
        """Ascending int64 array of every prime <= bound (materialized lazily)."""
        if self._primes is None:
            n_bits = (self.bound - 1) // 2
            chunks = [np.array([2], dtype=np.int64)]
            step = 1 << 23
            for lo in range(0, n_bits, step):
                n = min(step, n_bits - lo)
                bits = np.unpackbits(
                    self._bits[lo >> 3 : (lo + n + 7) >> 3], bitorder="little", count=n
                )
                chunks.append(3 + 2 * (lo + np.flatnonzero(bits).astype(np.int64)))
            self._primes = np.concatenate(chunks)
        return self._primes

    def primes_up_to(self, x: int) -> np.ndarray:
        if x < 2:
            return np.empty(0, dtype=np.int64)
        self._check_range(x)
        p = self.primes()
        return p[: int(np.searchsorted(p, x, side="right"))]

    def pi(self, x: int) -> int:
        if x < 2:
            return 0
        self._check_range(x)
        return int(np.searchsorted(self.primes(), x, side="right"))

    # -- dense representations for the counting layer -------------------

    def flags_bool(self, x: int) -> np.ndarray:
        """Boolean primality flags on [0, x]."""
        self._check_range(x)
        flags = np.zeros(x + 1, dtype=bool)
        flags[2] = True
        n = (x - 1) // 2
        if n > 0:
            odd = np.unpackbits(self._bits[: (n + 7) >> 3], bitorder="little", count=n)
            flags[3 : 3 + 2 * n : 2] = odd.astype(bool)
        return flags

    def prime_mask_int(self, x: int) -> int:
        """Primality bitmask as a Python int: bit n set iff n <= x is prime."""
        self._check_range(x)
        if self._mask_cache is not None and self._mask_cache[0] == x:
            return self._mask_cache[1]
        parts = []
        step = 1 << 24  # values per chunk, multiple of 8
        for lo in range(0, x + 1, step):
            hi = min(lo + step, x + 1)
            chunk = np.zeros(hi - lo, dtype=bool)
            if lo <= 2 < hi:
                chunk[2 - lo] = True
            first_odd = max(3, lo + ((lo + 1) & 1))
            if first_odd < hi:
                j0 = (first_odd - 3) >> 1
                cnt = (hi - 1 - first_odd) // 2 + 1
                odd = np.unpackbits(
                    self._bits[j0 >> 3 : (j0 + cnt + 7) >> 3],
                    bitorder="little",
                    count=(j0 & 7) + cnt,
                )[(j0 & 7) :]
                chunk[first_odd - lo :: 2] = odd.astype(bool)
            parts.append(np.packbits(chunk, bitorder="little").tobytes())
        mask = int.from_bytes(b"".join(parts), "little")
        self._mask_cache = (x, mask)
        return mask

    # -- cache file ------------------------------------------------------

    def save(self, path: str | os.PathLike) -> None:
        with open(path, "wb") as fh:
            fh.write(_MAGIC)
            fh.write(bytes([_VERSION]))
            fh.write(struct.pack("<Q", self.bound))
            fh.write(self._bits.tobytes())

    @classmethod
    def load(cls, path: str | os.PathLike) -> "PrimeTable":
        with open(path, "rb") as fh:
            blob = fh.read()
        if blob[:4] != _MAGIC:
            raise CacheFormatError(f"{path}: bad magic {blob[:4]!r}")
        if len(blob) < 13 or blob[4] != _VERSION:
            raise CacheFormatError(f"{path}: unsupported version")
        bound = struct.unpack("<Q", blob[5:13])[0]
        if bound < 2 or bound > BOUND_CEILING:
            raise CacheFormatError(f"{path}: bound {bound} out of range")
        n_bits = (bound - 1) // 2
        n_bytes = (n_bits + 7) // 8
        if len(blob) != 13 + n_bytes:
            raise CacheFormatError(f"{path}: payload length mismatch for bound {bound}")
        bits = np.frombuffer(blob, dtype=np.uint8, offset=13).copy()
        pad = n_bytes * 8 - n_bits
        if pad and (int(bits[-1]) >> (8 - pad)):
            raise CacheFormatError(f"{path}: nonzero padding bits")
        count = 1 + int(_POPCOUNT[bits].sum(dtype=np.int64)) if n_bytes else 1
        return cls(int(bound), bits, count)


def build_table(
    x: int,
    *,
    segment_bits: int = DEFAULT_SEGMENT_BITS,
    threads: int | None = None,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
) -> PrimeTable:
    """Sieve [2, x] and return a PrimeTable.

    segment_bits is the number of odd entries processed per segment and must
    be a positive multiple of 8 so segments pack to whole bytes.  Threads
    work on disjoint byte ranges, so the result is identical for any thread
    count.
    """
    if not isinstance(x, int):
        raise SieveRangeError(f"bound must be an integer, got {type(x).__name__}")
    if x < 2 or x > BOUND_CEILING:
        raise SieveRangeError(f"bound {x} outside [2, {BOUND_CEILING}]")
    if segment_bits <= 0 or segment_bits % 8:
        raise ValueError("segment_bits must be a positive multiple of 8")
    if threads is None:
        threads = os.cpu_count() or 1
    threads = max(1, threads)

    n_bits = (x - 1) // 2
    n_bytes = (n_bits + 7) // 8
    estimate = n_bytes + 2 * segment_bits * threads + 16 * (math.isqrt(x) + 1)
    if estimate > memory_budget:
        raise MemoryBudgetError(
            f"sieve of {x} needs about {estimate} bytes, over the "
            f"memory budget of {memory_budget} bytes"
        )

    base = _odd_base_primes(math.isqrt(x))
    bits = np.zeros(n_bytes, dtype=np.uint8)
    spans = [(lo, min(lo + segment_bits, n_bits)) for lo in range(0, n_bits, segment_bits)]

    def run(span: tuple[int, int]) -> tuple[int, np.ndarray]:
        lo, hi = span
        return lo >> 3, _sieve_segment(lo, hi, base)

    if threads > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, spans))
    else:
        results = [run(s) for s in spans]
    for off, packed in results:
        bits[off : off + len(packed)] = packed

    count = 1 + int(_POPCOUNT[bits].sum(dtype=np.int64)) if n_bytes else 1
    return PrimeTable(x, bits, count)


def prime_count_in_class(table: PrimeTable, x: int, q: int, a: int) -> int:
    """pi(x; q, a): primes p <= x with p = a (mod q).  a is reduced mod q."""
    if q < 1:
        raise ValueError(f"modulus must be >= 1, got {q}")
    table._check_range(x)
    p = table.primes_up_to(x)
    return int(np.count_nonzero(p % q == a % q))


_shared_limit = 0
_shared_primes = np.empty(0, dtype=np.int64)


def primes_array(limit: int) -> np.ndarray:
    """Cached ascending primes <= limit for module-internal consumers.

    Grows monotonically; callers must not mutate the returned view.
    """
    global _shared_limit, _shared_primes
    if limit < 2:
        return _shared_primes[:0]
    if limit > _shared_limit:
        target = max(limit, 2 * _shared_limit, 1 << 16)
        _shared_primes = np.flatnonzero(_dense_flags(target)).astype(np.int64)
        _shared_limit = target
    return _shared_primes[: int(np.searchsorted(_shared_primes, limit, side="right"))]
