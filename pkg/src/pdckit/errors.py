"""Exception types shared across the package.

Usage errors (bad arguments) derive from ValueError, resource problems from
RuntimeError.  The CLI maps any of these to exit status 1; verification
verdict failures use exit status 3 and are not exceptions.
"""


class SieveRangeError(ValueError):
    """Query or build bound outside [2, ceiling] or beyond the table."""


class MemoryBudgetError(RuntimeError):
    """Estimated allocation exceeds the configured memory budget."""


class CacheFormatError(RuntimeError):
    """Sieve cache file has a bad magic, version, length, or padding."""


class EmptyHistogramError(ValueError):
    """Gap histogram requested below the smallest usable bound (x < 3)."""


class InsufficientPrimesError(ValueError):
    """Champion search needs at least k+1 primes up to x."""


class SearchLimitError(ValueError):
    """Exhaustive champion search requested beyond its configured limits."""


class ToleranceError(RuntimeError):
    """Requested truncation tolerance unreachable within the factor budget."""
