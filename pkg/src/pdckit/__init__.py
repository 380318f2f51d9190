"""Exact counting and empirical study of prime difference configurations.

Core objects: a compact prime table (sieve), exact tuple counts and
difference histograms (counting), champion searches (champions), the
singular series with certified truncation (singular), logarithmic-integral
predictions (hardy_littlewood), moment identities (moments), and
theorem-level profiles of champions (verify).
"""

from .champions import ChampionRecord, champion_scan, find_pdc, jumping_champion
from .counting import (
    DifferenceSet,
    GapHistogram,
    count_tuple,
    count_tuple_oracle,
    gap_histogram,
    pair_difference_histogram,
)
from .errors import (
    CacheFormatError,
    EmptyHistogramError,
    InsufficientPrimesError,
    MemoryBudgetError,
    SearchLimitError,
    SieveRangeError,
    ToleranceError,
)
from .hardy_littlewood import Prediction, h_factor, li_k, li_upper, predict
from .moments import (
    MomentReport,
    distinct_tuple_sum,
    moment_report,
    moment_sum,
    stirling_coefficient,
    verify_moment_inequality,
    verify_power_identity,
    verify_tuple_link,
)
from .sieve import PrimeTable, build_table, prime_count_in_class
from .singular import (
    SingularValue,
    mertens_product,
    primorial_floor,
    primorials_up_to,
    singular_series,
)
from .verify import TheoremProfile, VerdictReport, profile, verdicts

__version__ = "0.1.0"

__all__ = [
    "CacheFormatError",
    "ChampionRecord",
    "DifferenceSet",
    "EmptyHistogramError",
    "GapHistogram",
    "InsufficientPrimesError",
    "MemoryBudgetError",
    "MomentReport",
    "Prediction",
    "PrimeTable",
    "SearchLimitError",
    "SieveRangeError",
    "SingularValue",
    "TheoremProfile",
    "ToleranceError",
    "VerdictReport",
    "build_table",
    "champion_scan",
    "count_tuple",
    "count_tuple_oracle",
    "distinct_tuple_sum",
    "find_pdc",
    "gap_histogram",
    "h_factor",
    "jumping_champion",
    "li_k",
    "li_upper",
    "mertens_product",
    "moment_report",
    "moment_sum",
    "pair_difference_histogram",
    "predict",
    "prime_count_in_class",
    "primorial_floor",
    "primorials_up_to",
    "profile",
    "singular_series",
    "stirling_coefficient",
    "verdicts",
    "verify_moment_inequality",
    "verify_power_identity",
    "verify_tuple_link",
    "__version__",
]
