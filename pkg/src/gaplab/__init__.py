"""gaplab: prime gaps, Andrica differences, maximal-gap records and their predictors."""

from gaplab.gaps import (
    AndricaPoint,
    FirstOccurrence,
    GapRecord,
    GapRecordTable,
    GapScanResult,
    PrimeGap,
    TableSource,
    VerifyReport,
    andrica_diff,
    andrica_envelope,
    empirical_R,
    envelope_value,
    first_occurrences,
    gap_stream,
    max_gap_records,
    scan_gaps,
    stable_sqrt_diff,
    top_andrica,
    verify_andrica,
)
from gaplab.heuristics import (
    DEFAULT_CONSTANTS,
    DomainError,
    GapModel,
    GapModelKind,
    HeuristicConstants,
    RModel,
    RModelKind,
    TwinConstantEstimate,
    g_cramer,
    g_gauss,
    g_wolf,
    granville_bound,
    kernel_argmax,
    pf_shanks,
    pf_wolf,
    r_cramer_form,
    r_kernel,
    r_main,
    r_shanks,
    twin_constant,
)
from gaplab.reference import (
    ConsistencyError,
    ParseError,
    ReferenceTable,
    ReferenceTableError,
    ValidationError,
    load_bundled_table,
    merge_records,
    parse_reference_table,
    r_points_from_reference,
    serialize_reference_table,
)
from gaplab.sieve import (
    PrimeStream,
    RangeTooLargeError,
    Segment,
    is_prime,
    iter_prime_blocks,
    prime_count,
    prime_count_many,
    prime_index,
    primes_in_range,
)

__version__ = "0.1.0"

__all__ = [
    "AndricaPoint",
    "ConsistencyError",
    "DEFAULT_CONSTANTS",
    "DomainError",
    "FirstOccurrence",
    "GapModel",
    "GapModelKind",
    "GapRecord",
    "GapRecordTable",
    "GapScanResult",
    "HeuristicConstants",
    "ParseError",
    "PrimeGap",
    "PrimeStream",
    "RModel",
    "RModelKind",
    "RangeTooLargeError",
    "ReferenceTable",
    "ReferenceTableError",
    "Segment",
    "TableSource",
    "TwinConstantEstimate",
    "ValidationError",
    "VerifyReport",
    "andrica_diff",
    "andrica_envelope",
    "empirical_R",
    "envelope_value",
    "first_occurrences",
    "g_cramer",
    "g_gauss",
    "g_wolf",
    "gap_stream",
    "granville_bound",
    "is_prime",
    "iter_prime_blocks",
    "kernel_argmax",
    "load_bundled_table",
    "max_gap_records",
    "merge_records",
    "parse_reference_table",
    "pf_shanks",
    "pf_wolf",
    "prime_count",
    "prime_count_many",
    "prime_index",
    "primes_in_range",
    "r_cramer_form",
    "r_kernel",
    "r_main",
    "r_points_from_reference",
    "r_shanks",
    "scan_gaps",
    "serialize_reference_table",
    "stable_sqrt_diff",
    "top_andrica",
    "twin_constant",
    "verify_andrica",
    "__version__",
]
