"""Consecutive-prime gap scanning: Andrica differences, records, first occurrences.

The Andrica difference of a prime pair (p, q) is sqrt(q) - sqrt(p).  It is
always evaluated in the quotient form

    (q - p) / (sqrt(q) + sqrt(p))

never as a direct subtraction of square roots: near 1.4e18 both roots are
about 1.19e9 and differ by ~6e-7, so the direct form cancels away all
significance while the quotient keeps full double precision (relative
error a few 1e-16, see the test suite's extended-precision checks).

All scanners share one vectorized fold over consecutive-prime pairs
(:func:`scan_gaps`), so a single pass over 10^9 serves record extraction,
the Andrica maximum, the running envelope, first occurrences and top-k at
once.  A pair (p, q) belongs to a scan with bound ``limit`` iff q < limit,
matching the strict inequality used by ``prime_count``.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

import numpy as np

from gaplab import sieve


def stable_sqrt_diff(p: int, q: int) -> float:
    """sqrt(q) - sqrt(p) via the cancellation-free quotient (q-p)/(sqrt(q)+sqrt(p))."""
    if q <= p:
        raise ValueError("need q > p")
    return (q - p) / (math.sqrt(q) + math.sqrt(p))


@dataclass(frozen=True)
class PrimeGap:
    """A consecutive-prime pair.  Consecutiveness is the constructor's contract;
    it is oracle-checked in tests, not revalidated here."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.q <= self.p:
            raise ValueError(f"gap pair needs q > p, got ({self.p}, {self.q})")
        if self.p == 2 and self.q != 3:
            raise ValueError("the only gap from 2 is (2, 3)")
        if self.p > 2 and (self.q - self.p) % 2:
            raise ValueError(f"odd gap between odd primes: ({self.p}, {self.q})")

    @property
    def d(self) -> int:
        return self.q - self.p


@dataclass(frozen=True)
class AndricaPoint:
    gap: PrimeGap
    a: float


@dataclass(frozen=True)
class GapRecord:
    """A maximal-gap record: gap g after p_L, closed by p_L1, with r = sqrt(p_L1)-sqrt(p_L)."""

    p_L: int
    p_L1: int
    g: int
    r: float

    def __post_init__(self) -> None:
        if self.p_L1 - self.p_L != self.g:
            raise ValueError(f"record gap mismatch: {self.p_L1} - {self.p_L} != {self.g}")


class TableSource(Enum):
    COMPUTED = "computed"
    REFERENCE = "reference"
    MERGED = "merged"


@dataclass(frozen=True)
class GapRecordTable:
    """Strictly increasing record list; ``limit`` is the bound below which it is exhaustive."""

    records: tuple[GapRecord, ...]
    source: TableSource
    limit: int

    def __post_init__(self) -> None:
        for prev, cur in zip(self.records, self.records[1:]):
            if cur.g <= prev.g or cur.p_L <= prev.p_L:
                raise ValueError(
                    f"records not strictly increasing at gap {cur.g} after {cur.p_L}"
                )

    def __len__(self) -> int:
        return len(self.records)


@dataclass(frozen=True)
class FirstOccurrence:
    d: int
    p_f: int


@dataclass(frozen=True)
class VerifyReport:
    all_below_one: bool
    max_a: float
    argmax_pair: PrimeGap | None
    count: int


@dataclass(frozen=True)
class GapScanResult:
    limit: int
    pair_count: int
    records: tuple[GapRecord, ...]
    envelope: tuple[tuple[int, float], ...]
    max_point: AndricaPoint | None
    first: dict[int, FirstOccurrence] | None = None
    top: tuple[AndricaPoint, ...] | None = None


def andrica_diff(gap: PrimeGap) -> float:
    """Andrica difference of a pair, quotient form (see module docstring)."""
    return stable_sqrt_diff(gap.p, gap.q)


def _pair_blocks(
    limit: int,
    *,
    segment_length: int | None = None,
    threads: int = 1,
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield (p, q) arrays of consecutive-prime pairs with q < limit.

    The last prime of each segment is carried into the next one so gaps
    spanning segment boundaries are never dropped.
    """
    prev: int | None = None
    for block in sieve.iter_prime_blocks(
        0, limit, segment_length=segment_length, threads=threads
    ):
        if block.size == 0:
            continue
        if prev is not None:
            block = np.concatenate(([prev], block))
        if block.size >= 2:
            yield block[:-1], block[1:]
        prev = int(block[-1])


def _walk_rising(values: np.ndarray, current: float) -> list[int]:
    """Indices where ``values`` sets successive new maxima above ``current``."""
    out: list[int] = []
    if values.size == 0:
        return out
    pos = 0
    while True:
        rest = values[pos:]
        above = np.nonzero(rest > current)[0]
        if above.size == 0:
            return out
        pos += int(above[0])
        current = values[pos]
        out.append(pos)
        pos += 1
        if pos >= values.size:
            return out


def scan_gaps(
    limit: int,
    *,
    top_k: int | None = None,
    collect_first: bool = False,
    segment_length: int | None = None,
    threads: int = 1,
) -> GapScanResult:
    """One fold over all consecutive-prime pairs with q < limit.

    Always produces the maximal-gap records and the running-maximum
    envelope of the Andrica difference; optionally also the first
    occurrence of every gap value and the ``top_k`` largest differences.
    """
    if limit < 3:
        raise ValueError("limit must be >= 3")
    count = 0
    records: list[GapRecord] = []
    record_g = 0
    envelope: list[tuple[int, float]] = []
    env_a = 0.0
    max_point: AndricaPoint | None = None
    first: dict[int, int] = {}
    candidates: list[tuple[float, int, int]] = []
    threshold = -math.inf

    for p, q in _pair_blocks(limit, segment_length=segment_length, threads=threads):
        d = q - p
        a = d / (np.sqrt(q.astype(np.float64)) + np.sqrt(p.astype(np.float64)))
        count += int(d.size)

        if int(d.max()) > record_g:
            for i in _walk_rising(d, record_g):
                rec = GapRecord(
                    p_L=int(p[i]), p_L1=int(q[i]), g=int(d[i]), r=float(a[i])
                )
                records.append(rec)
                record_g = rec.g

        if float(a.max()) > env_a:
            for i in _walk_rising(a, env_a):
                envelope.append((int(p[i]), float(a[i])))
                max_point = AndricaPoint(
                    gap=PrimeGap(int(p[i]), int(q[i])), a=float(a[i])
                )
            env_a = envelope[-1][1]

        if collect_first:
            uniq, idx = np.unique(d, return_index=True)
            for g, i in zip(uniq, idx):
                first.setdefault(int(g), int(p[i]))

        if top_k is not None:
            keep = np.nonzero(a >= threshold)[0]
            candidates.extend(
                (float(a[i]), int(p[i]), int(q[i])) for i in keep
            )
            candidates.sort(key=lambda t: (-t[0], t[1]))
            if len(candidates) > top_k:
                # keep everything tied with the k-th best so later ties resolve by p
                threshold = candidates[top_k - 1][0]
                cut = top_k
                while cut < len(candidates) and candidates[cut][0] == threshold:
                    cut += 1
                del candidates[cut:]
                threshold = candidates[top_k - 1][0] if len(candidates) >= top_k else -math.inf

    top = None
    if top_k is not None:
        top = tuple(
            AndricaPoint(gap=PrimeGap(p, q), a=a) for a, p, q in candidates[:top_k]
        )
    first_map = None
    if collect_first:
        first_map = {
            d: FirstOccurrence(d=d, p_f=pf) for d, pf in sorted(first.items())
        }
    return GapScanResult(
        limit=limit,
        pair_count=count,
        records=tuple(records),
        envelope=tuple(envelope),
        max_point=max_point,
        first=first_map,
        top=top,
    )


def gap_stream(
    limit: int,
    *,
    segment_length: int | None = None,
    threads: int = 1,
) -> Iterator[PrimeGap]:
    """Consecutive-prime pairs (p, q) with q < limit, ascending in p."""
    if limit < 3:
        raise ValueError("limit must be >= 3")
    for p, q in _pair_blocks(limit, segment_length=segment_length, threads=threads):
        for pi, qi in zip(p.tolist(), q.tolist()):
            yield PrimeGap(pi, qi)


def max_gap_records(limit: int, **kwargs) -> GapRecordTable:
    """The step function of record gaps: every pair whose gap beats all earlier ones."""
    result = scan_gaps(limit, **kwargs)
    return GapRecordTable(records=result.records, source=TableSource.COMPUTED, limit=limit)


def first_occurrences(limit: int, **kwargs) -> dict[int, FirstOccurrence]:
    """For every gap value occurring below limit, the smallest prime opening it."""
    result = scan_gaps(limit, collect_first=True, **kwargs)
    assert result.first is not None
    return result.first


def top_andrica(limit: int, k: int, **kwargs) -> list[AndricaPoint]:
    """The k largest Andrica differences among pairs with q < limit.

    Descending in the difference; exact float ties (possible only through
    rounding) order by smaller p.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    result = scan_gaps(limit, top_k=k, **kwargs)
    assert result.top is not None
    return list(result.top)


def empirical_R(table: GapRecordTable) -> list[tuple[int, float]]:
    """(x, R) per record: the sqrt-difference achieved at each record pair."""
    return [(rec.p_L, rec.r) for rec in table.records]


def andrica_envelope(limit: int, **kwargs) -> list[tuple[int, float]]:
    """Running maximum of the Andrica difference: the points where it increases."""
    return list(scan_gaps(limit, **kwargs).envelope)


def envelope_value(envelope: Sequence[tuple[int, float]], x: int) -> float:
    """Envelope value at x: the running maximum over pairs starting at p <= x."""
    i = bisect_right([p for p, _ in envelope], x)
    if i == 0:
        raise ValueError(f"envelope undefined below its first point ({x})")
    return envelope[i - 1][1]


def verify_andrica(limit: int, **kwargs) -> VerifyReport:
    """Check every Andrica difference below limit against 1.

    With no pairs below limit the report degenerates to max_a = 0 and no
    argmax pair.
    """
    result = scan_gaps(limit, **kwargs)
    if result.pair_count == 0 or result.max_point is None:
        return VerifyReport(all_below_one=True, max_a=0.0, argmax_pair=None, count=result.pair_count)
    return VerifyReport(
        all_below_one=result.max_point.a < 1.0,
        max_a=result.max_point.a,
        argmax_pair=result.max_point.gap,
        count=result.pair_count,
    )
