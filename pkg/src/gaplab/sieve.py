"""Segmented sieve of Eratosthenes over 64-bit ranges.

The sieve works on odd numbers only, one byte-mask segment at a time, so a
scan to 10^9 or beyond never holds more than a couple of megabytes of mask.
Composite marking for 3, 5 and 7 is pre-baked into a tiled wheel pattern;
the remaining base primes are crossed off with strided numpy writes.

Conventions used throughout the package:

* ``prime_count(x)`` counts primes *strictly below* x.  The heuristics in
  :mod:`gaplab.heuristics` are calibrated to that definition, so an
  off-by-one here would silently skew every predictor built on top of it.
* ranges are half-open ``[lo, hi)``.

Segments are independent once the base primes (<= sqrt(hi)) are known, so
they may be sieved by a small thread pool; results are always delivered in
segment order, which keeps every consumer deterministic regardless of the
``threads`` setting.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_SEGMENT_LENGTH = 1 << 20  # odd entries per segment (spans ~2M integers)

MAX_SIEVE_BOUND = 2**63 - 1  # int64 internals; is_prime alone accepts full 64-bit
MAX_PRIME_INPUT = 2**64 - 1

# Strong-pseudoprime witnesses that decide primality for every n < 2^64
# (Sinclair's 7-witness set, see miller-rabin.appspot.com).
_MR_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)

# (p, inverse of 2 mod p) for the wheel primes baked into the segment init.
_WHEEL_PRIMES = ((3, 2), (5, 3), (7, 4))
_WHEEL = 105


class RangeTooLargeError(ValueError):
    """A single requested segment exceeds the memory budget."""


@dataclass(frozen=True)
class Segment:
    """Half-open slice ``[lo, hi)`` of the sieving range, ``index`` gives its ordinal."""

    lo: int
    hi: int
    index: int

    def __post_init__(self) -> None:
        if not 0 <= self.lo < self.hi:
            raise ValueError(f"invalid segment bounds [{self.lo}, {self.hi})")
        if self.index < 0:
            raise ValueError("segment index must be >= 0")


def _validate_range(lo: int, hi: int) -> None:
    if lo < 0 or hi < 0:
        raise ValueError("range bounds must be non-negative")
    if lo >= hi:
        raise ValueError(f"empty or reversed range [{lo}, {hi})")
    if hi > MAX_SIEVE_BOUND:
        raise ValueError(f"sieve range bound {hi} exceeds {MAX_SIEVE_BOUND}")


@lru_cache(maxsize=8)
def _base_primes(bound: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Primes <= bound as ((all primes), (primes >= 11)), via a plain sieve."""
    if bound < 2:
        return (), ()
    flags = np.ones(bound + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(bound) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    primes = tuple(int(p) for p in np.flatnonzero(flags))
    return primes, tuple(p for p in primes if p >= 11)


def _segments_for(lo: int, hi: int, segment_length: int) -> list[Segment]:
    span = 2 * segment_length
    return [
        Segment(lo=s, hi=min(s + span, hi), index=i)
        for i, s in enumerate(range(lo, hi, span))
    ]


def _odd_mask(lo: int, hi: int, marking_primes: Sequence[int]) -> tuple[int, np.ndarray]:
    """Primality mask over the odd values of ``[lo, hi)``.

    Returns ``(first, mask)`` where ``first`` is the first odd value and
    ``mask[i]`` tells whether ``first + 2*i`` survived.  ``marking_primes``
    must be the ascending odd base primes >= 11; multiples of 3, 5, 7 come
    from the wheel pattern.
    """
    first = lo | 1
    n = (hi - first + 1) // 2
    if n <= 0:
        return first, np.zeros(0, dtype=bool)

    pattern = np.ones(_WHEEL, dtype=bool)
    for p, inv2 in _WHEEL_PRIMES:
        start = (-first % p) * inv2 % p
        pattern[start::p] = False
    mask = np.tile(pattern, n // _WHEEL + 1)[:n]
    for v in (1, 3, 5, 7):  # wheel artifacts at the very bottom of the range
        if first <= v < hi:
            mask[(v - first) >> 1] = v != 1

    for p in marking_primes:
        sq = p * p
        if sq >= hi:
            break
        if sq >= lo:
            start = sq
        else:
            start = (lo + p - 1) // p * p
            if start % 2 == 0:
                start += p
            if start >= hi:
                continue
        mask[(start - first) >> 1 :: p] = False
    return first, mask


def _iter_masks(
    lo: int,
    hi: int,
    segment_length: int,
    threads: int,
) -> Iterator[tuple[Segment, int, np.ndarray]]:
    """Yield ``(segment, first_odd, mask)`` in segment order."""
    _, marking = _base_primes(math.isqrt(hi - 1))
    segments = _segments_for(lo, hi, segment_length)

    def work(seg: Segment) -> tuple[Segment, int, np.ndarray]:
        first, mask = _odd_mask(seg.lo, seg.hi, marking)
        return seg, first, mask

    if threads <= 1 or len(segments) < 2:
        for seg in segments:
            yield work(seg)
        return

    # Bounded look-ahead: keep at most 2*threads segments in flight so a slow
    # consumer never piles up hundreds of masks in memory.
    with ThreadPoolExecutor(max_workers=threads) as pool:
        pending = []
        it = iter(segments)
        for seg in it:
            pending.append(pool.submit(work, seg))
            if len(pending) >= 2 * threads:
                break
        while pending:
            done = pending.pop(0)
            nxt = next(it, None)
            if nxt is not None:
                pending.append(pool.submit(work, nxt))
            yield done.result()


def iter_prime_blocks(
    lo: int,
    hi: int,
    *,
    segment_length: int | None = None,
    threads: int = 1,
) -> Iterator[np.ndarray]:
    """Yield the primes of ``[lo, hi)`` as one ascending int64 array per segment."""
    _validate_range(lo, hi)
    segment_length = segment_length or DEFAULT_SEGMENT_LENGTH
    for seg, first, mask in _iter_masks(lo, hi, segment_length, threads):
        block = first + 2 * np.flatnonzero(mask)
        if seg.lo <= 2 < seg.hi:
            block = np.concatenate(([2], block))
        yield block


def primes_in_range(
    lo: int,
    hi: int,
    *,
    segment_length: int | None = None,
    threads: int = 1,
    auto_split: bool = True,
) -> np.ndarray:
    """All primes p with ``lo <= p < hi``, ascending, as an int64 array.

    Ranges wider than one segment are re-segmented internally unless
    ``auto_split`` is off, in which case they raise
    :class:`RangeTooLargeError`.
    """
    _validate_range(lo, hi)
    segment_length = segment_length or DEFAULT_SEGMENT_LENGTH
    if not auto_split and hi - lo > 2 * segment_length:
        raise RangeTooLargeError(
            f"range [{lo}, {hi}) spans more than one segment "
            f"({2 * segment_length} values) and auto_split is disabled"
        )
    blocks = list(
        iter_prime_blocks(lo, hi, segment_length=segment_length, threads=threads)
    )
    if not blocks:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate(blocks)


def prime_count(
    x: int,
    *,
    segment_length: int | None = None,
    threads: int = 1,
) -> int:
    """Number of primes strictly below x."""
    if x < 0:
        raise ValueError("x must be >= 0")
    if x <= 2:
        return 0
    segment_length = segment_length or DEFAULT_SEGMENT_LENGTH
    total = 1  # the prime 2
    for _, _, mask in _iter_masks(0, x, segment_length, threads):
        total += int(np.count_nonzero(mask))
    return total


def prime_count_many(
    xs: Iterable[int],
    *,
    segment_length: int | None = None,
    threads: int = 1,
) -> dict[int, int]:
    """``prime_count`` for every x in ``xs``, from a single sieve pass."""
    targets = sorted(set(int(x) for x in xs))
    if not targets:
        return {}
    if targets[0] < 0:
        raise ValueError("x must be >= 0")
    counts: dict[int, int] = {}
    while targets and targets[0] <= 2:
        counts[targets.pop(0)] = 0
    if not targets:
        return counts
    segment_length = segment_length or DEFAULT_SEGMENT_LENGTH
    running = 1  # the prime 2
    t = np.asarray(targets, dtype=np.int64)
    for seg, first, mask in _iter_masks(0, targets[-1], segment_length, threads):
        inside = t[(t > seg.lo) & (t <= seg.hi)]
        if inside.size:
            values = first + 2 * np.flatnonzero(mask)
            for x, c in zip(inside, np.searchsorted(values, inside, side="left")):
                counts[int(x)] = running + int(c)
        running += int(np.count_nonzero(mask))
    return counts


def prime_index(p: int, **kwargs) -> int:
    """1-based index of the prime p (2 -> 1, 3 -> 2, ...)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return prime_count(p, **kwargs) + 1


class PrimeStream:
    """Iterable view of every prime below ``limit``, in order.

    Iterating yields python ints; :meth:`blocks` exposes the underlying
    per-segment arrays for vectorized consumers.  Instances are stateless
    and can be iterated repeatedly or from several threads.
    """

    def __init__(
        self,
        limit: int,
        *,
        segment_length: int | None = None,
        threads: int = 1,
    ) -> None:
        _validate_range(0, limit)
        self.limit = limit
        self._segment_length = segment_length
        self._threads = threads

    def blocks(self) -> Iterator[np.ndarray]:
        return iter_prime_blocks(
            0,
            self.limit,
            segment_length=self._segment_length,
            threads=self._threads,
        )

    def __iter__(self) -> Iterator[int]:
        for block in self.blocks():
            yield from (int(p) for p in block)


def _miller_rabin(n: int) -> bool:
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_SMALL_SIEVE_BOUND = 1 << 16
_small_sieve_flags: np.ndarray | None = None


def is_prime(n: int) -> bool:
    """Exact deterministic primality for 0 <= n < 2^64.

    Sieve lookup below 2^16, deterministic Miller-Rabin witnesses above;
    the witness set is proven complete for all 64-bit inputs, so reference
    tables with entries near 1.4e18 validate exactly.
    """
    if n < 0 or n > MAX_PRIME_INPUT:
        raise ValueError("is_prime expects 0 <= n < 2^64")
    global _small_sieve_flags
    if n < _SMALL_SIEVE_BOUND:
        if _small_sieve_flags is None:
            flags = np.ones(_SMALL_SIEVE_BOUND, dtype=bool)
            flags[:2] = False
            for p in range(2, math.isqrt(_SMALL_SIEVE_BOUND) + 1):
                if flags[p]:
                    flags[p * p :: p] = False
            _small_sieve_flags = flags
        return bool(_small_sieve_flags[n])
    if n % 2 == 0:
        return False
    return _miller_rabin(n)
