"""Prime enumeration, gap streams, and first-occurrence gap records.

All range scans are segmented: a block of SEGMENT integers is sieved at a
time, so memory stays flat no matter how far the scan runs. Results are
independent of the segmentation (tested), which is what makes the segments
safe to shard.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

from gapforge import kernels
from gapforge.errors import FactorBudgetExceeded, RangeTooLarge

SEGMENT = 1 << 20
# Largest byte count sieve_range may materialize in one piece.
MEMORY_BUDGET = 1 << 27
# Native width accepted by the deterministic primality test.
NATIVE_WIDTH = 1 << 64

# Witnesses proving primality for every n < 3317044064679887385961981,
# which covers the full 64-bit range (Sorenson and Webster).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TINY_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class GapSample(NamedTuple):
    """Gap d following the prime p; index_hint is an optional ordinal."""

    p: int
    d: int
    index_hint: int | None = None


@dataclass(frozen=True)
class SieveSegment:
    """Materialized primality bytes for [lo, hi)."""

    lo: int
    hi: int
    bits: bytes

    def __contains__(self, n: int) -> bool:
        if not self.lo <= n < self.hi:
            raise ValueError(f"{n} outside segment [{self.lo}, {self.hi})")
        return bool(self.bits[n - self.lo])

    def primes(self) -> list[int]:
        return kernels.extract_primes(self.bits, self.lo)

    def count(self) -> int:
        return kernels.count_primes(self.bits)


# ---------------------------------------------------------------------------
# base primes for segmented marking

_base_limit = 4
_base_cache: list[int] = [2, 3]


def _base_primes(limit: int) -> list[int]:
    """All primes <= limit, grown on demand and cached."""
    global _base_limit, _base_cache
    if limit > _base_limit:
        new_limit = max(limit, 2 * _base_limit)
        sieve = bytearray(b"\x01" * (new_limit + 1))
        sieve[0:2] = b"\x00\x00"
        for p in range(2, math.isqrt(new_limit) + 1):
            if sieve[p]:
                sieve[p * p :: p] = b"\x00" * ((new_limit - p * p) // p + 1)
        _base_cache = [i for i, b in enumerate(sieve) if b]
        _base_limit = new_limit
    return list(itertools.takewhile(lambda p: p <= limit, _base_cache))


def _segments(lo: int, hi: int, segment: int = SEGMENT) -> Iterator[tuple[int, bytes]]:
    base = _base_primes(math.isqrt(hi - 1)) if hi > 4 else [2]
    for seg_lo in range(lo, hi, segment):
        seg_hi = min(seg_lo + segment, hi)
        yield seg_lo, kernels.sieve_block(seg_lo, seg_hi, base)


# ---------------------------------------------------------------------------
# public range operations


def sieve_range(lo: int, hi: int, *, budget: int = MEMORY_BUDGET) -> SieveSegment:
    """Materialize primality for [lo, hi) as one SieveSegment."""
    if not 0 <= lo < hi:
        raise ValueError(f"need 0 <= lo < hi, got [{lo}, {hi})")
    if hi > NATIVE_WIDTH:
        raise RangeTooLarge(f"hi={hi} exceeds the native width {NATIVE_WIDTH}")
    if hi - lo > budget:
        raise RangeTooLarge(f"range of {hi - lo} bytes exceeds budget {budget}")
    chunks = [bits for _, bits in _segments(lo, hi)]
    return SieveSegment(lo, hi, b"".join(chunks))


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit as a list (cached, grown on demand)."""
    if limit < 2:
        return []
    return _base_primes(limit)


def iter_primes(lo: int, hi: int) -> Iterator[int]:
    """Primes p with lo <= p < hi, ascending, flat memory."""
    if hi > NATIVE_WIDTH:
        raise RangeTooLarge(f"hi={hi} exceeds the native width {NATIVE_WIDTH}")
    for seg_lo, bits in _segments(max(lo, 0), max(hi, 0)):
        yield from kernels.extract_primes(bits, seg_lo)


def prime_count(x: int) -> int:
    """pi(x): number of primes <= x."""
    if x < 2:
        return 0
    if x + 1 > NATIVE_WIDTH:
        raise RangeTooLarge(f"x={x} exceeds the native width {NATIVE_WIDTH}")
    return sum(kernels.count_primes(bits) for _, bits in _segments(2, x + 1))


def gaps_in(lo: int, hi: int) -> Iterator[GapSample]:
    """Gaps between consecutive primes that both lie in [lo, hi].

    Segment boundaries inside the range never split a gap: the stream joins
    the last prime of one block to the first prime of the next.
    """
    if lo >= hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    prev = None
    for p in iter_primes(max(lo, 2), hi + 1):
        if prev is not None:
            yield GapSample(prev, p - prev)
        prev = p


def max_gap_records(limit: int) -> list[GapSample]:
    """First-occurrence record gaps among gaps starting at primes <= limit.

    The gap of the last prime <= limit is measured by extending the scan to
    the next prime beyond limit.
    """
    if limit < 3:
        raise ValueError("need limit >= 3 so at least one gap exists")
    records: list[GapSample] = []
    best = 0
    prev = None
    for p in iter_primes(2, limit + 1):
        if prev is not None and p - prev > best:
            best = p - prev
            records.append(GapSample(prev, best))
        prev = p
    # close the gap at the final prime by extension beyond limit
    lo = prev + 1
    while True:
        nxt = next(iter_primes(lo, lo + SEGMENT), None)
        if nxt is not None:
            if nxt - prev > best:
                records.append(GapSample(prev, nxt - prev))
            return records
        lo += SEGMENT


# ---------------------------------------------------------------------------
# deterministic primality and factorization


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n below 2**64."""
    if n >= NATIVE_WIDTH:
        raise ValueError(f"n={n} exceeds the native width {NATIVE_WIDTH}")
    if n < 2:
        return False
    for p in _TINY_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, budget: int) -> int:
    """A nontrivial factor of composite odd n, or 0 if the budget ran out."""
    for c in range(1, 64):
        y, m, spent = 2, 128, 0
        g = r = q = 1
        while g == 1 and spent < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            spent += r
        if g == n:  # backtrack one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return 0


def factorize(n: int, *, trial_bound: int = 100_000, budget: int = 1 << 22) -> dict[int, int]:
    """Prime factorization as {p: exponent}.

    Trial division up to trial_bound, then Pollard-Brent on cofactors below
    the native width. A cofactor that resists raises FactorBudgetExceeded.
    """
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out: dict[int, int] = {}
    for p in _base_primes(min(trial_bound, math.isqrt(n) + 1)):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m < NATIVE_WIDTH and is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack += [root, root]
            continue
        if m >= NATIVE_WIDTH:
            raise FactorBudgetExceeded(f"cofactor {m} exceeds the supported width")
        g = _pollard_brent(m, budget)
        if not g:
            raise FactorBudgetExceeded(f"no factor of {m} within budget")
        stack += [g, m // g]
    return out
