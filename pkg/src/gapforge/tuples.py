"""Admissible tuples and deterministic prime-tuple placement.

A k-tuple of offsets is admissible when no prime has all of its residue
classes occupied by the offsets; only primes p <= k can possibly cover all
classes, so the check stops there. The discriminant delta is the product of
all pairwise differences; its radical (product of the distinct primes) is
what downstream residue systems must absorb.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from gapforge import primes as _primes
from gapforge.errors import NoPlacement


def is_admissible(h: Sequence[int]) -> bool:
    """True when for every prime p <= len(h) some class mod p is unoccupied."""
    k = len(h)
    for p in _primes.primes_up_to(k):
        if len({x % p for x in h}) == p:
            return False
    return True


def delta(h: Sequence[int]) -> int:
    """Product of the pairwise differences h[j] - h[i] over i < j; 1 if k < 2."""
    values = sorted(h)
    out = 1
    for j in range(1, len(values)):
        for i in range(j):
            out *= values[j] - values[i]
    return out


def radical(n: int, **factor_kwargs) -> int:
    """Product of the distinct primes dividing n; radical(1) = 1."""
    if n < 1:
        raise ValueError("radical needs n >= 1")
    return math.prod(_primes.factorize(n, **factor_kwargs))


@dataclass(frozen=True)
class AdmissibleTuple:
    """Offsets with their admissibility certificate and discriminant data.

    delta_radical is computed from the pairwise differences directly, so huge
    discriminants never need to be factored whole.
    """

    h: tuple[int, ...]
    k: int
    delta: int
    delta_radical: int
    admissible: bool

    @classmethod
    def from_offsets(cls, h: Sequence[int]) -> "AdmissibleTuple":
        offsets = tuple(h)
        if any(x < 0 for x in offsets):
            raise ValueError("offsets must be nonnegative")
        if list(offsets) != sorted(set(offsets)):
            raise ValueError("offsets must be strictly increasing")
        primes_of_delta: set[int] = set()
        d = 1
        for j in range(1, len(offsets)):
            for i in range(j):
                diff = offsets[j] - offsets[i]
                d *= diff
                primes_of_delta.update(_primes.factorize(diff))
        return cls(offsets, len(offsets), d, math.prod(primes_of_delta), is_admissible(offsets))


EMPTY_TUPLE = AdmissibleTuple(h=(), k=0, delta=1, delta_radical=1, admissible=True)


@dataclass(frozen=True)
class PlacementConstraint:
    """Windows and divisibility rules for placing a concrete prime tuple.

    Each target xi opens the window [xi, xi*(1+eta)] (integer endpoints by
    rounding inward). Chosen elements must satisfy, for every i < j and every
    t in the final tuple: q0 does not divide h[j]-h[i] and h[t] does not
    divide h[j]-h[i].
    """

    targets: tuple[float, ...]
    eta: float
    q0: int | None = None
    cap: int | None = None
    require_prime: bool = True

    def __post_init__(self) -> None:
        if self.eta <= 0:
            raise ValueError("eta must be positive")
        if any(t <= 0 for t in self.targets):
            raise ValueError("targets must be positive")
        if list(self.targets) != sorted(set(self.targets)):
            raise ValueError("targets must be strictly increasing")
        for i in range(1, len(self.targets)):
            if self.targets[i - 1] * (1 + self.eta) >= self.targets[i]:
                raise ValueError("windows must be pairwise disjoint")

    def window(self, i: int) -> range:
        lo = math.ceil(self.targets[i])
        hi = math.floor(self.targets[i] * (1 + self.eta))
        if self.cap is not None:
            hi = min(hi, self.cap)
        return range(lo, hi + 1)


def _pair_ok(chosen: Sequence[int], candidate: int, q0: int | None) -> bool:
    """Divisibility constraints between candidate and everything chosen.

    Divisors equal to 1 are skipped: they would veto every difference and the
    rule is about nontrivial moduli.
    """
    members = [t for t in (*chosen, candidate) if t > 1]
    for a in chosen:
        diff = candidate - a
        if q0 is not None and diff % q0 == 0:
            return False
        if any(diff % t == 0 for t in members):
            return False
    for j in range(1, len(chosen)):
        for i in range(j):
            if (chosen[j] - chosen[i]) % candidate == 0:
                return False
    return True


def place_prime_tuple(constraint: PlacementConstraint) -> AdmissibleTuple:
    """Deterministic ascending scan with backtracking over the windows.

    Within each window candidates are tried smallest first; primality is
    required unless the constraint says otherwise. Raises NoPlacement when
    the search space is exhausted.
    """
    k = len(constraint.targets)
    if k == 0:
        return EMPTY_TUPLE
    chosen: list[int] = []
    iters: list[Iterator] = []

    def candidates(i: int):
        for n in constraint.window(i):
            if constraint.require_prime and not _primes.is_prime(n):
                continue
            if chosen and n <= chosen[-1]:
                continue
            if _pair_ok(chosen, n, constraint.q0):
                yield n

    iters.append(candidates(0))
    while iters:
        nxt = next(iters[-1], None)
        if nxt is None:
            iters.pop()
            if chosen:
                chosen.pop()
            continue
        chosen.append(nxt)
        if len(chosen) == k:
            result = AdmissibleTuple.from_offsets(chosen)
            if result.admissible:
                return result
            chosen.pop()  # inadmissible completion; keep scanning
            continue
        iters.append(candidates(len(chosen)))
    raise NoPlacement(f"no conforming tuple in windows around {constraint.targets}")


def equal_spaced_targets(U: int, k: int) -> tuple[float, ...]:
    """k equally spaced targets i*U/(k+1), i = 1..k."""
    if k < 1 or U < 1:
        raise ValueError("need k >= 1 and U >= 1")
    return tuple(i * U / (k + 1) for i in range(1, k + 1))
