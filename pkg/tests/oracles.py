"""Independent reference implementations used to freeze expected values.

Everything here is deliberately naive and shares no code with the package:
plain trial division, a full-array sieve, direct enumeration counts, and a
quadrature-based Dickman evaluator built on mpmath.
"""

from __future__ import annotations

import math
from functools import lru_cache

import mpmath as mp


def trial_division_is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def naive_primes(limit: int) -> list[int]:
    """Plain one-shot Eratosthenes, no wheel, no segmentation."""
    if limit < 2:
        return []
    flags = [True] * (limit + 1)
    flags[0] = flags[1] = False
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            for q in range(p * p, limit + 1, p):
                flags[q] = False
    return [i for i, f in enumerate(flags) if f]


def naive_gap_records(limit: int) -> list[tuple[int, int]]:
    """Records from the naive sieve, extending past limit to close the
    final gap."""
    ps = naive_primes(2 * limit + 1000)
    records = []
    best = 0
    for p, q in zip(ps, ps[1:]):
        if p > limit:
            break
        if q - p > best:
            best = q - p
            records.append((p, q - p))
    return records


def naive_psi(x: int, y: int) -> int:
    """Count y-smooth n <= x by factoring every n with trial division."""
    return sum(1 for n in range(1, x + 1) if max_prime_factor(n) <= y)


def max_prime_factor(n: int) -> int:
    if n == 1:
        return 1
    big = 1
    m = n
    f = 2
    while f * f <= m:
        while m % f == 0:
            big = f
            m //= f
        f += 1
    if m > 1:
        big = max(big, m)
    return big


def crt_by_search(assignments: dict[int, int]) -> tuple[int, int]:
    """Brute-force CRT for tiny moduli: scan residues until all match."""
    W = math.prod(assignments)
    for z in range(W):
        if all(z % p == a for p, a in assignments.items()):
            return z, W
    raise AssertionError("no CRT solution found")


def best_greedy_class(values: set[int], p: int, h: tuple[int, ...]) -> tuple[int, int]:
    """Exhaustive census: (smallest best z, max killed count) over classes
    z with z not congruent to -t mod p for any t in h."""
    forbidden = {(-t) % p for t in h}
    best_z, best_count = None, -1
    for z in range(p):
        if z in forbidden:
            continue
        count = sum(1 for s in values if (s + z) % p == 0)
        if count > best_count:
            best_z, best_count = z, count
    assert best_z is not None
    return best_z, best_count


def admissible_by_full_cover(h: tuple[int, ...]) -> bool:
    """Exhaustive admissibility: residue-cover check over every prime up to
    max(h) (primes beyond len(h) can never be fully covered, but check anyway)."""
    if not h:
        return True
    for p in naive_primes(max(max(h), 2)):
        if len({t % p for t in h}) == p:
            return False
    return True


# ---------------------------------------------------------------------------
# Dickman rho by nested adaptive quadrature (independent of any grid marching)

mp.mp.dps = 30


@lru_cache(maxsize=None)
def _rho_piece(k: int):
    """Evaluator for rho on [k, k+1], built recursively: on that interval
    rho(u) = rho(k) - integral_k^u rho(t-1)/t dt, and t-1 lands in the
    previous piece's interval. Each computed piece is replaced by a
    Chebyshev fit (error far below the 1e-8 comparisons) so the quadrature
    nesting stays one level deep."""
    if k <= 0:
        return lambda u: mp.mpf(1)
    if k == 1:
        return lambda u: 1 - mp.log(u)
    prev = _rho_piece(k - 1)
    anchor = mp.mpf(k)
    anchor_val = prev(anchor)

    def f(u, _prev=prev, _anchor=anchor, _anchor_val=anchor_val):
        return _anchor_val - mp.quad(lambda t: _prev(t - 1) / t, [_anchor, u])

    poly = mp.chebyfit(f, [k, k + 1], 32)
    return lambda u, _poly=poly: mp.polyval(_poly, u)


def rho_reference(u: float) -> float:
    """High-precision rho(u) for u <= 5; quadrature error far below 1e-12."""
    if u <= 1:
        return 1.0
    k = max(1, int(math.ceil(u)) - 1)
    return float(_rho_piece(k)(mp.mpf(u)))
