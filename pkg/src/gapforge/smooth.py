"""Smooth-number counting: exact Psi(x, y), an explicit upper bound, and the
Dickman rho density.

Psi counts integers n <= x whose prime factors are all <= y, with n = 1
included. Two independent exact routes are kept side by side on purpose:
a divisor-chain recursion and a smallest-prime-factor sieve. They must agree
and the tests hold them to that.
"""

from __future__ import annotations

import math
import sys
import threading
from dataclasses import dataclass

from gapforge import primes as _primes
from gapforge.errors import BudgetExceeded, UndefinedIterate

# psi_exact refuses when x * pi(y) passes this
COMPUTE_BUDGET = 1 << 29
# the sieve route additionally materializes x+1 integers
SIEVE_BUDGET = 1 << 24


@dataclass(frozen=True)
class SmoothCount:
    x: int
    y: int
    exact: int
    bound: float | None
    rho_estimate: float


def _psi_recursive(x: int, primes: list[int]) -> int:
    """Count smooth n <= x by walking divisor chains over primes[i:]."""
    sys.setrecursionlimit(max(sys.getrecursionlimit(), len(primes) + x.bit_length() + 100))

    def rec(i: int, cap: int) -> int:
        if i == len(primes) or primes[i] > cap:
            return 1  # only the empty product fits
        return rec(i + 1, cap) + rec(i, cap // primes[i])

    return rec(0, x)


def _psi_spf_sieve(x: int, primes: list[int]) -> int:
    """Count smooth n <= x by dividing every slot down to its rough part."""
    rem = list(range(x + 1))
    for p in primes:
        for i in range(p, x + 1, p):
            while rem[i] % p == 0:
                rem[i] //= p
    return sum(1 for i in range(1, x + 1) if rem[i] == 1)


def psi_exact(x: int, y: int, *, method: str = "recursive") -> int:
    """Exact Psi(x, y); method is "recursive" or "sieve". n = 1 counts."""
    if x < 1 or y < 2:
        raise ValueError(f"need x >= 1 and y >= 2, got x={x}, y={y}")
    primes = _primes.primes_up_to(y)
    if x * max(len(primes), 1) > COMPUTE_BUDGET:
        raise BudgetExceeded(f"x*pi(y) = {x * len(primes)} exceeds {COMPUTE_BUDGET}")
    if method == "recursive":
        return _psi_recursive(x, primes)
    if method == "sieve":
        if x > SIEVE_BUDGET:
            raise BudgetExceeded(f"sieve route materializes {x + 1} ints > {SIEVE_BUDGET}")
        return _psi_spf_sieve(x, primes)
    raise ValueError(f"unknown method {method!r}")


def psi_bound(x: float, y: float, o1: float = 0.0) -> float:
    """Explicit smooth-count upper bound
    x * exp(-log x * log_3 y / log y + (1 + o1) * log_2 y).

    o1 stands in for a vanishing term and is the caller's choice; the default
    0.0 makes this the bare asymptotic shape, not a certified bound at any
    finite height.
    """
    if x < 1:
        raise ValueError(f"need x >= 1, got x={x}")
    l1 = math.log(y)
    if l1 <= 0:
        raise UndefinedIterate(f"log y = {l1} <= 0")
    l2 = math.log(l1)
    if l2 <= 0:
        raise UndefinedIterate(f"log_2 y = {l2} <= 0")
    l3 = math.log(l2)
    if l3 <= 0:
        # below y = e^e the third iterate goes nonpositive and the bound
        # shape is meaningless; callers treat this as "no bound available"
        raise UndefinedIterate(f"log_3 y = {l3} <= 0 (need y > e^e)")
    return x * math.exp(-math.log(x) * l3 / l1 + (1.0 + o1) * l2)


# ---------------------------------------------------------------------------
# Dickman rho
#
# rho solves u rho'(u) = -rho(u - 1) with rho = 1 on [0, 1], equivalently
# u rho(u) = integral of rho over [u-1, u]. Nodes are marched on a step-1/256
# grid with an implicit composite-Simpson rule; off-node evaluation uses cubic
# Hermite interpolation, whose derivative values -rho(u-1)/u come straight
# from the grid one unit lower. Node and interpolation error both land well
# under the 1e-8 target for u <= 10.

_RHO_STEPS_PER_UNIT = 256
_RHO_H = 1.0 / _RHO_STEPS_PER_UNIT
_rho_nodes: list[float] = []
_rho_lock = threading.Lock()

# Simpson weights over one unit interval: 1, 4, 2, 4, ..., 4, 1 times h/3
_SIMPSON_W = [4.0 if i % 2 else 2.0 for i in range(1, _RHO_STEPS_PER_UNIT)]


def _rho_extend(target_u: float) -> None:
    """Grow the node table to cover target_u. Append-only under a lock."""
    n_target = int(math.ceil(target_u * _RHO_STEPS_PER_UNIT)) + 2
    with _rho_lock:
        nodes = _rho_nodes
        if not nodes:
            for i in range(2 * _RHO_STEPS_PER_UNIT + 1):
                u = i * _RHO_H
                nodes.append(1.0 if u <= 1.0 else 1.0 - math.log(u))
        N = _RHO_STEPS_PER_UNIT
        while len(nodes) <= n_target:
            n = len(nodes)
            u = n * _RHO_H
            # u * rho(u) = Simpson over [u-1, u]; solve for the new endpoint
            acc = nodes[n - N]
            for j, w in enumerate(_SIMPSON_W, start=1):
                acc += w * nodes[n - N + j]
            # endpoint weight 1 * h/3 belongs to the unknown rho(u)
            nodes.append((_RHO_H / 3.0) * acc / (u - _RHO_H / 3.0))


def dickman_rho(u: float) -> float:
    """Dickman's rho(u), absolute error at most 1e-8 for u <= 10."""
    if u < 0:
        raise ValueError(f"need u >= 0, got u={u}")
    if u <= 1.0:
        return 1.0
    if u <= 2.0:
        return 1.0 - math.log(u)
    if u > 300.0:
        return 0.0  # far below any representable tolerance
    _rho_extend(u)
    nodes = _rho_nodes
    i = int(u * _RHO_STEPS_PER_UNIT)
    t = (u - i * _RHO_H) / _RHO_H
    if t == 0.0:
        return nodes[i]
    f0, f1 = nodes[i], nodes[i + 1]
    N = _RHO_STEPS_PER_UNIT
    u0 = i * _RHO_H
    d0 = -nodes[i - N] / u0 * _RHO_H
    d1 = -nodes[i + 1 - N] / (u0 + _RHO_H) * _RHO_H
    h00 = (1 + 2 * t) * (1 - t) * (1 - t)
    h10 = t * (1 - t) * (1 - t)
    h01 = t * t * (3 - 2 * t)
    h11 = t * t * (t - 1)
    return h00 * f0 + h10 * d0 + h01 * f1 + h11 * d1


def count_smooth(x: int, y: int, *, o1: float = 0.0) -> SmoothCount:
    """Exact count next to the explicit bound and the rho-based estimate."""
    exact = psi_exact(x, y)
    try:
        bound = psi_bound(x, y, o1)
    except UndefinedIterate:
        bound = None  # y too small for the iterated logs in the bound
    u = math.log(x) / math.log(y) if x > 1 else 0.0
    return SmoothCount(x, y, exact, bound, x * dickman_rho(u))
