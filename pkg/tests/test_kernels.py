"""Sieve kernel tests: the compiled and pure backends must agree bit-for-bit."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import gapforge._sievecore_py as pure
from gapforge import kernels
from oracles import naive_primes, trial_division_is_prime

try:
    import gapforge._sievecore as compiled
except ImportError:
    compiled = None


# must reach isqrt(hi - 1) for the largest window below
BASE = naive_primes(1_000_100)


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize(
    "lo,hi",
    [
        (2, 100),
        (2, 3),
        (7, 8),
        (10, 11),
        (99_991, 100_003),
        (10**8, 10**8 + 4096),
        (10**12, 10**12 + 512),
    ],
)
def test_pure_backend_matches_trial_division(lo, hi):
    # sieve_block covers the half-open window [lo, hi)
    bits = pure.sieve_block(lo, hi, BASE)
    got = pure.extract_primes(bits, lo)
    want = [n for n in range(lo, hi) if trial_division_is_prime(n)]
    assert got == want
    assert pure.count_primes(bits) == len(want)


@pytest.mark.skipif(compiled is None, reason="compiled backend not built")
@pytest.mark.parametrize(
    "lo,hi",
    [
        (2, 1000),
        (3, 4),
        (10**6, 10**6 + 10_000),
        (10**8, 10**8 + 65_536),
        (10**12, 10**12 + 4096),
    ],
)
def test_backends_byte_identical(lo, hi):
    pb = pure.sieve_block(lo, hi, BASE)
    cb = compiled.sieve_block(lo, hi, BASE)
    assert bytes(pb) == bytes(cb)
    assert pure.extract_primes(pb, lo) == compiled.extract_primes(cb, lo)
    assert pure.count_primes(pb) == compiled.count_primes(cb)


@settings(max_examples=60, deadline=None)
@given(lo=st.integers(min_value=2, max_value=500_000), width=st.integers(min_value=1, max_value=4096))
def test_active_backend_window_property(lo, width):
    hi = lo + width
    bits = kernels.sieve_block(lo, hi, BASE)
    got = set(kernels.extract_primes(bits, lo))
    for n in range(lo, hi):
        assert (n in got) == trial_division_is_prime(n)
    assert kernels.count_primes(bits) == len(got)
