"""Benchmark the compiled sieve kernels against the pure-Python fallback.

Run after an in-place build:

    python benchmarks/bench_kernels.py
"""

from __future__ import annotations

import time

from gapforge import _sievecore_py


def _base_primes(limit: int) -> list[int]:
    flags = bytearray(b"\x01") * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = b"\x00" * len(flags[p * p :: p])
    return [i for i, f in enumerate(flags) if f]


def bench(impl, lo: int, hi: int, base: list[int], repeat: int = 3) -> tuple[float, int]:
    best = float("inf")
    count = 0
    for _ in range(repeat):
        t0 = time.perf_counter()
        bits = impl.sieve_block(lo, hi, base)
        count = impl.count_primes(bits)
        best = min(best, time.perf_counter() - t0)
    return best, count


def main() -> None:
    backends = [("python", _sievecore_py)]
    try:
        from gapforge import _sievecore  # noqa: PLC0415

        backends.append(("cython", _sievecore))
    except ImportError:
        print("compiled backend not built; benchmarking pure Python only\n")

    ranges = [
        (2, 1 << 20),
        (10**8, 10**8 + (1 << 20)),
        (10**12, 10**12 + (1 << 20)),
    ]
    print(f"{'range':>28} {'backend':>8} {'seconds':>10} {'primes':>8}")
    for lo, hi in ranges:
        base = _base_primes(int(hi**0.5) + 1)
        timings = {}
        for name, impl in backends:
            secs, count = bench(impl, lo, hi, base)
            timings[name] = secs
            print(f"[{lo:>12,}, {hi:>12,}) {name:>8} {secs:>10.4f} {count:>8}")
        if len(timings) == 2:
            print(f"{'':>28} {'speedup':>8} {timings['python'] / timings['cython']:>9.1f}x")
    print()


if __name__ == "__main__":
    main()
