"""Pure-Python sieve kernel: the fallback backend for gapforge.kernels.

Same contract as the compiled twin in _sievecore.pyx. Marking is done on a
full byte-per-integer segment, but only odd multiples are struck (evens are
cleared with a single stride assignment), which is where the pure-Python
version recovers most of the wheel's benefit via memset-speed slice stores.
"""

BACKEND_NAME = "python"


def sieve_block(lo: int, hi: int, base_primes) -> bytes:
    """Primality bytes for [lo, hi): bits[i] == 1 iff lo + i is prime.

    base_primes must contain every prime <= isqrt(hi - 1), ascending.
    """
    size = hi - lo
    bits = bytearray(b"\x01" * size)
    for n in (0, 1):
        if lo <= n < hi:
            bits[n - lo] = 0
    # strike even composites in one pass; 2 itself stays prime
    first = max(lo + (lo & 1), 4)
    if first < hi:
        bits[first - lo :: 2] = b"\x00" * ((hi - 1 - first) // 2 + 1)
    for p in base_primes:
        if p == 2:
            continue
        if p * p >= hi:
            break
        start = max(p * p, -(-lo // p) * p)
        if start % 2 == 0:
            start += p  # even multiples already struck
        if start >= hi:
            continue
        step = 2 * p
        bits[start - lo :: step] = b"\x00" * ((hi - 1 - start) // step + 1)
    return bytes(bits)


def extract_primes(bits: bytes, lo: int) -> list:
    """Positions of set bytes, offset by lo."""
    out = []
    pos = bits.find(1)
    while pos != -1:
        out.append(lo + pos)
        pos = bits.find(1, pos + 1)
    return out


def count_primes(bits: bytes) -> int:
    return bits.count(1)
