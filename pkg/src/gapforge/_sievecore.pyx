# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled sieve kernel. Contract-identical to _sievecore_py."""

BACKEND_NAME = "cython"


def sieve_block(unsigned long long lo, unsigned long long hi, base_primes):
    """Primality bytes for [lo, hi): bits[i] == 1 iff lo + i is prime.

    base_primes must contain every prime <= isqrt(hi - 1), ascending.
    """
    cdef Py_ssize_t size = <Py_ssize_t> (hi - lo)
    cdef bytearray buf = bytearray(size)
    cdef unsigned char[::1] bits = buf
    cdef Py_ssize_t i
    cdef unsigned long long p, start, step, n

    for i in range(size):
        bits[i] = 1
    for n in range(lo, min(hi, 2)):
        bits[<Py_ssize_t> (n - lo)] = 0
    # strike even composites; 2 itself stays prime
    start = lo + (lo & 1)
    if start < 4:
        start = 4
    i = <Py_ssize_t> (start - lo)
    while i < size:
        bits[i] = 0
        i += 2
    for p_obj in base_primes:
        p = <unsigned long long> p_obj
        if p == 2:
            continue
        if p * p >= hi:
            break
        start = p * p
        if (lo + p - 1) // p * p > start:
            start = (lo + p - 1) // p * p
        if start % 2 == 0:
            start += p  # even multiples already struck
        if start >= hi:
            continue
        step = 2 * p
        i = <Py_ssize_t> (start - lo)
        while i < size:
            bits[i] = 0
            i += <Py_ssize_t> step
    return bytes(buf)


def extract_primes(bits, unsigned long long lo):
    """Positions of set bytes, offset by lo."""
    cdef const unsigned char[::1] view = bits
    cdef Py_ssize_t i, size = view.shape[0]
    out = []
    for i in range(size):
        if view[i]:
            out.append(lo + <unsigned long long> i)
    return out


def count_primes(bits):
    cdef const unsigned char[::1] view = bits
    cdef Py_ssize_t i, size = view.shape[0]
    cdef Py_ssize_t total = 0
    for i in range(size):
        if view[i]:
            total += 1
    return total
