"""Prime enumeration by a segmented sieve of Eratosthenes."""

import math

import gmpy2
import numpy as np

SEGMENT = 1 << 18


def _small_primes(n):
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for q in range(2, math.isqrt(n) + 1):
        if sieve[q]:
            sieve[q * q::q] = False
    return np.flatnonzero(sieve)


def primes_between(lo, hi):
    """Return the primes p with lo <= p <= hi, in increasing order."""
    lo = max(lo, 2)
    if hi < lo:
        return []
    base = _small_primes(math.isqrt(hi))
    out = []
    for start in range(lo, hi + 1, SEGMENT):
        stop = min(start + SEGMENT, hi + 1)
        seg = np.ones(stop - start, dtype=bool)
        for q in base:
            q = int(q)
            if q * q >= stop:
                break
            first = max(q * q, -(-start // q) * q)
            seg[first - start::q] = False
        out.extend((np.flatnonzero(seg) + start).tolist())
    return out


def primes_up_to(n):
    """Return all primes p <= n."""
    return primes_between(2, n)


def is_prime(n):
    """Primality via GMP (trial division, then BPSW-style probable-prime tests)."""
    return n >= 2 and bool(gmpy2.is_prime(n))
