"""Zeta-function data from Hasse-Witt matrices."""

import math
from dataclasses import dataclass

from .exceptions import EmptyInput
from .modarith import mod_inverse


@dataclass(frozen=True)
class ZetaRecord:
    """Per-prime output.  Polynomials are coefficient tuples, T^0 first."""

    p: int
    charpoly_modp: tuple
    Lp_modp: tuple
    trace_lifted: int = None
    a1_normalized: float = None


def hessenberg_mod(W, p):
    """Upper Hessenberg matrix similar to W over F_p."""
    H = [[x % p for x in row] for row in W]
    n = len(H)
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if H[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            H[piv], H[j + 1] = H[j + 1], H[piv]
            for row in H:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        inv = mod_inverse(H[j + 1][j], p)
        for i in range(j + 2, n):
            u = H[i][j] * inv % p
            if u:
                H[i] = [(x - u * y) % p for x, y in zip(H[i], H[j + 1])]
                for row in H:
                    row[j + 1] = (row[j + 1] + u * row[i]) % p
    return H


def _poly_sub_scaled(a, b, s, p):
    out = list(a) + [0] * max(len(b) - len(a), 0)
    for i, x in enumerate(b):
        out[i] = (out[i] - s * x) % p
    return out


def charpoly_mod(W, p):
    """det(T I - W) over F_p, constant term first."""
    H = hessenberg_mod(W, p)
    n = len(H)
    polys = [[1]]
    for k in range(1, n + 1):
        prev = polys[-1]
        # (T - h_{k-1,k-1}) * prev
        cur = [0] + list(prev)
        cur = _poly_sub_scaled(cur, prev, H[k - 1][k - 1], p)
        t = 1
        for i in range(1, k):
            t = t * H[k - i][k - i - 1] % p
            cur = _poly_sub_scaled(cur, polys[k - i - 1], t * H[k - i - 1][k - 1], p)
        polys.append(cur)
    return tuple(x % p for x in polys[n])


def lpoly_modp(W):
    """Characteristic polynomial and det(I - T W) mod p; no lifting."""
    chi = charpoly_mod(W.entries, W.p)
    return ZetaRecord(W.p, chi, tuple(reversed(chi)))


def lift_trace_residue(t, g, p):
    """The integer a with a = t mod p and a^2 <= 4 g^2 p, if p > 16 g^2 makes it unique."""
    if p <= 16 * g * g:
        return None
    t %= p
    if t > p // 2:
        t -= p
    if t * t > 4 * g * g * p:
        return None
    return t


def lift_trace(W, g=None):
    """The Frobenius trace a_p from trace(W_p), or None when it is not determined."""
    return lift_trace_residue(W.trace(), W.g if g is None else g, W.p)


def zeta_record(W):
    base = lpoly_modp(W)
    t = lift_trace(W)
    a1 = None if t is None else -t / math.sqrt(W.p)
    return ZetaRecord(W.p, base.charpoly_modp, base.Lp_modp, t, a1)


@dataclass(frozen=True)
class Histogram:
    lo: float
    hi: float
    counts: tuple
    density: tuple

    @property
    def width(self):
        return (self.hi - self.lo) / len(self.counts)

    def edges(self):
        return [self.lo + i * self.width for i in range(len(self.counts) + 1)]

    def csv_lines(self):
        e = self.edges()
        yield "bin_lo,bin_hi,count,density"
        for i, (c, d) in enumerate(zip(self.counts, self.density)):
            yield "%.6f,%.6f,%d,%.6f" % (e[i], e[i + 1], c, d)


def a1_histogram(records, bins=200, g=None):
    """Histogram of a_1 = -a_p / sqrt(p) over [-2g, 2g].

    Bins are half-open [lo, hi) except the last, which is closed.
    Records without a lifted trace are skipped.
    """
    values = []
    for rec in records:
        if rec.trace_lifted is None:
            continue
        if g is None:
            g = len(rec.charpoly_modp) - 1
        values.append(-rec.trace_lifted / math.sqrt(rec.p))
    if not values:
        raise EmptyInput("no records with a lifted trace")
    lo, hi = -2.0 * g, 2.0 * g
    width = (hi - lo) / bins
    counts = [0] * bins
    for v in values:
        if not lo <= v <= hi:
            raise ValueError("a_1 = %r outside [%g, %g]" % (v, lo, hi))
        counts[min(int((v - lo) / width), bins - 1)] += 1
    total = len(values)
    density = tuple(c / (total * width) for c in counts)
    return Histogram(lo, hi, tuple(counts), density)
