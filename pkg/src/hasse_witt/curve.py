"""Normalized hyperelliptic equations y^2 = f(x) over Z and prime classification."""

import enum
from dataclasses import dataclass, field

from .exceptions import DegreeOutOfRange, NotSquarefree, TooDivisibleByX
from .modarith import is_squarefree_p, poly_deriv, poly_eval, poly_mod
from .primes import primes_up_to


@dataclass(frozen=True)
class CurveData:
    """The equation y^2 = f(x) with f = x^c h(x), h(0) != 0.

    ``f`` and ``h`` are coefficient tuples, constant term first.
    """

    f: tuple
    c: int
    d: int
    g: int
    r: int
    e: int
    h: tuple
    disc: int = field(repr=False, compare=False)

    @property
    def h0(self):
        return self.h[0]


def parse_coeffs(text):
    """Parse ``"23,19,17"`` (constant term first) into a list of ints."""
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok != ""]
    except ValueError:
        raise ValueError("curve coefficients must be comma-separated integers: %r" % text) from None


def _bareiss_det(mat):
    """Exact determinant of an integer matrix by fraction-free elimination."""
    a = [list(row) for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def resultant(f, g):
    """Resultant of two integer polynomials via the Sylvester matrix."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    if size == 0:
        return 1
    rows = []
    fr = list(reversed(f))
    gr = list(reversed(g))
    for i in range(n):
        rows.append([0] * i + fr + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gr + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def discriminant(f):
    """Discriminant of f (degree d, leading coefficient a): (-1)^(d(d-1)/2) Res(f, f') / a."""
    d = len(f) - 1
    res = resultant(f, poly_deriv(f))
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * res // f[-1]


def normalize(f_coeffs):
    f = list(f_coeffs)
    while f and f[-1] == 0:
        f.pop()
    d = len(f) - 1
    if d < 3:
        raise DegreeOutOfRange("degree %d is below 3" % d)
    c = next(i for i, x in enumerate(f) if x != 0)
    if c >= 2:
        raise TooDivisibleByX("x^2 divides f, so f is not squarefree")
    disc = discriminant(f)
    if disc == 0:
        raise NotSquarefree("f has a repeated factor over Q")
    h = f[c:]
    return CurveData(f=tuple(f), c=c, d=d, g=(d - 1) // 2, r=d - c, e=2 - c, h=tuple(h), disc=disc)


class PrimeKind(enum.Enum):
    BAD = "bad"
    SMALL_GOOD = "small"
    EXCEPTIONAL_GOOD = "exceptional"
    BATCH_ADMISSIBLE = "batch"


@dataclass(frozen=True)
class PrimeStatus:
    p: int
    kind: PrimeKind


def is_good_prime(curve, p):
    """Whether y^2 = f(x) mod p is a genus-g hyperelliptic curve.

    Primes not dividing lead(f) * disc(f) are good outright; the remaining
    candidates are settled by the degree and gcd(fbar, fbar') tests.
    """
    if p == 2:
        return False
    if (curve.f[-1] * curve.disc) % p:
        return True
    fbar = poly_mod(curve.f, p)
    if len(fbar) - 1 < 2 * curve.g + 1:
        return False
    return is_squarefree_p(fbar, p)


def exceptional_divisors(curve, a_list):
    """Integers whose prime divisors force the single-prime fallback."""
    out = []
    for i, a in enumerate(a_list):
        for b in a_list[i + 1:]:
            out.append(a - b)
        value = poly_eval(curve.f, a)
        if value:
            out.append(value)
    return out


def classify_primes(curve, N, a_list):
    if N < 2:
        return []
    divisors = exceptional_divisors(curve, list(a_list))
    out = []
    for p in primes_up_to(N):
        if not is_good_prime(curve, p):
            kind = PrimeKind.BAD
        elif p < curve.g:
            kind = PrimeKind.SMALL_GOOD
        elif any(x % p == 0 for x in divisors):
            kind = PrimeKind.EXCEPTIONAL_GOOD
        else:
            kind = PrimeKind.BATCH_ADMISSIBLE
        out.append(PrimeStatus(p, kind))
    return out
