"""Modular and polynomial arithmetic over prime fields.

Polynomials are plain lists of integer coefficients, constant term first.
Residues are kept in least non-negative form.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import NotInvertible


@dataclass(frozen=True)
class ResidueVector:
    modulus: int
    entries: tuple

    def __post_init__(self):
        if any(not 0 <= x < self.modulus for x in self.entries):
            raise ValueError("entries must be reduced modulo %d" % self.modulus)


def legendre(a, p):
    """Legendre symbol (a|p) for an odd prime p, by quadratic reciprocity."""
    a %= p
    acc = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if p % 8 in (3, 5):
                acc = -acc
        if a % 4 == 3 and p % 4 == 3:
            acc = -acc
        a, p = p % a, a
    return acc if p == 1 else 0


def mod_inverse(a, m):
    try:
        return pow(a, -1, m)
    except ValueError:
        raise NotInvertible("%d is not invertible modulo %d" % (a, m)) from None


def poly_trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_mod(f, p):
    return poly_trim(c % p for c in f)


def poly_deriv(f):
    return [i * f[i] for i in range(1, len(f))]


def poly_divmod_p(a, b, p):
    """Quotient and remainder of a by b in F_p[x]; b must be nonzero mod p."""
    a = poly_mod(a, p)
    b = poly_mod(b, p)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = mod_inverse(b[-1], p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        coef = a[-1] * inv % p
        q[shift] = coef
        for i, bi in enumerate(b):
            a[i + shift] = (a[i + shift] - coef * bi) % p
        a = poly_trim(a)
    return q, a


def poly_gcd_p(a, b, p):
    """Monic gcd in F_p[x]."""
    a = poly_mod(a, p)
    b = poly_mod(b, p)
    while b:
        a, b = b, poly_divmod_p(a, b, p)[1]
    if not a:
        return []
    inv = mod_inverse(a[-1], p)
    return [c * inv % p for c in a]


def is_squarefree_p(f, p):
    """True iff f is nonzero and squarefree in F_p[x]."""
    f = poly_mod(f, p)
    if not f:
        return False
    return len(poly_gcd_p(f, poly_deriv(f), p)) <= 1


def translate(f, a, p=None):
    """Coefficients of f(x + a), reduced mod p when p is given."""
    f = list(f)
    out = [0] * len(f)
    # Horner in the shifted variable: ((f_d (x+a) + f_{d-1}) (x+a) + ...)
    for c in reversed(f):
        nxt = [0] * len(f)
        for i in range(len(f) - 1):
            nxt[i + 1] += out[i]
            nxt[i] += a * out[i]
        nxt[0] += c
        out = nxt if p is None else [x % p for x in nxt]
    return out


def poly_eval(f, x, p=None):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
        if p is not None:
            acc %= p
    return acc


def _mulmod_trunc(a, b, p, n):
    """Product of coefficient arrays a, b mod p, truncated to length n."""
    a = a[:n]
    b = b[:n]
    if min(len(a), len(b)) * (p - 1) ** 2 < 2 ** 62:
        c = np.convolve(a.astype(np.int64), b.astype(np.int64))
    else:
        c = np.convolve(a.astype(object), b.astype(object))
    return (c[:n] % p).astype(a.dtype)


def power_truncated(f, e, p, n):
    """First n coefficients of f^e in F_p[x] by binary powering."""
    dtype = np.int64 if p < 2 ** 31 else object
    base = np.array([c % p for c in f], dtype=dtype)
    result = np.zeros(1, dtype=dtype)
    result[0] = 1
    while e:
        if e & 1:
            result = _mulmod_trunc(result, base, p, n)
        e >>= 1
        if e:
            base = _mulmod_trunc(base, base, p, n)
    out = [int(x) for x in result]
    return out + [0] * (n - len(out))


def direct_expansion_matrix(fbar, g, p):
    """Hasse-Witt matrix from its definition: w_ij = [x^(pi-j)] fbar^((p-1)/2).

    Schoolbook products throughout, so the cost grows like (g p)^2; this is
    the reference oracle and is meant for p up to about 2^14.
    """
    coeffs = power_truncated(fbar, (p - 1) // 2, p, p * g)
    return [[coeffs[p * i - j] for j in range(1, g + 1)] for i in range(1, g + 1)]


def count_points(fbar, p):
    """Number of F_p-points on the smooth model of y^2 = fbar(x), p odd.

    Counts affine points with Legendre symbols and adds the points at
    infinity: one if deg fbar is odd, 1 + (lead|p) if it is even.
    """
    fbar = poly_mod(fbar, p)
    total = p
    for x in range(p):
        total += legendre(poly_eval(fbar, x, p), p)
    d = len(fbar) - 1
    if d % 2:
        return total + 1
    return total + 1 + legendre(fbar[-1], p)
