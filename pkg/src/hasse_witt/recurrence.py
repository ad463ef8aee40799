"""Transition matrices for the coefficients of h(x)^n.

Row vectors multiply on the left: v_k = v_{k-1} M_k, where
v_k = [h^n_{k-r+1}, ..., h^n_k].  Over F_p with n = (p-1)/2 the matrices
lose their dependence on n, which is what makes one product tree serve
every prime at once.
"""

import numpy as np

from .exceptions import DivisorVanishes
from .modarith import ResidueVector, mod_inverse


def build_M(curve, k):
    """Integer matrix M_k: subdiagonal 2k h_0, last column (r-i-2k) h_{r-i}."""
    r, h = curve.r, curve.h
    M = np.zeros((r, r), dtype=object)
    for i in range(1, r):
        M[i, i - 1] = 2 * k * h[0]
    for i in range(r):
        M[i, r - 1] = (r - i - 2 * k) * h[r - i]
    return M


def build_Mprime(curve, k):
    if curve.e == 1:
        return build_M(curve, k)
    return build_M(curve, 2 * k - 1).dot(build_M(curve, 2 * k))


def _shift_and_column(h, r, ks):
    # subdiagonal scalar and last column of M_k for each k in ks
    sub = 2 * h[0] * ks
    col = np.empty((len(ks), r), dtype=object)
    for i in range(r):
        col[:, i] = (r - i - 2 * ks) * h[r - i]
    return sub, col


def leaf_matrices(curve, start, stop):
    """Stack of M'_k for k in [start, stop), shape (stop-start, r, r).

    Built from the sparsity pattern instead of dense products: M_k has a
    scaled subdiagonal plus a last column, and M_a M_b has a scaled
    second subdiagonal plus its last two columns.
    """
    r, h = curve.r, curve.h
    n = stop - start
    ks = np.arange(start, stop, dtype=np.int64).astype(object)
    P = np.zeros((n, r, r), dtype=object)
    if n == 0:
        return P
    if curve.e == 1:
        sub, col = _shift_and_column(h, r, ks)
        for i in range(1, r):
            P[:, i, i - 1] = sub
        P[:, :, r - 1] = col
        return P
    ca, la = _shift_and_column(h, r, 2 * ks - 1)
    cb, lb = _shift_and_column(h, r, 2 * ks)
    cc = ca * cb
    for i in range(2, r):
        P[:, i, i - 2] = cc
    last = la * lb[:, r - 1:r]
    last[:, 1:] += ca[:, None] * lb[:, :r - 1]
    P[:, :, r - 1] = last
    P[:, :, r - 2] += la * cb[:, None]
    return P


def naive_vnm(curve, n, m, p):
    """v^n_m mod p by iterating the scalar recurrence for the coefficients of h^n.

    Test reference for the matrix formulation; requires p to divide none of
    k h_0 for 1 <= k <= m.
    """
    r, h = curve.r, curve.h
    coeffs = {0: pow(h[0], n, p)}
    for k in range(1, m + 1):
        denom = k * h[0] % p
        if denom == 0:
            raise DivisorVanishes("p divides %d * h_0" % k)
        acc = 0
        for j in range(1, r + 1):
            if k - j >= 0:
                acc += ((n + 1) * j - k) * h[j] * coeffs[k - j]
        coeffs[k] = acc * mod_inverse(denom, p) % p
    return ResidueVector(p, tuple(coeffs.get(k, 0) for k in range(m - r + 1, m + 1)))
