"""First rows of Hasse-Witt matrices, for all admissible p <= N or one p at a time."""

import operator

import numpy as np

from .curve import is_good_prime, normalize
from .exceptions import BadPrime, NotHyperelliptic
from .modarith import is_squarefree_p, legendre, mod_inverse, poly_mod, translate
from .primes import primes_up_to
from .records import HasseWittRow, Provenance
from .recurrence import leaf_matrices
from .remtree import iter_remainder_forest


def admissible_primes(curve, N):
    """Odd primes p <= N of good reduction with p not dividing h_0."""
    return [p for p in primes_up_to(N) if is_good_prime(curve, p) and curve.h0 % p]


def forest_size(N):
    """Number of leaves b = 2^ell with ell = ceil(log2 N) - 1."""
    return 1 << max((N - 1).bit_length() - 1, 0)


def _scale(curve, p, delta):
    num = legendre(2, p) ** curve.e
    den = legendre(curve.h0, p) ** (curve.e - 1) * delta
    return num * mod_inverse(den % p, p) % p


def _row(curve, p, u, delta, a, provenance):
    s = _scale(curve, p, delta)
    r = curve.r
    return HasseWittRow(p, a, tuple(u[r - 1 - j] * s % p for j in range(curve.g)), provenance)


def _identity_padded(make, r, start, stop, cutoff):
    """Stack of make(start, stop) with identities from index ``cutoff`` on."""
    n_real = max(min(stop, cutoff) - start, 0)
    out = np.empty((stop - start, r, r), dtype=object)
    if n_real:
        out[:n_real] = make(start, start + n_real)
    if n_real < stop - start:
        out[n_real:] = np.eye(r, dtype=np.int64).astype(object)
    return out


def _delta_values(e, ks):
    # running products of these give (e n)!
    if e == 1:
        return ks
    return (2 * ks - 1) * (2 * ks)


def iter_first_row_blocks(curve, N, primes=None, kappa=None, explicit_delta=False, meter=None, a=0):
    """Yield one ``{p: HasseWittRow}`` dict per forest subtree, in increasing p.

    Moduli m_n = p for admissible p = 2n + 1 <= N (restricted to ``primes``
    when given); the forest runs over A_k = M'_{k+1} with V = [0, ..., 0, 1].
    """
    if N < 3:
        return
    b = forest_size(N)
    allowed = set(admissible_primes(curve, N))
    if primes is not None:
        allowed &= set(primes)
    moduli = [1] * b
    for p in allowed:
        moduli[(p - 1) // 2] = p
    cutoff = max((p - 1) // 2 for p in allowed) if allowed else 0
    r = curve.r
    V = [0] * (r - 1) + [1]

    def leaves(start, stop):
        return _identity_padded(lambda i, j: leaf_matrices(curve, i + 1, j + 1), r, start, stop, cutoff)

    def delta_leaves(start, stop):
        ks = np.arange(start + 1, stop + 1, dtype=np.int64).astype(object)
        vals = np.where(np.arange(start, stop) < cutoff, _delta_values(curve.e, ks), 1)
        return vals.reshape(-1, 1, 1)

    u_blocks = iter_remainder_forest(V, leaves, moduli, kappa, meter)
    if curve.e == 1 or explicit_delta:
        d_blocks = iter_remainder_forest([1], delta_leaves, moduli, kappa)
    else:
        d_blocks = None
    for start, block in u_blocks:
        deltas = next(d_blocks)[1] if d_blocks is not None else None
        rows = {}
        for n in sorted(block):
            p = 2 * n + 1
            delta = deltas[n][0] if deltas is not None else -1
            rows[p] = _row(curve, p, block[n], delta, a, Provenance.BATCH)
        yield rows


def compute_first_rows(curve, N, kappa=None, primes=None, explicit_delta=False, meter=None, a=0):
    """First rows W_p^1 for every admissible prime p <= N, keyed by p.

    For e = 2 the factorial (2n)! = (p-1)! is taken to be -1 (Wilson);
    ``explicit_delta`` computes it with a second forest instead.
    """
    out = {}
    for rows in iter_first_row_blocks(curve, N, primes, kappa, explicit_delta, meter, a):
        out.update(rows)
    return out


def _reduced_model(fbar, p):
    if p == 2:
        raise BadPrime("characteristic 2 is not supported")
    fbar = poly_mod(fbar, p)
    d = len(fbar) - 1
    if d < 3 or not is_squarefree_p(fbar, p):
        raise NotHyperelliptic("y^2 = f(x) mod %d is not a hyperelliptic curve" % p)
    c = next(i for i, x in enumerate(fbar) if x)
    return fbar, d, c


def compute_first_row_single(fbar, p, a=0):
    """First row of the Hasse-Witt matrix of y^2 = fbar(x) over F_p by a linear scan.

    Re-normalizes over F_p, so p dividing the constant term is fine.  Only
    the current vector and two coefficient tables are stored; the transition
    matrices are never formed.
    """
    fbar, d, c = _reduced_model(fbar, p)
    g = (d - 1) // 2
    h = fbar[c:]
    r, e = d - c, 2 - c
    n = (p - 1) // 2
    alpha = [(r - i) * h[r - i] % p for i in range(r)]
    beta = [h[r - i] for i in range(r)]
    two_h0 = 2 * h[0]
    mul = operator.mul
    u = [0] * (r - 1) + [1]
    delta = 1
    for k in range(1, e * n + 1):
        new = (sum(map(mul, u, alpha)) - 2 * k * sum(map(mul, u, beta))) % p
        c_k = two_h0 * k % p
        u = [x * c_k % p for x in u[1:]]
        u.append(new)
        delta = delta * k % p
    num = legendre(2, p) ** e
    den = legendre(h[0], p) ** (e - 1) * delta
    s = num * mod_inverse(den % p, p) % p
    return HasseWittRow(p, a, tuple(u[r - 1 - j] * s % p for j in range(g)), Provenance.SINGLE_PRIME)


def translated_curves(curve, a_list):
    return [normalize(translate(curve.f, a)) for a in a_list]


def batch_interleaved(curve, N, a_list, kappa=None, primes=None, meter=None):
    """Yield ``(p, [row at a_1, ..., row at a_g])`` for primes admissible for every translate.

    The g forests advance one subtree at a time in lockstep, so all rows
    for a batch of primes are ready together.
    """
    curves = translated_curves(curve, a_list)
    streams = [
        iter_first_row_blocks(c, N, primes, kappa, meter=meter if i == 0 else None, a=a)
        for i, (c, a) in enumerate(zip(curves, a_list))
    ]
    for blocks in zip(*streams):
        for p in sorted(blocks[0]):
            if all(p in blk for blk in blocks):
                yield p, [blk[p] for blk in blocks]
