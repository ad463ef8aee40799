"""Full Hasse-Witt matrices from first rows of translated curves.

Translating x -> x + a conjugates the matrix: W(a) = T(a) W T(-a) with the
upper-triangular binomial matrix T(a).  The first rows at g distinct
translations pin down W one column at a time through a Vandermonde system.
"""

from functools import lru_cache

from .exceptions import DuplicateTranslations
from .modarith import mod_inverse
from .records import HasseWittMatrix, Provenance


@lru_cache(maxsize=None)
def pascal(n):
    """Rows 0..n of Pascal's triangle as exact integers."""
    rows = [(1,)]
    for i in range(1, n + 1):
        prev = rows[-1]
        rows.append((1,) + tuple(prev[j - 1] + prev[j] for j in range(1, i)) + (1,))
    return tuple(rows)


def translation_matrix(a, g, p):
    """T(a) with t_ij = binom(j-1, i-1) a^(j-i) mod p (1-based indices)."""
    binom = pascal(max(g - 1, 0))
    return [
        [binom[j][i] * pow(a, j - i, p) % p if j >= i else 0 for j in range(g)]
        for i in range(g)
    ]


def correction_term(j, a, columns, p):
    """w_j(a): the part of w_1j(a) contributed by the first j-1 columns of W.

    ``j`` is 1-based and ``columns`` holds at least the first j-1 columns.
    Uses beta_l(a) = sum_k a^(k-1) w_kl, so the cost is O(g j).
    """
    binom = pascal(max(j - 1, 0))
    total = 0
    for ell in range(1, j):
        col = columns[ell - 1]
        beta = 0
        for w in reversed(col):
            beta = (beta * a + w) % p
        total += binom[j - 1][ell - 1] * pow(-a, j - ell, p) * beta
    return total % p


def _inverse_mod(mat, p):
    """Gauss-Jordan inverse over F_p; raises ZeroDivisionError if singular."""
    n = len(mat)
    aug = [[x % p for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix mod %d" % p)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = mod_inverse(aug[col][col], p)
        aug[col] = [x * inv % p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def vandermonde_inverse(a_list, p):
    g = len(a_list)
    residues = [a % p for a in a_list]
    if len(set(residues)) != g:
        raise DuplicateTranslations("translations %r are not distinct mod %d" % (list(a_list), p))
    return _inverse_mod([[pow(a, k, p) for k in range(g)] for a in residues], p)


def reconstruct_matrix(rows, p):
    """Recover W_p from the first rows W_p^1(a_i) of g translated curves."""
    a_list = [row.a for row in rows]
    g = len(rows)
    vinv = vandermonde_inverse(a_list, p)
    columns = []
    for j in range(1, g + 1):
        rhs = [(row.entries[j - 1] - correction_term(j, row.a, columns, p)) % p for row in rows]
        columns.append([sum(v * x for v, x in zip(vrow, rhs)) % p for vrow in vinv])
    entries = tuple(tuple(columns[j][i] for j in range(g)) for i in range(g))
    return HasseWittMatrix(p, entries, Provenance.RECONSTRUCTED)
