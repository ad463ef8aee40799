"""Accumulating remainder trees and forests.

Given a row vector V, square integer matrices A_0, ..., A_{b-1} and positive
moduli m_0 = 1, m_1, ..., m_{b-1}, compute every

    C_n = V A_0 ... A_{n-1} mod m_n        (1 <= n < b)

with product trees instead of b separate products.  Matrix stacks are numpy
object arrays holding Python ints or gmpy2 mpz values; entries stay exact and
signed inside the product tree and are reduced only in the descending pass.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpz

# entries wider than this are switched to GMP integers
MPZ_BITS = 1500
# above this, pair products trade multiplications for additions
WINOGRAD_BITS = 10000

_to_mpz = np.frompyfunc(mpz, 1, 1)
_bitlen = np.frompyfunc(lambda x: int(x).bit_length() if x else 0, 1, 1)


def default_kappa(ell):
    if ell <= 1:
        return 0
    return min(ell, math.ceil(2 * math.log2(ell)))


@dataclass(frozen=True)
class ForestPlan:
    ell: int
    kappa: int

    def __post_init__(self):
        if not 0 <= self.kappa <= self.ell:
            raise ValueError("kappa must lie in [0, %d], got %d" % (self.ell, self.kappa))

    @classmethod
    def for_size(cls, b, kappa=None):
        ell = max(b - 1, 0).bit_length()
        return cls(ell, default_kappa(ell) if kappa is None else kappa)

    @property
    def subtrees(self):
        return 1 << self.kappa

    @property
    def leaves_per_subtree(self):
        return 1 << (self.ell - self.kappa)


@dataclass
class StorageMeter:
    """Node-size accounting for the forest, in bits of stored integers.

    ``levels`` collects (subtree, depth, bits) for every stored product-tree
    level; ``peak_bits`` is the largest simultaneous footprint of tree nodes,
    modulus nodes and the carried vector and modulus.
    """

    levels: list = field(default_factory=list)
    peak_bits: int = 0

    def level(self, subtree, depth, bits):
        self.levels.append((subtree, depth, bits))

    def live(self, bits):
        self.peak_bits = max(self.peak_bits, bits)


def array_bits(arr):
    if arr.size == 0:
        return 0
    return int(_bitlen(arr).sum())


def _promote(level):
    """Convert a stack to mpz once its entries get wide."""
    if level.size and type(level.flat[0]) is not type(mpz(0)):
        if max(int(x).bit_length() for x in level[0].flat) > MPZ_BITS:
            return _to_mpz(level)
    return level


def _winograd(A, B):
    """Stacked products A @ B with about half the big multiplications.

    Uses sum_k (a_i,2k + b_2k+1,j)(a_i,2k+1 + b_2k,j) minus row and column
    correction terms, which is exact over any commutative ring.
    """
    r = A.shape[1]
    h = r // 2
    a0, a1 = A[:, :, 0:2 * h:2], A[:, :, 1:2 * h:2]
    b0, b1 = B[:, 0:2 * h:2, :], B[:, 1:2 * h:2, :]
    xi = (a0 * a1).sum(axis=2)
    eta = (b0 * b1).sum(axis=1)
    s = (a0[:, :, None, :] + b1.transpose(0, 2, 1)[:, None, :, :]) * (a1[:, :, None, :] + b0.transpose(0, 2, 1)[:, None, :, :])
    C = s.sum(axis=3) - xi[:, :, None] - eta[:, None, :]
    if r % 2:
        C += A[:, :, r - 1:r] * B[:, r - 1:r, :]
    return C


def _pair_products(level):
    A, B = level[0::2], level[1::2]
    if A.shape[1] > 1 and int(A[0, -1, -1]).bit_length() > WINOGRAD_BITS:
        return _winograd(A, B)
    return _promote(np.matmul(A, B))


def _mod_product(level):
    return level[0::2] * level[1::2]


def _descend(C, A_left, mods):
    """One level of the top-down pass.

    C holds the parent vectors (reduced mod the parent moduli), A_left the
    left-child matrices, mods the child moduli.  Even children inherit the
    parent vector, odd children also absorb their left sibling.
    """
    r = C.shape[1]
    out = np.zeros((len(mods), r), dtype=object)
    even, odd = mods[0::2], mods[1::2]
    keep = np.flatnonzero(even != 1)
    if keep.size:
        out[2 * keep] = C[keep] % even[keep][:, None]
    keep = np.flatnonzero(odd != 1)
    if keep.size:
        m = odd[keep][:, None]
        vec = C[keep] % m
        out[2 * keep + 1] = np.matmul(vec[:, None, :], A_left[keep])[:, 0, :] % m
    return out


def _prepare(V, A, m):
    """Pad inputs to b = 2^ell with identity matrices and unit moduli."""
    V = np.array([mpz(x) for x in V], dtype=object)
    r = len(V)
    A = [np.asarray(a, dtype=object).reshape(r, r) for a in A]
    m = [int(x) for x in m]
    if any(x <= 0 for x in m):
        raise ValueError("moduli must be positive")
    n_out = len(m)
    b = 1 << max(len(m) - 1, len(A) - 1, 1).bit_length()
    eye = np.eye(r, dtype=np.int64).astype(object)
    A = A + [eye] * (b - len(A))
    m = m + [1] * (b - len(m))
    stack = np.empty((b, r, r), dtype=object)
    for i, a in enumerate(A):
        stack[i] = a
    return V, stack, np.array(m, dtype=object), n_out


def remainder_tree(V, A, m):
    """All C_n = V A_0 ... A_{n-1} mod m_n for 1 <= n < len(m).

    Builds both product trees completely (each node the product of its
    children) and then runs the top-down pass; memory grows with the whole
    tree.  Returns a list of vectors, entry n-1 holding C_n.
    """
    V, stack, mods, n_out = _prepare(V, A, m)
    b = len(mods)
    ell = b.bit_length() - 1
    A_tree = [None] * (ell + 1)
    m_tree = [None] * (ell + 1)
    A_tree[ell], m_tree[ell] = stack, mods
    for i in range(ell - 1, 0, -1):
        A_tree[i] = _pair_products(A_tree[i + 1])
        m_tree[i] = _mod_product(m_tree[i + 1])
    m_tree[0] = _mod_product(m_tree[1]) if ell else mods
    C = (V % m_tree[0][0])[None, :]
    for i in range(1, ell + 1):
        C = _descend(C, A_tree[i][0::2], m_tree[i])
    return [[int(x) for x in C[n]] for n in range(1, n_out)]


def iter_remainder_forest(V, leaves, moduli, kappa=None, meter=None):
    """Run the forest subtree by subtree, yielding ``(start, {n: C_n})``.

    ``leaves(start, stop)`` returns the matrix stack A_start .. A_{stop-1};
    ``moduli`` has length b = 2^ell.  Only indices with m_n != 1 appear in
    the yielded dicts.  Between subtrees the running vector
    V A_0 ... A_{end-1} is kept reduced modulo the product of all moduli not
    yet handled, together with that product.
    """
    b = len(moduli)
    if b & (b - 1) or b < 1:
        raise ValueError("number of moduli must be a power of two")
    plan = ForestPlan(b.bit_length() - 1, default_kappa(b.bit_length() - 1) if kappa is None else kappa)
    t = plan.leaves_per_subtree
    depth = plan.ell - plan.kappa
    mods = np.array([mpz(x) for x in moduli], dtype=object)

    tops = mods.reshape(plan.subtrees, t)
    while tops.shape[1] > 1:
        tops = tops[:, 0::2] * tops[:, 1::2]
    tops = tops[:, 0]
    rest = tops.copy()
    while len(rest) > 1:
        rest = _mod_product(rest)
    remaining = rest[0]

    carry = np.array([mpz(x) for x in V], dtype=object) % remaining
    last = plan.subtrees - 1
    for s in range(plan.subtrees):
        start = s * t
        if remaining == 1:
            yield start, {}
            continue
        level = _promote(np.asarray(leaves(start, start + t), dtype=object))
        m_levels = [None] * (depth + 1)
        m_levels[depth] = mods[start:start + t]
        for d in range(depth - 1, -1, -1):
            m_levels[d] = _mod_product(m_levels[d + 1])
        carry_bits = live = 0
        if meter is not None:
            carry_bits = array_bits(carry) + int(remaining).bit_length()
            live = carry_bits + sum(array_bits(x) for x in m_levels)

        kept = [None] * (depth + 1)
        for d in range(depth - 1, -1, -1):
            parent = _pair_products(level) if (d or s < last) else None
            kept[d + 1] = level[0::2]
            if meter is not None:
                full, left = array_bits(level), array_bits(kept[d + 1])
                meter.live(live + full + (array_bits(parent) if parent is not None else 0))
                live += left
                meter.level(s, d + 1, left)
            level = parent
        root = level
        if meter is not None:
            if root is not None:
                live += array_bits(root)
                meter.level(s, 0, array_bits(root))
            meter.live(live)

        C = (carry % tops[s])[None, :]
        for d in range(1, depth + 1):
            C = _descend(C, kept[d], m_levels[d])
        leaf_mods = m_levels[depth]
        yield start, {start + int(j): tuple(int(x) for x in C[j]) for j in np.flatnonzero(leaf_mods != 1)}

        if s < last:
            remaining = remaining // tops[s]
            carry = np.dot(carry, root[0]) % remaining


def remainder_forest(V, A, m, kappa=None, meter=None):
    """Same contract and output as :func:`remainder_tree`, computed in 2^kappa subtrees."""
    V, stack, mods, n_out = _prepare(V, A, m)
    out = [[0] * len(V) for _ in range(1, n_out)]
    blocks = iter_remainder_forest(V, lambda i, j: stack[i:j], list(mods), kappa, meter)
    for _, block in blocks:
        for n, vec in block.items():
            if 1 <= n < n_out:
                out[n - 1] = list(vec)
    return out


def scalar_remainder_forest(values, moduli, kappa=None):
    """Running products (values[0] ... values[i]) mod moduli[i] for every i."""
    if len(values) != len(moduli):
        raise ValueError("values and moduli must have equal length")
    A = [[[v]] for v in values]
    C = remainder_forest([1], A, [1] + list(moduli), kappa)
    return [vec[0] for vec in C]
