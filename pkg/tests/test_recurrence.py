import numpy as np

from hasse_witt.curve import normalize
from hasse_witt.primes import primes_up_to
from hasse_witt.recurrence import build_M, build_Mprime, leaf_matrices, naive_vnm

from conftest import random_curve


def M_n(curve, n, k):
    """The n-dependent transition matrix, straight from the coefficient recurrence."""
    r, h = curve.r, curve.h
    M = np.zeros((r, r), dtype=object)
    for i in range(1, r):
        M[i, i - 1] = k * h[0]
    for i in range(r):
        M[i, r - 1] = ((n + 1) * (r - i) - k) * h[r - i]
    return M


def int_power(h, n):
    out = [1]
    for _ in range(n):
        nxt = [0] * (len(out) + len(h) - 1)
        for i, x in enumerate(out):
            for j, y in enumerate(h):
                nxt[i + j] += x * y
        out = nxt
    return out


def test_layout_golden(golden):
    M = build_M(golden, 3)
    r, h = golden.r, golden.h
    for i in range(r):
        for j in range(r):
            if j == r - 1:
                want = (r - i - 6) * h[r - i]
            elif i == j + 1:
                want = 6 * h[0]
            else:
                want = 0
            assert M[i, j] == want


def test_n_independence_mod_p(rng):
    for genus in (1, 2):
        curve = random_curve(rng, genus, bound=9)
        for p in primes_up_to(100)[1:]:
            if curve.h0 % p == 0:
                continue
            n = (p - 1) // 2
            for k in range(1, 2 * p + 1):
                diff = (2 * M_n(curve, n, k) - build_M(curve, k)) % p
                assert not diff.any(), (p, k)


def test_recurrence_reproduces_powers(rng):
    for _ in range(10):
        curve = random_curve(rng, rng.choice((1, 2, 3)), bound=9)
        r, h = curve.r, curve.h
        for n in (1, 2, 5, 10):
            coeffs = int_power(h, n) + [0] * 40
            for k in range(1, 31):
                total = sum(((n + 1) * j - k) * h[j] * coeffs[k - j] for j in range(1, r + 1) if k >= j)
                assert total == k * h[0] * coeffs[k]


def test_naive_vnm_matches_expansion(rng):
    curve = random_curve(rng, 2, bound=9, c=0)
    p = next(q for q in primes_up_to(200)[20:] if curve.h0 % q)
    n = 7
    coeffs = int_power(curve.h, n) + [0] * 40
    for m in (1, 5, 20):
        v = naive_vnm(curve, n, m, p)
        want = tuple(coeffs[k] % p if k >= 0 else 0 for k in range(m - curve.r + 1, m + 1))
        assert v.entries == want


def test_matrix_product_links_to_vnm(rng):
    for _ in range(5):
        curve = random_curve(rng, rng.choice((1, 2, 3)), bound=9)
        r = curve.r
        for p in (101, 103, 107):
            if curve.h0 % p == 0:
                continue
            n = (p - 1) // 2
            V = np.array([0] * (r - 1) + [1], dtype=object)
            for m in range(1, p, 7):
                prod = V.copy()
                for k in range(1, m + 1):
                    prod = prod.dot(build_M(curve, k)) % p
                vnm = naive_vnm(curve, n, m, p).entries
                fact = 1
                for k in range(1, m + 1):
                    fact = fact * k % p
                scale = pow(2, m, p) * pow(curve.h0, m - n, p) * fact % p
                assert tuple(prod) == tuple(x * scale % p for x in vnm), (p, m)


def test_leaf_stack_matches_dense_products():
    for f in ([1, -1, 0, 0, 0, 0, 0, 1], [0, 3, -2, 0, 1, 5], [23, 19, 17, 13, 11, 7, 5, 3, 2]):
        curve = normalize(f)
        stack = leaf_matrices(curve, 1, 40)
        for k in range(1, 40):
            assert (stack[k - 1] == build_Mprime(curve, k)).all(), (f, k)
        assert leaf_matrices(curve, 5, 5).shape == (0, curve.r, curve.r)


def test_mprime_definition():
    curve = normalize([1, 2, 3, 4, 5])
    assert (build_Mprime(curve, 4) == build_M(curve, 7).dot(build_M(curve, 8))).all()
    curve = normalize([0, 2, 3, 4, 5])
    assert (build_Mprime(curve, 4) == build_M(curve, 4)).all()
