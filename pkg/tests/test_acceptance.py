"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v``; the scaling test takes several
minutes and can be deselected with ``-m "not slow"``.
"""

import math
import random
import subprocess
import sys
import time

import pytest

from hasse_witt import cli
from hasse_witt.curve import normalize
from hasse_witt.driver import compute_matrices
from hasse_witt.firstrow import admissible_primes, compute_first_row_single, compute_first_rows
from hasse_witt.modarith import direct_expansion_matrix, legendre, poly_eval, poly_mod, translate
from hasse_witt.records import HasseWittRow, Provenance
from hasse_witt.reconstruct import correction_term, reconstruct_matrix, translation_matrix
from hasse_witt.remtree import StorageMeter, remainder_forest, remainder_tree, scalar_remainder_forest
from hasse_witt.zeta import a1_histogram, lift_trace, zeta_record

from conftest import GOLDEN_F, GOLDEN_W, random_curve

GENUS2 = [1, -1, 0, 1, 0, 1]


@pytest.fixture
def report(record_property):
    def _report(n, detail):
        record_property("detail", detail)
        print("criterion %d: %s" % (n, detail))

    return _report


def matmul(A, B, p):
    return [[sum(a * b for a, b in zip(row, col)) % p for col in zip(*B)] for row in A]


def naive_products(V, A, m):
    out, cur = [], [int(x) for x in V]
    r = len(cur)
    for n in range(1, len(m)):
        cur = [sum(cur[i] * A[n - 1][i][j] for i in range(r)) for j in range(r)]
        out.append([x % m[n] for x in cur])
    return out


def random_tree_input(rng, b):
    r = rng.randint(1, 4)
    V = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(r)]
    A = [[[rng.randint(-10 ** 6, 10 ** 6) for _ in range(r)] for _ in range(r)] for _ in range(b)]
    m = [1] + [rng.randint(1, 10 ** 4) for _ in range(b - 1)]
    return V, A, m


def test_01_golden_prime_cli(report):
    t0 = time.perf_counter()
    res = subprocess.run(
        [sys.executable, "-m", "hasse_witt", "prime", "--curve", ",".join(map(str, GOLDEN_F)), "--p", "97", "--mod-p"],
        capture_output=True, text=True,
    )
    elapsed = time.perf_counter() - t0
    got = [list(map(int, line.split(","))) for line in res.stdout.split()]
    report(1, "W_97=%s in %.3f s (limit 1 s)" % (got, elapsed))
    assert res.returncode == 0
    assert got == GOLDEN_W
    assert elapsed < 1.0


def test_02_intermediate_values(report):
    p = 97
    rows = [compute_first_row_single(translate(GOLDEN_F, a, p), p, a) for a in range(3)]
    cols = [[GOLDEN_W[i][j] for i in range(3)] for j in range(3)]
    corr = {(j, a): correction_term(j, a, cols, p) for j, a in ((2, 1), (2, 2), (3, 1), (3, 2))}
    report(2, "rows %s, corrections %s" % ([r.entries for r in rows], corr))
    assert [r.entries for r in rows] == [(9, 37, 54), (43, 60, 30), (5, 70, 84)]
    assert corr == {(2, 1): 54, (2, 2): 87, (3, 1): 31, (3, 2): 88}
    assert reconstruct_matrix(rows, p).rows() == GOLDEN_W


def test_03_oracle_sweep(report):
    rng = random.Random(3)
    N = 1 << 10
    t0 = time.perf_counter()
    checked = mismatches = 0
    for genus in (1, 2, 3):
        for _ in range(10):
            curve = random_curve(rng, genus)
            for W in compute_matrices(curve, N):
                checked += 1
                if W.rows() != direct_expansion_matrix(poly_mod(curve.f, W.p), genus, W.p):
                    mismatches += 1
    elapsed = time.perf_counter() - t0
    report(3, "30 curves, %d matrices, %d mismatches, %.1f s (limit 300 s)" % (checked, mismatches, elapsed))
    assert mismatches == 0
    assert elapsed < 300


def test_04_batch_single_agreement(report):
    rng = random.Random(4)
    N = 1 << 13
    checked = mismatches = 0
    for _ in range(5):
        curve = random_curve(rng, 3)
        rows = compute_first_rows(curve, N)
        assert sorted(rows) == admissible_primes(curve, N)
        for p, row in rows.items():
            checked += 1
            if row.entries != compute_first_row_single(curve.f, p).entries:
                mismatches += 1
    report(4, "5 genus-3 curves, %d first rows, %d mismatches" % (checked, mismatches))
    assert mismatches == 0


def test_05_kappa_independence(report):
    rng = random.Random(5)
    bad = 0
    for _ in range(100):
        V, A, m = random_tree_input(rng, rng.choice((8, 16, 32, 64)))
        outs = [remainder_forest(V, A, m, k) for k in (0, 1, 2, 3, None)]
        bad += any(o != outs[0] for o in outs)
    curve = normalize(GENUS2)
    runs = [compute_first_rows(curve, 1 << 12, kappa=k) for k in (0, 1, 2, 3, None)]
    same_curve = all(r == runs[0] for r in runs)
    report(5, "%d/100 random instances differ across kappa; genus-2 N=2^12 identical: %s" % (bad, same_curve))
    assert bad == 0
    assert same_curve


def test_06_tree_oracle(report):
    rng = random.Random(6)
    bad = 0
    for _ in range(200):
        V, A, m = random_tree_input(rng, rng.randint(1, 64))
        bad += remainder_tree(V, A, m) != naive_products(V, A, m)
    report(6, "%d/200 instances differ from the sequential product" % bad)
    assert bad == 0


def exhaustive_count(f, p):
    squares = [0] * p
    for y in range(p):
        squares[y * y % p] += 1
    affine = sum(squares[poly_eval(f, x, p)] for x in range(p))
    return affine + 1  # cubic: one point at infinity


def test_07_genus_one_point_counts(report):
    checked = bad = 0
    for a, b in ((1, 1), (-1, 1), (2, 3)):
        curve = normalize([b, a, 0, 1])
        for W in compute_matrices(curve, 500):
            if W.p <= 16:
                continue
            checked += 1
            bad += lift_trace(W) != W.p + 1 - exhaustive_count(curve.f, W.p)
    report(7, "%d primes, %d lifted traces differ from p + 1 - #C(F_p)" % (checked, bad))
    assert checked > 0 and bad == 0


def test_08_fourth_root(report):
    N = 1 << 12
    checked = bad = 0
    for f in (GOLDEN_F, [1, -1, 0, 0, 0, 0, 0, 1], [0, 3, -2, 0, 1, 5], [0, -1, 0, 0, 0, 0, 0, 1], GENUS2):
        curve = normalize(f)
        primes = admissible_primes(curve, N)
        top = curve.e * ((max(primes) - 1) // 2)
        moduli = [1] * top
        for p in primes:
            moduli[curve.e * ((p - 1) // 2) - 1] = p
        facts = scalar_remainder_forest(list(range(1, top + 1)), moduli)
        for p in primes:
            delta = facts[curve.e * ((p - 1) // 2) - 1]
            u = legendre(curve.h0, p) ** (curve.e - 1) * delta % p
            checked += 1
            bad += pow(u, 4, p) != 1 or (curve.e == 2 and delta != p - 1)
    report(8, "%d (curve, prime) pairs, %d violations" % (checked, bad))
    assert bad == 0


def test_09_round_trip(report):
    rng = random.Random(9)
    primes = [3, 5, 7, 11, 13, 97, 101, 1009, 7919, 65537, 2 ** 31 - 1]
    bad = 0
    for _ in range(500):
        p = rng.choice(primes)
        g = rng.randint(1, min(p, 8))
        W = [[rng.randrange(p) for _ in range(g)] for _ in range(g)]
        a_list = [x - p // 2 for x in rng.sample(range(p), g)]
        rows = [
            HasseWittRow(p, a, tuple(matmul(matmul(translation_matrix(a, g, p), W, p), translation_matrix(-a, g, p), p)[0]), Provenance.BATCH)
            for a in a_list
        ]
        bad += reconstruct_matrix(rows, p).rows() != W
    report(9, "%d/500 round trips failed" % bad)
    assert bad == 0


def _batch_time(N, path):
    t0 = time.perf_counter()
    code = cli.run(["batch", "--curve", ",".join(map(str, GENUS2)), "--bound", str(N), "--out", str(path)])
    assert code == 0
    return time.perf_counter() - t0


@pytest.mark.slow
def test_10_scaling(report, tmp_path):
    t20 = _batch_time(1 << 20, tmp_path / "n20.csv")
    t22 = _batch_time(1 << 22, tmp_path / "n22.csv")
    ratio = t22 / t20
    report(10, "batch N=2^20 %.1f s, N=2^22 %.1f s, ratio %.2f (limit 6.0)" % (t20, t22, ratio))
    assert ratio <= 6.0


def test_11_memory(report):
    curve = normalize(GENUS2)
    peaks = {}
    for kappa in (0, 4):
        meter = StorageMeter()
        compute_first_rows(curve, 1 << 18, kappa=kappa, meter=meter)
        peaks[kappa] = meter.peak_bits
    frac = peaks[4] / peaks[0]
    report(11, "peak node storage kappa=4 %d bits, kappa=0 %d bits, ratio %.3f (limit 0.40)" % (peaks[4], peaks[0], frac))
    assert frac < 0.40


def test_12_sato_tate_symmetry(report):
    curve = normalize([1, -1, 0, 0, 0, 0, 0, 1])
    records = [zeta_record(W) for W in compute_matrices(curve, 1 << 16)]
    hist = a1_histogram(records, bins=200, g=3)
    values = [r.a1_normalized for r in records if r.a1_normalized is not None]
    counts = hist.counts
    worst = 0.0
    for i in range(len(counts) // 2):
        a, b = counts[i], counts[-1 - i]
        if a + b:
            worst = max(worst, abs(a - b) / math.sqrt(a + b))
    report(12, "%d values in [%.2f, %.2f], worst mirrored-bin deviation %.2f sigma (limit 3)" % (len(values), min(values), max(values), worst))
    assert -6 <= min(values) and max(values) <= 6
    assert worst <= 3.0
