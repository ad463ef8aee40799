"""Hasse-Witt matrices at one prime, or at every good prime up to a bound."""

import heapq
import logging
from concurrent.futures import ProcessPoolExecutor

from .curve import PrimeKind, classify_primes
from .exceptions import GenusExceedsPrime
from .firstrow import _reduced_model, batch_interleaved, compute_first_row_single
from .modarith import direct_expansion_matrix, poly_mod, translate
from .reconstruct import reconstruct_matrix
from .records import HasseWittMatrix, Provenance

log = logging.getLogger(__name__)


def compute_matrix_single(fbar, p):
    """W_p of y^2 = fbar(x) over F_p from first rows at a = 0, ..., g-1."""
    fbar, d, _ = _reduced_model(fbar, p)
    g = (d - 1) // 2
    if g > p:
        raise GenusExceedsPrime("genus %d exceeds p = %d" % (g, p))
    rows = [compute_first_row_single(translate(fbar, a, p), p, a=a) for a in range(g)]
    W = reconstruct_matrix(rows, p)
    return HasseWittMatrix(p, W.entries, Provenance.SINGLE_PRIME_WHOLE)


def _direct(args):
    f, g, p = args
    W = direct_expansion_matrix(poly_mod(f, p), g, p)
    return HasseWittMatrix(p, tuple(map(tuple, W)), Provenance.DIRECT_EXPANSION)


def _single(args):
    f, p = args
    return compute_matrix_single(poly_mod(f, p), p)


def _run(fn, jobs, threads):
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, jobs))
    return [fn(job) for job in jobs]


def compute_matrices(curve, N, kappa=None, a_list=None, threads=1, meter=None):
    """Yield W_p for every odd prime p <= N of good reduction, in increasing p.

    Primes below g are expanded directly, primes dividing some nonzero
    f(a_i) (or some a_i - a_j) go through the single-prime scan, and all
    others come from g interleaved remainder forests.
    """
    g = curve.g
    a_list = list(range(g)) if a_list is None else list(a_list)
    if len(a_list) != g or len(set(a_list)) != g:
        raise ValueError("need %d distinct translations" % g)
    statuses = classify_primes(curve, N, a_list)
    by_kind = {kind: [s.p for s in statuses if s.kind is kind] for kind in PrimeKind}
    log.info(
        "N=%d: %d batch, %d exceptional, %d small, %d bad primes",
        N,
        len(by_kind[PrimeKind.BATCH_ADMISSIBLE]),
        len(by_kind[PrimeKind.EXCEPTIONAL_GOOD]),
        len(by_kind[PrimeKind.SMALL_GOOD]),
        len(by_kind[PrimeKind.BAD]),
    )
    pending = _run(_direct, [(curve.f, g, p) for p in by_kind[PrimeKind.SMALL_GOOD]], threads)
    pending += _run(_single, [(curve.f, p) for p in by_kind[PrimeKind.EXCEPTIONAL_GOOD]], threads)
    heapq.heapify(pending := [(W.p, W) for W in pending])

    batch = by_kind[PrimeKind.BATCH_ADMISSIBLE]
    if batch:
        for p, rows in batch_interleaved(curve, N, a_list, kappa, primes=batch, meter=meter):
            while pending and pending[0][0] < p:
                yield heapq.heappop(pending)[1]
            yield reconstruct_matrix(rows, p)
    while pending:
        yield heapq.heappop(pending)[1]
