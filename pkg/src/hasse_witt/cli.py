"""Command-line interface: ``batch``, ``prime``, ``check`` and ``stats``."""

import argparse
import json
import logging
import math
import sys
from contextlib import contextmanager

from .curve import normalize, parse_coeffs
from .driver import compute_matrices, compute_matrix_single
from .exceptions import HasseWittError
from .firstrow import forest_size
from .modarith import direct_expansion_matrix, poly_mod
from .primes import is_prime
from .records import HasseWittMatrix, Provenance
from .zeta import ZetaRecord, a1_histogram, lift_trace, lift_trace_residue, zeta_record

log = logging.getLogger("hasse_witt")

CHECK_LIMIT = 1 << 10


class UsageError(Exception):
    pass


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def format_record(W, rec, fmt, emit):
    if fmt == "jsonl":
        return json.dumps({"p": W.p, "w": W.rows(), "charpoly": list(rec.charpoly_modp), "trace": rec.trace_lifted})
    if emit == "matrix":
        fields = [x for row in W.entries for x in row]
    elif emit == "charpoly":
        fields = list(rec.charpoly_modp)
    else:
        fields = [W.trace(), "" if rec.trace_lifted is None else rec.trace_lifted]
    return ",".join(map(str, [W.p] + fields))


def _curve(text):
    try:
        return normalize(parse_coeffs(text))
    except (HasseWittError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _check_kappa(args):
    ell = forest_size(args.bound).bit_length() - 1
    if args.kappa is not None and not 0 <= args.kappa <= ell:
        raise UsageError("--kappa must lie in [0, %d] for --bound %d" % (ell, args.bound))


def cmd_batch(args):
    curve = _curve(args.curve)
    _check_kappa(args)
    count = 0
    with _output(args.out) as out:
        for W in compute_matrices(curve, args.bound, kappa=args.kappa, threads=args.threads):
            out.write(format_record(W, zeta_record(W), args.format, args.emit) + "\n")
            count += 1
    log.info("wrote %d records", count)
    return 0


def cmd_prime(args):
    p = args.p
    if p < 3 or not is_prime(p):
        raise UsageError("--p must be an odd prime")
    coeffs = parse_coeffs(args.curve)
    if not args.mod_p and any(not 0 <= c < p for c in coeffs):
        raise UsageError("coefficients are not reduced mod %d; pass --mod-p" % p)
    try:
        W = compute_matrix_single(poly_mod(coeffs, p), p)
    except HasseWittError as exc:
        raise UsageError(str(exc)) from None
    for row in W.entries:
        print(",".join(map(str, row)))
    return 0


def cmd_check(args):
    curve = _curve(args.curve)
    _check_kappa(args)
    limit = min(args.bound, CHECK_LIMIT)
    checked = bad = 0
    for W in compute_matrices(curve, args.bound, kappa=args.kappa, threads=args.threads):
        if W.p > limit:
            continue
        want = direct_expansion_matrix(poly_mod(curve.f, W.p), curve.g, W.p)
        checked += 1
        if W.rows() != want:
            bad += 1
            log.error("mismatch at p=%d: got %s, expected %s", W.p, W.rows(), want)
    print("checked %d primes up to %d: %d mismatches" % (checked, limit, bad), file=sys.stderr)
    return 1 if bad else 0


def _records_from(lines, emit):
    for line in lines:
        line = line.strip()
        if not line:
            continue
        if line.startswith("{"):
            obj = json.loads(line)
            W = HasseWittMatrix(obj["p"], tuple(map(tuple, obj["w"])), Provenance.RECONSTRUCTED)
            t = obj.get("trace")
            yield ZetaRecord(W.p, tuple(obj["charpoly"]), (), t if t is not None else lift_trace(W))
            continue
        fields = line.split(",")
        p = int(fields[0])
        if emit == "trace":
            t = int(fields[2]) if len(fields) > 2 and fields[2] != "" else None
            yield ZetaRecord(p, (), (), t)
        elif emit == "matrix":
            g = math.isqrt(len(fields) - 1)
            vals = list(map(int, fields[1:]))
            W = HasseWittMatrix(p, tuple(tuple(vals[i * g:(i + 1) * g]) for i in range(g)), Provenance.RECONSTRUCTED)
            yield ZetaRecord(p, (0,) * (g + 1), (), lift_trace(W))
        else:
            chi = tuple(map(int, fields[1:]))
            yield ZetaRecord(p, chi, (), lift_trace_residue(-chi[-2], len(chi) - 1, p))


def cmd_stats(args):
    with open(args.infile) as fh:
        records = list(_records_from(fh, args.emit))
    g = args.genus
    if g is None:
        sizes = {len(r.charpoly_modp) - 1 for r in records if r.charpoly_modp}
        if len(sizes) != 1:
            raise UsageError("cannot infer the genus from %s; pass --genus" % args.infile)
        g = sizes.pop()
    try:
        hist = a1_histogram(records, args.bins, g)
    except HasseWittError as exc:
        raise UsageError(str(exc)) from None
    with _output(args.out) as out:
        for line in hist.csv_lines():
            out.write(line + "\n")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="hasse-witt", description=__doc__)
    parser.add_argument("-v", "--verbose", action="count", default=0, help="progress on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, bound=True):
        p.add_argument("--curve", required=True, help="coefficients of f, constant term first, e.g. 1,1,0,1 (write --curve=-1,... for a negative first entry)")
        if bound:
            p.add_argument("--bound", type=int, required=True, help="largest prime considered")
            p.add_argument("--kappa", type=int, default=None, help="forest split parameter")
            p.add_argument("--threads", type=int, default=1, help="worker processes for per-prime fallbacks")

    p = sub.add_parser("batch", help="Hasse-Witt matrices at all good primes up to a bound")
    common(p)
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("--emit", choices=("matrix", "charpoly", "trace"), default="matrix")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("prime", help="Hasse-Witt matrix at a single prime")
    common(p, bound=False)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--mod-p", action="store_true", help="reduce the coefficients mod p first")
    p.set_defaults(func=cmd_prime)

    p = sub.add_parser("check", help="compare the batch output with direct expansion")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("stats", help="a_1 histogram from a previous batch run")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--bins", type=int, default=200)
    p.add_argument("--out", default=None)
    p.add_argument("--emit", choices=("matrix", "charpoly", "trace"), default="trace", help="layout of CSV input")
    p.add_argument("--genus", type=int, default=None)
    p.set_defaults(func=cmd_stats)
    return parser


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if getattr(args, "bound", 2) < 2:
        parser.error("--bound must be at least 2")
    try:
        return args.func(args)
    except UsageError as exc:
        print("hasse-witt: error: %s" % exc, file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
