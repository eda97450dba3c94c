"""Command-line front end: ``seczeta <command> ...``.

Exit codes: 0 on success, 1 on a usage error, 2 when validation or a
computation fails.
"""
from __future__ import annotations

import argparse
import logging
import math
import sys
import time
from pathlib import Path

import mpmath
from mpmath import mp

from ._numeric import DEFAULT_PREC, fmt, precision
from .asymptotics import e2_bound, l_main
from .estimator import estimate_bpt, estimate_plain, matched_digits, signs_differ
from .exceptions import SecZetaError
from .generator import check_counting, generate_zeros
from .integral_oracle import c_from_integral, stieltjes_identity_residual
from .laurent import REFERENCE, CoefficientTable, direct_z_envelope, direct_z_tail, laurent_eval, reference_value
from .report import Report
from .zero_source import (
    coverage_limit,
    count_below,
    default_cutoff,
    format_ordinate,
    load_zeros,
    midpoint_cutoff,
    save_zeros,
)

log = logging.getLogger("seczeta")

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; this tool reserves 2 for failures."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def residual_gate(bits: int):
    """Largest acceptable identity residual: 1e-40 at 192 bits, scaled with precision."""
    return mpmath.mpf(2) ** (59 - bits)


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or min(values) < 0:
        raise argparse.ArgumentTypeError("need at least one nonnegative integer")
    return values


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _cutoff(args, table):
    return mp.mpf(args.T) if args.T is not None else default_cutoff(table)


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _inputs(args, **extra) -> dict:
    d = {"precision": str(args.precision)}
    d.update({k: str(v) for k, v in extra.items()})
    return d


# --- zeros -----------------------------------------------------------------

def cmd_zeros_gen(args) -> int:
    t0 = time.perf_counter()
    table = generate_zeros(args.count, args.digits, grid_density=args.grid_density)
    save_zeros(table, args.out, generator=f"seczeta zeros gen --digits {args.digits}")
    print(
        f"wrote {table.count} ordinates to {args.out} "
        f"(first {format_ordinate(table.gammas[0], args.digits)}, {time.perf_counter() - t0:.1f} s)"
    )
    return EXIT_OK


def cmd_zeros_verify(args) -> int:
    table = load_zeros(args.file, min_digits=args.min_digits)
    max_q = check_counting(table)
    print(f"count: {table.count}")
    print(f"digits: {table.source_digits}")
    print(f"first: {format_ordinate(table.gammas[0], table.source_digits)}")
    print(f"last: {format_ordinate(table.gammas[-1], table.source_digits)}")
    print(f"coverage: T < {mpmath.nstr(coverage_limit(table), 12)}")
    print(f"max |Q|: {max_q:.4f}")
    return EXIT_OK


# --- estimate --------------------------------------------------------------

def estimate_records(table, ns, method, T, bits, workers) -> list[dict]:
    methods = ("plain", "bpt") if method == "both" else (method,)
    records = []
    for n in ns:
        for which in methods:
            fn = estimate_plain if which == "plain" else estimate_bpt
            est = fn(n, table, T, prec=bits, workers=workers)
            ref = reference_value(n, prec=bits)
            rec = {
                "n": str(n),
                "method": which,
                "sum": fmt(est.partial_sum, bits),
                "a_main": fmt(est.smooth_term, bits),
                "bpt_correction": fmt(est.correction, bits),
                "estimate": fmt(est.value, bits),
                "error_bound": fmt(est.error_bound, bits),
                "bound_kind": "heuristic" if est.heuristic else "proven",
                "reference": "",
                "matched_digits": "",
                "sign_flag": "",
            }
            if ref is not None:
                rec["reference"] = fmt(ref, bits)
                rec["matched_digits"] = str(matched_digits(est.value, ref, prec=bits, warn=False))
                rec["sign_flag"] = "sign-differs" if signs_differ(est.value, ref) else ""
            records.append(rec)
    return records


def cmd_estimate(args) -> int:
    t0 = time.perf_counter()
    table = load_zeros(args.zeros)
    T = _cutoff(args, table)
    records = estimate_records(table, args.n, args.method, T, args.precision, args.threads)
    rep = Report(
        command="estimate",
        inputs=_inputs(args, zeros=args.zeros, count=table.count, method=args.method),
        cutoff=fmt(T, args.precision),
        records=records,
        timing={"seconds": round(time.perf_counter() - t0, 3)},
    )
    _emit(args, rep.render(args.format))
    return EXIT_OK


# --- oracle ----------------------------------------------------------------

def cmd_oracle(args) -> int:
    t0 = time.perf_counter()
    bits = args.precision
    table = load_zeros(args.zeros)
    T = _cutoff(args, table)
    gate = residual_gate(bits)
    failed = False
    records = []
    for m in args.m:
        res = stieltjes_identity_residual(table, m, T, prec=bits, workers=args.threads)
        integ = c_from_integral(table, m, T, prec=bits, workers=args.threads)
        plain = estimate_plain(m, table, T, prec=bits, workers=args.threads)
        boundary = mpmath.log(T) ** m / T * (count_below(table, T) - l_main(T, prec=bits))
        ok = abs(res) < gate
        failed |= not ok
        records.append(
            {
                "m": str(m),
                "residual": fmt(res, bits),
                "gate": fmt(gate, bits),
                "status": "ok" if ok else "FAIL",
                "integral_estimate": fmt(integ.value, bits),
                "plain_estimate": fmt(plain.value, bits),
                "integral_minus_plain": fmt(integ.value - plain.value, bits),
                "boundary_term": fmt(boundary, bits),
            }
        )
    rep = Report(
        command="oracle",
        inputs=_inputs(args, zeros=args.zeros, count=table.count),
        cutoff=fmt(T, bits),
        records=records,
        timing={"seconds": round(time.perf_counter() - t0, 3)},
    )
    _emit(args, rep.render(args.format))
    if failed:
        print("error: identity residual exceeds the working-precision gate", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# --- laurent ---------------------------------------------------------------

def cmd_laurent(args) -> int:
    t0 = time.perf_counter()
    bits = args.precision
    coeffs = CoefficientTable.load(args.coeff_file) if args.coeff_file else REFERENCE
    with precision(bits):
        s = mpmath.mpmathify(args.s)
        max_n = None if args.terms is None else args.terms - 1
        pt = laurent_eval(s, coeffs, max_n, prec=bits)
        rec = {
            "s": args.s,
            "terms": str(pt.terms_used),
            "laurent_re": fmt(pt.value.real, bits),
            "laurent_im": fmt(pt.value.imag, bits),
            "last_term": fmt(pt.last_term, bits),
            "truncation_envelope": fmt(pt.truncation_envelope, bits),
        }
        cutoff = ""
        inputs = _inputs(args, coefficients=coeffs.provenance)
        if args.zeros:
            if mpmath.im(s) != 0 or not mpmath.re(s) > 1:
                raise SecZetaError("the direct sum needs real s > 1")
            table = load_zeros(args.zeros)
            T = _cutoff(args, table)
            sr = mpmath.re(s)
            direct = direct_z_tail(sr, table, T, prec=bits, workers=args.threads)
            rec["direct"] = fmt(direct, bits)
            rec["direct_envelope"] = fmt(direct_z_envelope(sr, T, prec=bits), bits)
            rec["gap"] = fmt(direct - pt.value.real, bits)
            cutoff = fmt(T, bits)
            inputs.update(zeros=args.zeros, count=str(table.count))
    rep = Report(
        command="laurent",
        inputs=inputs,
        cutoff=cutoff,
        records=[rec],
        timing={"seconds": round(time.perf_counter() - t0, 3)},
    )
    _emit(args, rep.render(args.format))
    return EXIT_OK


# --- converge --------------------------------------------------------------

def checkpoint_counts(total: int, checkpoints: int, smallest: int = 100) -> list[int]:
    """Geometrically spaced zero counts ending at ``total``."""
    lo = min(smallest, total)
    if checkpoints == 1 or lo == total:
        return [total]
    ratio = math.log(total / lo) / (checkpoints - 1)
    counts = sorted({round(lo * math.exp(i * ratio)) for i in range(checkpoints)})
    counts[-1] = total
    return counts


def converge_records(table, n, counts, bits, workers) -> list[dict]:
    ref = reference_value(n, prec=bits)
    records = []
    for c in counts:
        # interior checkpoints sit midway between zeros c and c+1;
        # the last one uses the same cutoff the estimate command defaults to
        T = default_cutoff(table) if c == table.count else midpoint_cutoff(table, c)
        plain = estimate_plain(n, table, T, prec=bits, workers=workers)
        bpt = estimate_bpt(n, table, T, prec=bits, workers=workers)
        records.append(
            {
                "zeros": str(c),
                "T": fmt(T, bits),
                "plain": fmt(plain.value, bits),
                "bpt": fmt(bpt.value, bits),
                "e2_bound": fmt(e2_bound(n, T, prec=bits), bits),
                "plain_error": "" if ref is None else fmt(abs(plain.value - ref), bits),
                "bpt_error": "" if ref is None else fmt(abs(bpt.value - ref), bits),
            }
        )
    return records


def cmd_converge(args) -> int:
    t0 = time.perf_counter()
    table = load_zeros(args.zeros)
    with precision(args.precision) as bits:
        counts = checkpoint_counts(table.count, args.checkpoints)
        records = converge_records(table, args.n, counts, bits, args.threads)
    rep = Report(
        command="converge",
        inputs=_inputs(args, zeros=args.zeros, count=table.count, n=args.n),
        records=records,
        timing={"seconds": round(time.perf_counter() - t0, 3)},
    )
    _emit(args, rep.render(args.format))
    return EXIT_OK


# --- parser ----------------------------------------------------------------

def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--precision", type=int, default=d(DEFAULT_PREC), metavar="BITS", help="working precision in bits (default 192)")
    p.add_argument("--threads", type=_positive_int, default=d(None), metavar="K", help="worker threads (default auto; results do not depend on it)")
    p.add_argument("--T", default=d(None), metavar="DECIMAL", help="cutoff height (default: just past the last zero)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="seczeta", description="Laurent coefficients of the secondary zeta function from zero tables.")
    _global_flags(parser, suppress=False)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    _global_flags(common, suppress=True)

    zeros = sub.add_parser("zeros", help="generate or verify zero tables")
    zsub = zeros.add_subparsers(dest="zeros_command", required=True, parser_class=_Parser)
    gen = zsub.add_parser("gen", parents=[common], help="compute the first zeros")
    gen.add_argument("--count", type=_positive_int, required=True)
    gen.add_argument("--digits", type=_positive_int, required=True)
    gen.add_argument("--out", required=True)
    gen.add_argument("--grid-density", type=_positive_int, default=1)
    gen.set_defaults(func=cmd_zeros_gen)
    ver = zsub.add_parser("verify", parents=[common], help="validate a zero table")
    ver.add_argument("file")
    ver.add_argument("--min-digits", type=_positive_int, default=1)
    ver.set_defaults(func=cmd_zeros_verify)

    fmt_choices = ("json", "csv", "text")

    est = sub.add_parser("estimate", parents=[common], help="estimate C_n from a zero table")
    est.add_argument("--n", type=_int_list, default=[0, 1, 2], help="comma-separated list (default 0,1,2)")
    est.add_argument("--zeros", required=True)
    est.add_argument("--method", choices=("plain", "bpt", "both"), default="bpt")
    est.add_argument("--format", choices=fmt_choices, default="text")
    est.add_argument("--out")
    est.set_defaults(func=cmd_estimate)

    orc = sub.add_parser("oracle", parents=[common], help="check the finite-T identity and the integral path")
    orc.add_argument("--m", type=_int_list, default=[0, 1, 2])
    orc.add_argument("--zeros", required=True)
    orc.add_argument("--format", choices=fmt_choices, default="text")
    orc.add_argument("--out")
    orc.set_defaults(func=cmd_oracle)

    lau = sub.add_parser("laurent", parents=[common], help="evaluate the truncated Laurent series")
    lau.add_argument("--s", required=True, help="real or complex point, e.g. 2 or 1.5+0.5j")
    lau.add_argument("--terms", type=_positive_int, help="number of C_n terms (default: all contiguous)")
    lau.add_argument("--coeff-file")
    lau.add_argument("--zeros", help="zero table for the direct evaluation at real s > 1")
    lau.add_argument("--format", choices=fmt_choices, default="text")
    lau.add_argument("--out")
    lau.set_defaults(func=cmd_laurent)

    con = sub.add_parser("converge", parents=[common], help="convergence series over growing zero counts")
    con.add_argument("--n", type=int, default=0)
    con.add_argument("--zeros", required=True)
    con.add_argument("--checkpoints", type=_positive_int, default=10)
    con.add_argument("--format", choices=fmt_choices, default="csv")
    con.add_argument("--out")
    con.set_defaults(func=cmd_converge)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.precision < 53:
        parser.print_usage(sys.stderr)
        print("seczeta: error: --precision must be at least 53 bits", file=sys.stderr)
        return EXIT_USAGE
    if args.T is not None:
        try:
            mpmath.mpf(args.T)
        except ValueError:
            print(f"seczeta: error: --T {args.T!r} is not a number", file=sys.stderr)
            return EXIT_USAGE
    try:
        with precision(args.precision):
            return args.func(args)
    except (SecZetaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
