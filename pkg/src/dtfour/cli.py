"""Command-line front end: ``dtfour {partitions,zc4,local-curve,residue,verify}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction

from .exact import ComputationAbort, ParamContext, RatFn, format_rat, parse_rat
from .formulas import (
    InvalidTopologicalData,
    LocalCurveData,
    SplittingDatum,
    ck_closed_form,
    f_inf0_residue,
    gluing_check,
    local_curve_exponent,
    local_curve_series,
    no_insertion_closed,
    no_insertion_exponent,
    w_from_f_inf0,
    w_infinity,
)
from .partitions import MAX_SIZE, enumerate_plane, enumerate_solid
from .qseries import QSeries, log_macmahon_neg
from .vertex import calibrate_sign_rule, default_jobs, z_c4_localized, z_c4_no_insertion
from .verify import SUITES, genericity_bound, run_suite, sample_contexts

log = logging.getLogger("dtfour")


class CliError(ComputationAbort):
    pass


def _rat(text):
    try:
        return parse_rat(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected a rational p/q, got {text!r}") from exc


def _size(text):
    n = int(text)
    if not 0 <= n <= MAX_SIZE:
        raise argparse.ArgumentTypeError(f"size must be in 0..{MAX_SIZE}")
    return n


def _dump_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def _encode(c):
    return c.to_json() if isinstance(c, RatFn) else format_rat(c)


def _short(c) -> str:
    return format_rat(c) if isinstance(c, Fraction) else str(c)


def _num_den(c):
    if isinstance(c, RatFn):
        return (";".join(format_rat(x) for x in c.num.coeffs), ";".join(format_rat(x) for x in c.den.coeffs))
    return format_rat(c), "1"


def _table(headers, rows) -> str:
    cols = [headers] + [[str(x) for x in row] for row in rows]
    widths = [max(len(r[i]) for r in cols) for i in range(len(headers))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in cols]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _csv(series: QSeries, extra=None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["n", "coeff_num", "coeff_den"] + ([extra[0]] if extra else [])
    w.writerow(header)
    for n, c in enumerate(series.coeffs):
        row = [n, *_num_den(c)]
        if extra:
            row.append(str(extra[1][n]).lower())
        w.writerow(row)
    return buf.getvalue().rstrip("\n")


def _fmt(args) -> str:
    if getattr(args, "json", False):
        return "json"
    if getattr(args, "csv", False):
        return "csv"
    return getattr(args, "format", None) or "human"


def _context(args) -> ParamContext:
    bound = args.genericity_bound or genericity_bound(args.nmax)
    ctx = ParamContext(args.s2, args.s3, args.m, bound, getattr(args, "s1", None))
    bad = ctx.genericity_violation()
    if bad is not None:
        combo = " + ".join(f"{c}*{v}" for v, c in bad.items())
        msg = f"non-generic context: {combo} = 0"
        if args.strict:
            raise CliError(msg)
        log.warning("%s (continuing; zero weights abort the run)", msg)
        args._genericity_warning = msg
    return ctx


def _add_context_flags(p, m_default=None):
    p.add_argument("--s2", type=_rat, required=True)
    p.add_argument("--s3", type=_rat, required=True)
    if m_default is None:
        p.add_argument("--m", type=_rat, required=True)
    else:
        p.add_argument("--m", type=_rat, default=m_default)
    p.add_argument("--s1", type=_rat, default=None, help="bind s1 too (fully numeric mode)")
    p.add_argument("--genericity-bound", type=int, default=None,
                   help="coefficient bound B for the genericity test (default 4*(nmax+1))")
    p.add_argument("--strict", action="store_true", help="reject non-generic contexts (exit 3)")


def _add_format_flags(p, csv_ok=True):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true")
    if csv_ok:
        g.add_argument("--csv", action="store_true")
        g.add_argument("--format", choices=("human", "json", "csv"))
    else:
        g.add_argument("--format", choices=("human", "json"))


# ---------------------------------------------------------------------------
# subcommands


def cmd_partitions(args, out):
    gen = enumerate_solid if args.dim == 4 else enumerate_plane
    parts = list(gen(args.size))
    fmt = _fmt(args)
    if fmt == "json":
        doc = {"dim": args.dim, "size": args.size, "count": len(parts)}
        if args.list:
            doc["partitions"] = [p.nested() for p in parts]
        out.write(_dump_json(doc) + "\n")
    elif args.list:
        for p in parts:
            out.write(json.dumps(p.nested()) + "\n")
    else:
        out.write(f"{len(parts)}\n")
    return 0


def _sign_rule(seed):
    return calibrate_sign_rule(2, sample_contexts(seed, 3, salt="calibration"))


def cmd_zc4(args, out):
    ctx = _context(args)
    insertion = not args.no_insertion
    doc = {"command": "zc4", "nmax": args.nmax, "context": ctx.to_json(), "mode": args.mode,
           "insertion": insertion}
    loc = closed = None
    if args.mode in ("localization", "both"):
        rule = _sign_rule(args.seed)
        doc["sign_rule"] = {"identifier": rule.identifier, "survivors": rule.record["survivors"],
                            "selected": rule.record["selected"]}
        engine = z_c4_localized if insertion else z_c4_no_insertion
        loc = engine(args.nmax, ctx, rule, args.jobs)
        doc["localization"] = loc.to_json()
    if args.mode in ("closed", "both"):
        if insertion:
            closed = ck_closed_form(args.nmax, ctx)
        else:
            c = no_insertion_exponent(ctx)
            closed = no_insertion_closed(args.nmax, ctx, c if args.no_insertion_sign == "printed" else -c)
            doc["no_insertion_sign"] = args.no_insertion_sign
        doc["closed"] = closed.to_json()
    matches = None
    if loc is not None and closed is not None:
        matches = [a == b for a, b in zip(loc.coeffs, closed.coeffs)]
        doc["coefficient_match"] = matches
        doc["match"] = all(matches)
    if getattr(args, "_genericity_warning", None):
        doc["genericity_warning"] = args._genericity_warning

    fmt = _fmt(args)
    primary = loc if loc is not None else closed
    if fmt == "json":
        out.write(_dump_json(doc) + "\n")
    elif fmt == "csv":
        out.write(_csv(primary, ("match", matches) if matches else None) + "\n")
    else:
        headers = ["n"] + (["localization"] if loc else []) + (["closed"] if closed else [])
        headers += ["match"] if matches else []
        rows = []
        for n in range(args.nmax + 1):
            row = [n] + ([_short(loc[n])] if loc else []) + ([_short(closed[n])] if closed else [])
            rows.append(row + ([str(matches[n]).lower()] if matches else []))
        if "sign_rule" in doc:
            out.write(f"sign rule: {doc['sign_rule']['identifier']}\n")
        out.write(_table(headers, rows) + "\n")
        if matches is not None:
            out.write(f"match: {str(all(matches)).lower()}\n")
    return 0 if matches is None or all(matches) else 1


def _parse_data(text) -> LocalCurveData:
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected five integers g,l1,l2,l3,l, got {text!r}") from exc
    if len(vals) != 5:
        raise argparse.ArgumentTypeError(f"expected five integers g,l1,l2,l3,l, got {text!r}")
    return LocalCurveData(*vals)


def cmd_local_curve(args, out):
    ctx = _context(args)
    data = LocalCurveData(args.g, args.l1, args.l2, args.l3, args.l).validate()
    E = local_curve_exponent(data, ctx)
    series = local_curve_series(data, ctx, args.nmax)
    doc = {"command": "local-curve", "data": list(data.as_tuple()), "r": data.r,
           "context": ctx.to_json(), "exponent": _encode(E), "series": series.to_json()}
    ok = True
    if args.split is not None:
        left = args.split
        right = data - left
        ok = gluing_check(data, SplittingDatum(left, right), ctx, args.nmax)
        doc["split"] = {"left": list(left.as_tuple()), "right": list(right.as_tuple()), "gluing": ok}
    fmt = _fmt(args)
    if fmt == "json":
        out.write(_dump_json(doc) + "\n")
    elif fmt == "csv":
        out.write(_csv(series) + "\n")
    else:
        out.write(f"data {data}  r = {data.r}\nexponent: {_short(E)}\n")
        out.write(_table(["n", "coefficient"], [[n, _short(c)] for n, c in enumerate(series.coeffs)]) + "\n")
        if args.split is not None:
            out.write(f"split {left} + {right}: gluing {'PASS' if ok else 'FAIL'}\n")
    return 0 if ok else 1


def cmd_residue(args, out):
    ctx = _context(args)
    F0 = f_inf0_residue(ck_closed_form(args.nmax, ctx))
    want = log_macmahon_neg(args.nmax) * ctx.m
    w_ok = w_from_f_inf0(F0, ctx) == w_infinity(args.nmax, ctx)
    matches = [a == b for a, b in zip(F0.coeffs, want.coeffs)]
    doc = {"command": "residue", "context": ctx.to_json(), "f_inf0": F0.to_json(),
           "expected": want.to_json(), "coefficient_match": matches, "match": all(matches),
           "w_infinity_from_f_inf0": w_ok}
    fmt = _fmt(args)
    if fmt == "json":
        out.write(_dump_json(doc) + "\n")
    elif fmt == "csv":
        out.write(_csv(F0, ("match", matches)) + "\n")
    else:
        rows = [[n, format_rat(a), format_rat(b), str(ok).lower()]
                for n, (a, b, ok) in enumerate(zip(F0.coeffs, want.coeffs, matches))]
        out.write(_table(["n", "F_inf0", "m*log M(-q)", "match"], rows) + "\n")
        out.write(f"match: {str(all(matches)).lower()}\n")
        out.write(f"W_inf from F_inf0: {str(w_ok).lower()}\n")
    return 0 if all(matches) and w_ok else 1


def cmd_verify(args, out):
    report = run_suite(args.suite, args.nmax, args.trials, args.seed, args.perturb, args.jobs)
    if args.json:
        out.write(report.dumps(args.timings) + "\n")
    elif args.junit:
        out.write(report.to_junit() + "\n")
    else:
        rows = []
        for c in sorted(report.checks, key=lambda c: c.name):
            verdict = "PASS" if c.verdict else ("FAIL (advisory)" if c.advisory else "FAIL")
            row = [c.name, verdict, c.order]
            if args.timings:
                row.append(f"{report.timings.get(c.name, 0.0):.2f}s")
            rows.append(row)
        headers = ["check", "verdict", "order"] + (["time"] if args.timings else [])
        if report.sign_rule:
            out.write(f"sign rule: {report.sign_rule['identifier']}\n")
        out.write(_table(headers, rows) + "\n")
        for c in report.failures():
            out.write(f"witness {c.name}: {json.dumps(c.witness, sort_keys=True)}\n")
        out.write(f"{report.suite}: {report.verdict}\n")
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dtfour", description=__doc__)
    parser.add_argument("--jobs", type=int, default=None,
                        help="worker processes (default: $DTFOUR_JOBS or all cores)")
    parser.add_argument("--log-level", default="WARNING")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partitions", help="enumerate plane (dim 3) or solid (dim 4) partitions")
    p.add_argument("--dim", type=int, choices=(3, 4), required=True)
    p.add_argument("--size", type=_size, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--count", action="store_true")
    g.add_argument("--list", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("zc4", help="the C^4 series by localization and/or closed form")
    p.add_argument("--nmax", type=_size, required=True)
    _add_context_flags(p, m_default=Fraction(1))
    p.add_argument("--mode", choices=("localization", "closed", "both"), default="both")
    p.add_argument("--no-insertion", action="store_true")
    p.add_argument("--no-insertion-sign", choices=("printed", "derived"), default="printed",
                   help="sign of the no-insertion exponent used by the closed form")
    p.add_argument("--seed", type=int, default=0, help="seed for the calibration contexts")
    _add_format_flags(p)
    p.set_defaults(func=cmd_zc4)

    p = sub.add_parser("local-curve", help="log CY local curve series and gluing")
    for name in ("g", "l1", "l2", "l3", "l"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--nmax", type=_size, required=True)
    _add_context_flags(p)
    p.add_argument("--split", type=_parse_data, default=None, help='left side "g-,l1-,l2-,l3-,l-"')
    _add_format_flags(p)
    p.set_defaults(func=cmd_local_curve)

    p = sub.add_parser("residue", help="F_inf0 as the s1 = 0 residue of log Z(C^4)")
    p.add_argument("--nmax", type=_size, required=True)
    _add_context_flags(p)
    _add_format_flags(p)
    p.set_defaults(func=cmd_residue)

    p = sub.add_parser("verify", help="run acceptance batteries")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--nmax", type=_size, default=4)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--perturb", choices=("sign", "exponent"), default=None,
                   help="negative control: inject an error that must be detected")
    p.add_argument("--timings", action="store_true")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true")
    g.add_argument("--junit", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), format="%(levelname)s %(name)s: %(message)s")
    args.jobs = default_jobs() if args.jobs is None else max(1, args.jobs)
    if getattr(args, "command", None) == "verify" and args.nmax < 1:
        parser.error("--nmax must be at least 1 for verify")
    try:
        return args.func(args, out)
    except (ComputationAbort, InvalidTopologicalData) as exc:
        diag = {"error": type(exc).__name__, "message": str(exc), "command": args.command}
        sys.stderr.write(_dump_json(diag) + "\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
