"""Command-line front end: verify identities, compute constants, sweep limit paths."""

import argparse
import csv
import difflib
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import exceptional_limits as el
from . import identity_catalog as ic
from .constants import REFERENCE, matched_digits, registry
from .errors import ZetaIdError
from .precision import get_mode, precision

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
TOL_RANGE = (1e-14, 1e-2)
MIN_DIGITS = 10


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _tolerance(text):
    value = float(text)
    if not TOL_RANGE[0] <= value <= TOL_RANGE[1]:
        raise argparse.ArgumentTypeError(f"tolerance must lie in [{TOL_RANGE[0]:g}, {TOL_RANGE[1]:g}]")
    return value


def build_parser():
    p = _Parser(prog="zetaid", description="Numerical verification of critical-line zeta integral identities.")
    p.add_argument("--precision", choices=("double", "dd"), default=None,
                   help="working precision (default: ZID_PRECISION or double)")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker pool size")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="verify identities")
    which = v.add_mutually_exclusive_group(required=True)
    which.add_argument("--id")
    which.add_argument("--all", action="store_true")
    v.add_argument("--class", dest="cls", choices=tuple(ic.CLASS_ALIASES))
    v.add_argument("--tol", type=_tolerance, default=1e-8)
    v.add_argument("--json", dest="json_path")

    c = sub.add_parser("constants", help="compute the integral constants")
    c.add_argument("--name", choices=tuple(REFERENCE) + ("all",), default="all")
    c.add_argument("--tol", type=_tolerance, default=1e-12)

    e = sub.add_parser("explore", help="sweep a path towards an exceptional point")
    e.add_argument("--mode", choices=("arc", "radial", "ray", "theta"), required=True)
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--w", type=float, choices=(0.0, 0.5), default=None,
                   help="offset (default 0; the theta path always uses 1/2)")
    e.add_argument("--alpha", type=float, default=0.0)
    e.add_argument("--steps", type=int, default=len(el.STEP_SCHEDULE))
    e.add_argument("--csv", dest="csv_path")

    s = sub.add_parser("cesaro", help="Cesaro average of a record's integral")
    s.add_argument("--id", required=True)
    s.add_argument("--segments", type=int, required=True)
    s.add_argument("--csv", dest="csv_path")

    ls = sub.add_parser("list", help="list the catalog")
    ls.add_argument("--class", dest="cls", choices=tuple(ic.CLASS_ALIASES))
    ls.add_argument("--json", action="store_true")
    return p


def _unknown_id(id_, out):
    near = difflib.get_close_matches(id_, ic.catalog().ids(), n=5, cutoff=0.4)
    print(f"unknown identity {id_!r}", file=out)
    if near:
        print("nearest ids: " + ", ".join(near), file=out)
    return EXIT_USAGE


def _fmt(x):
    return f"{x:.17g}" if isinstance(x, float) else str(x)


def _human(rep):
    status = "PASS" if rep.passed else "FAIL"
    label = "consistency-verified" if rep.cls in (ic.AC, ic.INDETERMINATE) else "quadrature-verified"
    if rep.cls == ic.MOMENT:
        label = "moment-verified"
    lines = [f"{status} {rep.id} [{rep.cls}; {label}]",
             f"    lhs = {_fmt(rep.lhs)}", f"    rhs = {_fmt(rep.rhs)}",
             f"    abs_err = {rep.abs_err:.3e} (tolerance {rep.tolerance:.1e})"]
    if rep.quadrature is not None and rep.cls == ic.CONVERGENT:
        q = rep.quadrature
        lines.append(f"    truncation {q.truncation_point:.6g}, {q.subdivisions} subdivisions, "
                     f"tail bound {q.tail_bound:.2e}")
    lines += [f"    note: {n}" for n in rep.notes]
    return "\n".join(lines)


def cmd_verify(args, out):
    if args.id is not None:
        if args.id not in ic.catalog():
            return _unknown_id(args.id, out)
        ids = [args.id]
    else:
        cls = ic.CLASS_ALIASES.get(args.cls)
        ids = [r.id for r in ic.catalog() if cls is None or r.cls == cls]
    mode = get_mode()

    def run(id_):
        with precision(mode):
            return ic.verify(id_, tol=args.tol)

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        reports = sorted(pool.map(run, ids), key=lambda r: r.id)
    for rep in reports:
        print(_human(rep), file=out)
    failed = [r.id for r in reports if not r.passed]
    print(f"{len(reports) - len(failed)}/{len(reports)} passed", file=out)
    if args.json_path:
        doc = {"schema_version": ic.SCHEMA_VERSION, "precision": mode,
               "reports": [r.as_dict() for r in reports]}
        with open(args.json_path, "w") as fh:
            fh.write(ic.dumps(doc) + "\n")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_constants(args, out):
    names = tuple(REFERENCE) if args.name == "all" else (args.name,)
    ok = True
    for name in names:
        value = registry.get(name)
        ref = REFERENCE[name]
        digits = matched_digits(value, ref)
        good = digits >= MIN_DIGITS and abs(value - ref) <= max(args.tol, 10.0 ** -MIN_DIGITS * abs(ref))
        ok = ok and digits >= MIN_DIGITS
        print(f"{name:3s} computed {value: .17g}  reference {ref: .17g}  digits {digits:5.2f}"
              f"  {'ok' if good else 'LOW'}", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_explore(args, out):
    w = args.w if args.w is not None else (0.5 if args.mode == "theta" else 0.0)
    try:
        result = el.sweep(args.mode, args.m, w, alpha=args.alpha, n_steps=args.steps)
    except (ZetaIdError, ValueError) as exc:
        print(f"invalid exploration: {exc}", file=out)
        return EXIT_USAGE
    rows = result.rows()
    if args.csv_path:
        el.write_csv(args.csv_path, rows)
    else:
        el.write_csv(out, rows)
    c = result.classification
    coef = "n/a" if c.fitted_pole_coefficient is None else f"{c.fitted_pole_coefficient:.10g}"
    print(f"classification ({result.branch} branch): {c.label}; fitted pole coefficient {coef}; "
          f"fit residual {c.fit_residual:.2e}", file=out)
    return EXIT_OK


def cmd_cesaro(args, out):
    if args.id not in ic.catalog():
        return _unknown_id(args.id, out)
    rec = ic.get(args.id)
    claimed, label = rec.claimed, "claimed value"
    if claimed is None and rec.cls == ic.CONVERGENT:
        # absolutely convergent: the reference is the direct quadrature
        claimed, label = ic.evaluate_lhs(rec).value, "direct quadrature"
    if claimed is None:
        print(f"{rec.id} has no claimed value to compare against", file=out)
        return EXIT_USAGE
    if args.segments < 1:
        print("segments must be positive", file=out)
        return EXIT_USAGE
    steps = ic.cesaro_series(rec, args.segments)
    rows = [(s.index, s.partial_value, s.running_average) for s in steps]
    if args.csv_path:
        with open(args.csv_path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(("segment", "partial_sum", "running_average"))
            w.writerows((i, _fmt(p), _fmt(a)) for i, p, a in rows)
    last = steps[-1]
    print(f"{rec.id}: {len(steps)} segments of length {rec.cesaro_segment or 1.0:.6g}", file=out)
    print(f"final partial sum {last.partial_value:.12g}", file=out)
    print(f"final average     {last.running_average:.12g}", file=out)
    err = sum(s.error for s in steps)
    # a convergent integral is the limit of its partial sums; the average only lags behind it
    compared = last.partial_value if label == "direct quadrature" else last.running_average
    print(f"{label:17s} {claimed:.12g}  (difference {abs(compared - claimed):.3e}, "
          f"summed segment error {err:.1e})", file=out)
    flagged = sum(1 for s in steps if s.flagged)
    if flagged:
        print(f"{flagged} segments flagged for slow quadrature convergence", file=out)
    return EXIT_OK


def cmd_list(args, out):
    if args.json:
        print(ic.catalog_json(args.cls), file=out)
        return EXIT_OK
    for id_, cls, anchor in ic.list_identities(args.cls):
        print(f"{id_:22s} {cls:22s} {anchor}", file=out)
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "constants": cmd_constants, "explore": cmd_explore,
            "cesaro": cmd_cesaro, "list": cmd_list}


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    mode = args.precision or get_mode()
    with precision(mode):
        return COMMANDS[args.command](args, out)


if __name__ == "__main__":
    sys.exit(main())
