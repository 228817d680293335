"""Command-line interface.

Exit codes: 0 success, 1 self-test mismatch, 2 parse or validation error,
3 hypothesis violation, 4 undecided sign, 5 non-integral class number.

Field file (JSON):
    {"name": str, "min_poly": [int...] ascending monic, "discriminant": int,
     "integral_basis": optional [[rational-string...]] rows in the power basis,
     "fundamental_units": optional [[int...]], "totally_positive_units": [[int...]],
     "q2": int (default 1), "embedding_order": "ascending" | "descending"}

Table CSV columns: p, w_K, Q1, Q2, sizes, h_K, error.  `sizes` lists
|R^tau| as "tau:size" joined by ";".
"""
import argparse
import csv
import io as _io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import io
from .exact import q_str
from .lfun import (NonIntegralClassNumber, class_number_cm, decompose, real_quadratic_skeleton,
                   require_integral)
from .numfield import (HypothesisError, ValidationError, is_inert, is_prime, validate_field_spec)
from .realalg import PrecisionBudget, SignUndecided

EXIT_OK, EXIT_SELFTEST, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_SIGN, EXIT_NONINTEGRAL = 0, 1, 2, 3, 4, 5
TABLE_COLUMNS = ("p", "w_K", "Q1", "Q2", "sizes", "h_K", "error")


def _err(msg):
    print(f"error: {msg}", file=sys.stderr)


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _budget(args):
    return make_budget(getattr(args, "precision_cap", None))


def make_budget(cap):
    if not cap:
        return PrecisionBudget()
    if cap < 8:
        raise io.FieldFileError("--precision-cap must be at least 8 bits")
    return PrecisionBudget(current=min(cap, 128), cap=cap)


def _load_valid(path, budget):
    spec = io.load_field(path)
    rep = validate_field_spec(spec, budget)
    rep.raise_if_invalid()
    return spec


def cmd_validate(args):
    spec = io.load_field(args.field)
    rep = validate_field_spec(spec, _budget(args))
    out = {"field": spec.name, "valid": rep.valid, "problems": rep.problems,
           "index": rep.index, "warnings": rep.warnings}
    if rep.poly_discriminant is not None:
        out["poly_discriminant"] = q_str(rep.poly_discriminant)
    print(json.dumps(out, indent=1))
    return EXIT_OK if rep.valid else EXIT_INPUT


def _parse_rho(s):
    if s is None:
        return None
    return [int(a) for a in s.split(",")]


def cmd_classnumber(args):
    budget = _budget(args)
    spec = _load_valid(args.field, budget)
    rep = class_number_cm(spec, args.prime, args.wk, Q1=args.q1, Q2=args.q2,
                          rho=_parse_rho(args.rho), budget=budget)
    _emit(io.dumps(io.report_dict(rep)), args.out)
    print(f"h_K = {q_str(rep.h_K)}", file=sys.stderr)
    require_integral(rep)
    return EXIT_OK


def cmd_decompose(args):
    budget = _budget(args)
    spec = _load_valid(args.field, budget)
    terms = decompose(spec, args.prime, args.char_k, args.char_d, budget=budget)
    _emit(io.dumps(io.decomposition_dict(spec, args.prime, args.char_k, args.char_d, terms)),
          args.out)
    return EXIT_OK


def cmd_skeleton(args):
    budget = _budget(args)
    spec = _load_valid(args.field, budget)
    _emit(io.dumps(io.skeleton_dict(real_quadratic_skeleton(spec, args.prime, budget=budget))),
          args.out)
    return EXIT_OK


def _wk_entry(v):
    if isinstance(v, int):
        return {"w_K": v}
    if isinstance(v, dict) and isinstance(v.get("w_K"), int):
        return v
    raise io.FieldFileError(f"bad wk-map entry {v!r}")


def table_row(field_path, p, entry, cap):
    """One table row; errors are recorded rather than raised."""
    row = {"p": p, "w_K": entry["w_K"], "Q1": entry.get("q1", ""), "Q2": entry.get("q2", ""),
           "sizes": "", "h_K": "", "error": ""}
    try:
        budget = make_budget(cap)
        spec = io.load_field(field_path)
        rep = class_number_cm(spec, p, entry["w_K"], Q1=entry.get("q1"), Q2=entry.get("q2"),
                              budget=budget, keep_table=False)
        row["Q1"], row["Q2"] = rep.Q1, rep.Q2
        row["sizes"] = ";".join(f"{r.frame.label}:{len(r.iset)}" for r in rep.results)
        row["h_K"] = q_str(rep.h_K)
        if not rep.integral:
            row["error"] = "non-integral h_K"
    except (HypothesisError, SignUndecided, ValueError, ArithmeticError) as e:
        row["error"] = f"{type(e).__name__}: {e}"
    return row


def cmd_table(args):
    budget = _budget(args)
    spec = _load_valid(args.field, budget)
    try:
        wk_raw = json.loads(Path(args.wk_map).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise io.FieldFileError(f"cannot read wk-map {args.wk_map}: {e}") from None
    wk = {int(k): _wk_entry(v) for k, v in wk_raw.items()}
    notes, jobs = [], []
    for p in range(max(args.pmin, 2), args.pmax + 1):
        if p % 4 != 3 or not is_prime(p):
            continue
        try:
            inert = is_inert(spec, p)
        except HypothesisError as e:
            notes.append(f"p = {p} skipped: {e}")
            continue
        if not inert:
            continue
        if p not in wk:
            notes.append(f"p = {p} skipped: no w_K in the wk-map")
            continue
        jobs.append((p, wk[p]))
    if not jobs:
        notes.append(f"no inert primes p = 3 mod 4 with w_K data in [{args.pmin}, {args.pmax}]")
    cap = args.precision_cap
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            rows = list(ex.map(table_row, [args.field] * len(jobs), [p for p, _ in jobs],
                               [e for _, e in jobs], [cap] * len(jobs)))
    else:
        rows = [table_row(args.field, p, e, cap) for p, e in jobs]
    rows.sort(key=lambda r: r["p"])
    for note in notes:
        print(f"note: {note}", file=sys.stderr)
    if args.format == "json":
        text = io.dumps({"schema": io.SCHEMA, "command": "table", "field": spec.name,
                         "columns": list(TABLE_COLUMNS), "rows": rows, "notes": notes})
    else:
        buf = _io.StringIO()
        w = csv.DictWriter(buf, fieldnames=TABLE_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    _emit(text, args.out)
    return EXIT_OK


def cmd_selftest(args):
    from .selftest import run_selftest
    ok, cells, mismatches = run_selftest()
    if ok:
        print(f"selftest passed: {cells} cells match")
        return EXIT_OK
    print(f"selftest FAILED at {mismatches[0]}", file=sys.stderr)
    print(f"{len(mismatches)} of {cells} cells differ", file=sys.stderr)
    return EXIT_SELFTEST


def build_parser():
    ap = argparse.ArgumentParser(prog="shintani-cm",
                                 description="Shintani domains and CM class numbers")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, prime=True):
        sp.add_argument("--field", required=True, help="JSON field file")
        if prime:
            sp.add_argument("--prime", type=int, required=True)
        sp.add_argument("--precision-cap", type=int, default=None,
                        help="bit cap for sign decisions (default $SHINTANI_PRECISION_CAP or 4096)")
        sp.add_argument("--out", default=None, help="output path (default stdout)")

    sp = sub.add_parser("validate", help="check a field file")
    common(sp, prime=False)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("classnumber", help="class number of F(sqrt(-p))")
    common(sp)
    sp.add_argument("--wk", type=int, required=True, help="number of roots of unity in K")
    sp.add_argument("--q1", type=int, default=None)
    sp.add_argument("--q2", type=int, default=None)
    sp.add_argument("--rho", default=None, help="primitive element, comma-separated theta coords")
    sp.set_defaults(func=cmd_classnumber)

    sp = sub.add_parser("decompose", help="term list of the L-function decomposition")
    common(sp)
    sp.add_argument("--char-k", type=int, required=True)
    sp.add_argument("--char-d", type=int, required=True)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("skeleton", help="structure of the real quadratic formula (p = 1 mod 4)")
    common(sp)
    sp.set_defaults(func=cmd_skeleton)

    sp = sub.add_parser("table", help="batch class numbers over a prime range")
    common(sp, prime=False)
    sp.add_argument("--pmin", type=int, required=True)
    sp.add_argument("--pmax", type=int, required=True)
    sp.add_argument("--wk-map", required=True,
                    help='JSON {"p": w_K} or {"p": {"w_K": .., "q1": .., "q2": ..}}')
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("selftest", help="reproduce the embedded worked examples")
    sp.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except (io.FieldFileError, ValidationError) as e:
        _err(e)
        return EXIT_INPUT
    except HypothesisError as e:
        _err(f"hypothesis violated: {e}")
        return EXIT_HYPOTHESIS
    except SignUndecided as e:
        _err(f"{e}; try a larger --precision-cap")
        return EXIT_SIGN
    except NonIntegralClassNumber as e:
        _err(f"h_K = {q_str(e.report.h_K)} is not a positive integer; check w_K, Q1 and Q2")
        return EXIT_NONINTEGRAL


if __name__ == "__main__":
    sys.exit(main())
