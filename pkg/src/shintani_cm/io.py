"""JSON field files and run reports.

Rationals are written as canonical "num/den" strings (or "num" when the
denominator is 1) and every container is emitted in a fixed order, so equal
inputs give byte-identical files.
"""
import json
from fractions import Fraction
from pathlib import Path

from .exact import Matrix, PolyQ, parse_q, q_str
from .numfield import FieldSpec

SCHEMA = "shintani-report/1"
FIELD_KEYS = ("name", "min_poly", "discriminant", "integral_basis", "fundamental_units",
              "totally_positive_units", "q2", "embedding_order",
              "narrow_class_number_one_asserted")


class FieldFileError(ValueError):
    pass


def _int_list(v, what):
    if not isinstance(v, list) or not all(isinstance(a, int) and not isinstance(a, bool) for a in v):
        raise FieldFileError(f"{what} must be a list of integers")
    return v


def _q_list(v, what):
    if not isinstance(v, list):
        raise FieldFileError(f"{what} must be a list")
    try:
        return [parse_q(a) if isinstance(a, str) else Fraction(a) for a in v]
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise FieldFileError(f"{what}: {e}") from None


def field_from_dict(d):
    if not isinstance(d, dict):
        raise FieldFileError("field file must hold a JSON object")
    unknown = sorted(set(d) - set(FIELD_KEYS) - {"schema", "comment"})
    if unknown:
        raise FieldFileError(f"unknown keys: {', '.join(unknown)}")
    for k in ("min_poly", "discriminant", "totally_positive_units"):
        if k not in d:
            raise FieldFileError(f"missing key {k!r}")
    g = _int_list(d["min_poly"], "min_poly")
    if not g or g[-1] != 1:
        raise FieldFileError("min_poly must be ascending and monic")
    n = len(g) - 1
    disc = d["discriminant"]
    if not isinstance(disc, int) or isinstance(disc, bool):
        raise FieldFileError("discriminant must be an integer")

    def units(key):
        us = d.get(key)
        if us is None:
            return None
        if not isinstance(us, list):
            raise FieldFileError(f"{key} must be a list of coordinate lists")
        out = []
        for j, u in enumerate(us):
            u = _q_list(u, f"{key}[{j}]")
            if len(u) != n:
                raise FieldFileError(f"{key}[{j}] must have {n} coordinates")
            out.append(u)
        return out

    basis = d.get("integral_basis")
    if basis is not None:
        if not isinstance(basis, list) or len(basis) != n:
            raise FieldFileError(f"integral_basis must have {n} rows")
        rows = [_q_list(r, f"integral_basis[{i}]") for i, r in enumerate(basis)]
        if any(len(r) != n for r in rows):
            raise FieldFileError(f"integral_basis rows must have {n} entries")
        basis = Matrix(rows)
    q2 = d.get("q2", 1)
    if not isinstance(q2, int) or q2 < 1:
        raise FieldFileError("q2 must be a positive integer")
    order = d.get("embedding_order", "ascending")
    if order not in ("ascending", "descending"):
        raise FieldFileError("embedding_order must be 'ascending' or 'descending'")
    return FieldSpec(PolyQ(g), disc, units("totally_positive_units"), units("fundamental_units"),
                     basis, q2, str(d.get("name", "F")), order,
                     bool(d.get("narrow_class_number_one_asserted", True)))


def field_to_dict(spec):
    d = {
        "name": spec.name,
        "min_poly": [int(a) for a in spec.min_poly.c],
        "discriminant": spec.discriminant,
        "totally_positive_units": [[q_str(a) for a in u.c] for u in spec.totally_positive_units],
    }
    if spec.fundamental_units is not None:
        d["fundamental_units"] = [[q_str(a) for a in u.c] for u in spec.fundamental_units]
    if spec.integral_basis is not None:
        d["integral_basis"] = [[q_str(a) for a in r] for r in spec.integral_basis.rows]
    d["q2"] = spec.q2
    d["embedding_order"] = spec.field.embedding_order
    d["narrow_class_number_one_asserted"] = spec.narrow_class_number_one_asserted
    return d


def parse_field_text(text):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise FieldFileError(f"malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    return field_from_dict(d)


def load_field(path):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise FieldFileError(f"cannot read {path}: {e.strerror}") from None
    return parse_field_text(text)


# serialization helpers -------------------------------------------------------

def qv(v):
    return [q_str(a) for a in v]


def qtuple(v):
    return "(" + ",".join(q_str(a) for a in v) + ")"


def poly_str(f, var="z"):
    parts = []
    for k, a in enumerate(f.c):
        if a == 0:
            continue
        mag = abs(a)
        body = q_str(mag) if (k == 0 or mag != 1) else ""
        if k:
            body += var if k == 1 else f"{var}^{k}"
        sign = "-" if a < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def dumps(obj):
    return json.dumps(obj, indent=1, sort_keys=False, ensure_ascii=True) + "\n"


def frame_dict(fr, kernel=None):
    d = {
        "tau": fr.label,
        "images": list(fr.tau),
        "weight": fr.weight,
        "f": [qv(x.c) for x in fr.f],
    }
    if fr.weight:
        d["kinds"] = list(fr.kinds)
        d["c_signs"] = list(fr.c_signs)
        d["T"] = [qv(r) for r in fr.T.rows]
        d["kernel_index"] = fr.kernel_index
    if kernel is not None:
        d["kernel"] = [qtuple(t) for t in kernel]
    return d


def report_dict(rep, tables=True):
    """RunReport for a ClassNumberReport."""
    st = rep.setup
    out = {
        "schema": SCHEMA,
        "command": "classnumber",
        "inputs": {"field": rep.name, "p": rep.p, "n": rep.n, "w_K": rep.w_K,
                   "Q1": rep.Q1, "Q2": rep.Q2},
        "assumptions": {"narrow_class_number_one_asserted": True},
        "residue_field": {
            "rho": list(st.rho),
            "h_rho": [q_str(a) for a in st.h.c],
            "T_ff": [[int(a) for a in r] for r in st.T_ff.to_ints()],
            "X_denominator": poly_str(st.genfun.D),
            "X": [poly_str(X.num) for X in st.genfun.X],
        },
        "frames": [],
    }
    for fr in rep.frames:
        res = next((r for r in rep.results if r.frame is fr), None)
        d = frame_dict(fr, res.iset.kernel if res else None)
        if res is not None:
            d["size"] = len(res.iset)
            if tables:
                d["C"] = [qtuple(res.iset.point(1, m)) for m in range(1, res.iset.C.shape[0] + 1)]
                if res.table is not None:
                    d["S"] = [[q_str(a) for a in col] for col in res.table]
            d["column_totals"] = qv(res.column_totals)
            d["total"] = q_str(res.total)
        out["frames"].append(d)
    out["grand_total"] = q_str(rep.grand_total)
    out["h_K"] = q_str(rep.h_K)
    out["integral"] = rep.integral
    out["warnings"] = list(rep.warnings)
    return out


def decomposition_dict(spec, p, k, d, terms):
    return {
        "schema": SCHEMA,
        "command": "decompose",
        "inputs": {"field": spec.name, "p": p, "n": spec.n, "k": k, "d": d},
        "assumptions": {"narrow_class_number_one_asserted": spec.narrow_class_number_one_asserted},
        "term_count": len(terms),
        "distinct_tokens": len({t.token for t in terms}),
        "terms": [{"tau": t.tau, "weight": t.weight, "m": t.m,
                   "root_of_unity": f"{t.token[0]}/{t.token[1]}",
                   "x": [qtuple(x) for x in t.tuples]} for t in terms],
    }


def skeleton_dict(sk):
    return {
        "schema": SCHEMA,
        "command": "skeleton",
        "prefactor": q_str(sk["prefactor"]),
        "n": sk["n"],
        "p": sk["p"],
        "terms": sk["terms"],
        "slots": [dict(s, x=qtuple(s["x"]), A=[qv(a) for a in s["A"]]) for s in sk["slots"]],
    }


def parse_report(text):
    d = json.loads(text)
    if d.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {d.get('schema')!r}")
    return d


def report_h(d):
    return parse_q(d["h_K"])
