"""Embedded self-test: both worked cubic examples cell by cell, plus the n = 1 battery."""
import json
from importlib import resources

from .exact import PolyQ, parse_q
from .io import field_from_dict, qtuple
from .lfun import class_number_cm, dirichlet_oracle, girstmair_oracle

N1_PRIMES = (7, 11, 19, 23, 31, 43, 47)


def load_data(name):
    return json.loads(resources.files("shintani_cm").joinpath("data", name).read_text())


def load_example(k):
    """(FieldSpec, golden dict) for worked example k in {1, 2}."""
    gold = load_data(f"golden_example{k}.json")
    return field_from_dict(load_data(gold["field"])), gold


class _Checker:
    def __init__(self):
        self.mismatches = []
        self.cells = 0

    def eq(self, path, got, want):
        self.cells += 1
        if got != want:
            self.mismatches.append(f"{path}: got {got!r}, expected {want!r}")


def _q(s):
    return parse_q(s)


def _match_columns(ck, path, res, cols, totals):
    """Columns printed without kernel labels: match each one to a distinct kernel column."""
    ours = [tuple(c) for c in res.table]
    free = list(range(len(ours)))
    ck.eq(f"{path}/column_count", len(cols), len(ours))
    for j, col in enumerate(cols):
        want = tuple(_q(a) for a in col)
        hit = next((i for i in free if ours[i] == want), None)
        ck.cells += len(want) - 1
        ck.eq(f"{path}/column {j + 1}", hit is not None, True)
        if hit is None:
            continue
        free.remove(hit)
        ck.eq(f"{path}/column {j + 1}/total", res.column_totals[hit], _q(totals[j]))


def check_example(k, ck=None, rep=None):
    ck = ck or _Checker()
    spec, g = load_example(k)
    tag = f"example{k}"
    if rep is None:
        rep = class_number_cm(spec, g["p"], g["w_K"], Q1=g["Q1"], Q2=g["Q2"])
    st = rep.setup
    ck.eq(f"{tag}/h_rho", [str(a) for a in st.h.c], g["h_rho"])
    ck.eq(f"{tag}/X/denominator", st.genfun.D, PolyQ([_q(a) for a in g["X_den"]]))
    for i, num in enumerate(g["X_num"]):
        ck.eq(f"{tag}/X/{i + 1}", st.genfun.X[i].num, PolyQ([_q(a) for a in num]))
    N = g["p"] ** spec.n - 1
    series = st.genfun.series(N + 1)
    for m in range(1, N + 1):
        ck.eq(f"{tag}/x/m={m}", [str(a) for a in series[m]], g["x"][str(m)])
        ck.eq(f"{tag}/xbar/m={m}", [str(int(a)) for a in st.xbar[m - 1]], g["xbar"][str(m)])
    by_label = {r.frame.label: r for r in rep.results}
    for label, gf in g["frames"].items():
        res = by_label.get(label)
        if res is None:
            ck.eq(f"{tag}/frames/{label}", None, "present")
            continue
        fr = res.frame
        ck.eq(f"{tag}/frames/{label}/weight", fr.weight, gf["weight"])
        ck.eq(f"{tag}/frames/{label}/kinds", list(fr.kinds), gf["kinds"])
        ck.eq(f"{tag}/frames/{label}/T", [[str(a) for a in r] for r in fr.T.rows], gf["T"])
        want_kernel = sorted("(" + ",".join(t) + ")" for t in gf["kernel"])
        keys = [qtuple(t) for t in res.iset.kernel]
        ck.eq(f"{tag}/frames/{label}/kernel", sorted(keys), want_kernel)
        index = {key: i for i, key in enumerate(keys)}
        for m in range(1, N + 1):
            for key, pt in g["points"][label][str(m)].items():
                if key not in index:
                    continue
                got = [str(a) for a in res.iset.point(index[key] + 1, m)]
                ck.eq(f"{tag}/points/{label}/m={m}/{key}", got, pt)
            for key, s in g["S"][label].get(str(m), {}).items():
                if key not in index:
                    continue
                ck.eq(f"{tag}/S/{label}/m={m}/{key}", res.table[index[key]][m - 1], _q(s))
        for key, s in g["column_totals"].get(label, {}).items():
            if key in index:
                ck.eq(f"{tag}/totals/{label}/{key}", res.column_totals[index[key]], _q(s))
        cols = g.get("S_unlabelled", {}).get(label)
        if cols is not None:
            _match_columns(ck, f"{tag}/S/{label}", res, cols,
                           g["totals_unlabelled"][label])
    if "grand_total" in g:
        ck.eq(f"{tag}/grand_total", rep.grand_total, _q(g["grand_total"]))
    ck.eq(f"{tag}/h_K", rep.h_K, _q(g["h_K"]))
    return ck


def check_rationals(ck=None):
    ck = ck or _Checker()
    spec = field_from_dict(load_data("rationals.json"))
    for p in N1_PRIMES:
        h = class_number_cm(spec, p, 2, Q2=1, keep_table=False).h_K
        ck.eq(f"n1/p={p}/dirichlet", h, dirichlet_oracle(p))
        ck.eq(f"n1/p={p}/girstmair", h, girstmair_oracle(p))
    return ck


def run_selftest():
    """Return (ok, cells_checked, mismatches)."""
    ck = _Checker()
    check_example(1, ck)
    check_example(2, ck)
    check_rationals(ck)
    return not ck.mismatches, ck.cells, ck.mismatches
