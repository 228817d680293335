from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from shintani_cm.exact import PolyQ
from shintani_cm.ff import FFContext
from shintani_cm.shintani import (HIGH, LOW, build_frames, build_genfun, expected_denominator,
                                  full_set, genfun_matrix, kernel_enumerate, modified_frac,
                                  perm_sign, pi_map, poly_det, tau_label)


def test_labels_and_signs():
    assert tau_label((1, 2)) == "id"
    assert tau_label((2, 1)) == "(12)"
    assert tau_label((2, 3, 1)) == "(123)"
    assert perm_sign((2, 1)) == -1 and perm_sign((2, 3, 1)) == 1


def test_modified_frac():
    assert modified_frac(Fraction(3), LOW) == 0
    assert modified_frac(Fraction(3), HIGH) == 1
    assert modified_frac(Fraction(-1, 3), LOW) == Fraction(2, 3)
    assert modified_frac(Fraction(-1, 3), HIGH) == Fraction(2, 3)


def test_example1_frames(ex1):
    spec, g = ex1
    frames = {fr.label: fr for fr in build_frames(spec)}
    for label, gf in g["frames"].items():
        fr = frames[label]
        assert fr.weight == gf["weight"]
        assert list(fr.kinds) == gf["kinds"]
        assert [[str(a) for a in r] for r in fr.T.rows] == gf["T"]
    assert frames["id"].kernel_index == 3 and frames["(12)"].kernel_index == 1


def test_example2_frames(ex2):
    spec, g = ex2
    frames = {fr.label: fr for fr in build_frames(spec)}
    assert [frames[k].kernel_index for k in ("id", "(12)")] == [2, 13]
    for label, gf in g["frames"].items():
        assert list(frames[label].kinds) == gf["kinds"]


def _ints(report, label):
    res = report.result(label)
    iset = res.iset
    grid = iset.grid().reshape(-1, iset.W.shape[1])
    pts = np.vstack([iset.W, grid])
    return pts, iset.D, iset.high


def _encode(pts, D):
    # numerators lie in [0, D]; encode in base D + 1
    code = np.zeros(pts.shape[0], dtype=object)
    for j in range(pts.shape[1]):
        code = code * (D + 1) + pts[:, j].astype(object)
    return code


def _modfrac(x, D, high):
    return np.where(high, (x - 1) % D + 1, x % D)


@pytest.mark.parametrize("which,label", [("ex1_report", "id"), ("ex1_report", "(12)"),
                                         ("ex2_report", "id"), ("ex2_report", "(12)")])
def test_oplus_group_axioms_exhaustive(which, label, request):
    rep = request.getfixturevalue(which)
    pts, D, high = _ints(rep, label)
    N = pts.shape[0]
    assert N == rep.p ** rep.n * rep.result(label).frame.kernel_index
    codes = _encode(pts, D)
    assert len(set(codes)) == N
    index = {c: i for i, c in enumerate(codes)}
    ident = pts[0]
    # closure, identity, commutativity: the full Cayley table
    S = _modfrac(pts[:, None, :] + pts[None, :, :], D, high)
    table = np.vectorize(index.get, otypes=[object])(_encode(S.reshape(-1, pts.shape[1]), D))
    assert not any(t is None for t in table)
    table = table.reshape(N, N).astype(np.int64)
    assert (table == table.T).all()
    assert (table[0] == np.arange(N)).all()
    assert (_modfrac(pts + ident, D, high) == pts).all()
    # inverses: every row is a permutation containing the identity
    for row in table:
        assert len(set(row)) == N
    assert ((table == 0).sum(axis=1) == 1).all()
    # associativity, exhaustive over all triples
    for a in range(N):
        assert (table[table[a]] == table[a][table]).all()


def test_set_sizes(ex1_report, ex2_report):
    for rep, sizes in ((ex1_report, {"id": 81, "(12)": 27}),
                       (ex2_report, {"id": 54, "(12)": 351})):
        for r in rep.results:
            assert len(r.iset) == sizes[r.frame.label]
            assert len(r.iset) == rep.p ** rep.n * abs(r.frame.M.det())


@pytest.mark.parametrize("label,fiber", [("id", 3), ("(12)", 1)])
def test_pi_surjective_constant_fibers(ex1, ex1_report, label, fiber):
    spec, _ = ex1
    res = ex1_report.result(label)
    iset = res.iset
    pts = list(iset.kernel) + [iset.point(i, m) for i in range(1, len(iset.kernel) + 1)
                               for m in range(1, iset.C.shape[0] + 1)]
    images = Counter(pi_map(pt, res.frame, spec, 3) for pt in pts)
    assert len(images) == 27
    assert set(images.values()) == {fiber}


def test_full_set_matches_integer_layout(ex1, ex1_report):
    spec, _ = ex1
    st_ = ex1_report.setup
    for r in ex1_report.results:
        S = full_set(r.frame, spec, st_.genfun, None, 3)
        assert S.kernel == r.iset.kernel
        for i in range(1, len(S.kernel) + 1):
            for m in (1, 7, 26):
                assert S.point(i, m) == r.iset.point(i, m)


def test_kernel_starts_with_identity(ex2, ex2_report):
    spec, _ = ex2
    for r in ex2_report.results:
        kern = kernel_enumerate(r.frame, spec)
        assert kern[0] == r.frame.identity_point()
        assert kern[1:] == sorted(kern[1:])


monic = st.lists(st.integers(-9, 9), min_size=3, max_size=4).map(lambda c: PolyQ(c + [1]))


@settings(max_examples=200)
@given(monic)
def test_det_identity_random(h):
    assert poly_det(genfun_matrix(h)) == expected_denominator(h)


@settings(max_examples=200)
@given(monic.filter(lambda h: h.coeff(0) != 0), st.sampled_from([2, 3, 5, 7]))
def test_series_solves_system(h, p):
    G = build_genfun(h)
    n = h.deg
    count = p ** n if p ** n < 200 else 40
    xs = G.series(count)
    assert xs[0] == tuple(-h.coeff(i) for i in range(n))
    # A(z) X(z) = v, coefficientwise: x(m)_i - x(m-1)_{i-1} + p_i x(m-1)_{n-1} = 0
    for m in range(1, count):
        for i in range(n):
            prev = xs[m - 1][i - 1] if i else 0
            assert xs[m][i] - prev + h.coeff(i) * xs[m - 1][n - 1] == 0
    assert [tuple(int(a) % p for a in x) for x in xs] == G.series_mod_p(p, count)


@pytest.mark.parametrize("which", ["ex1", "ex2"])
def test_series_gives_powers_of_rho(which, request):
    spec, _ = request.getfixturevalue(which)
    ctx = FFContext(3, spec.min_poly)
    G = build_genfun(spec.min_poly)
    xs = G.series(27)
    for m in range(27):
        assert ctx.elem([int(a) for a in xs[m]]) == ctx.pow(ctx.theta(), 3 + m)


def test_build_genfun_example1():
    G = build_genfun(PolyQ([1, -2, -1, 1]))
    assert G.D == PolyQ([1, -1, -2, 1])
    assert [X.num for X in G.X] == [PolyQ([-1]), PolyQ([2, -1]), PolyQ([1, 2, -1])]
