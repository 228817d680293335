import os
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from shintani_cm import _kernels
from shintani_cm.exact import bernoulli_poly
from shintani_cm.ff import FFContext, is_primitive
from shintani_cm.lfun import (bernoulli_trace_sum, class_number_cm, decompose, dirichlet_oracle,
                              girstmair_oracle, real_quadratic_skeleton, require_integral,
                              NonIntegralClassNumber, smallest_primitive_root, trace_polynomial)
from shintani_cm.numfield import HypothesisError


def test_example1_class_number(ex1_report):
    assert ex1_report.h_K == 1
    assert ex1_report.grand_total == 4
    assert ex1_report.integral


def test_example2_class_number(ex2_report):
    assert ex2_report.h_K == 3
    tot = ex2_report.result("id").column_totals
    assert tot == [Fraction(199, 36), Fraction(155, 36)]


def test_trace_polynomial_matches_reference(ex1_report):
    for r in ex1_report.results:
        poly = trace_polynomial(r.frame)
        for i, m in ((1, 1), (len(r.iset.kernel), 5), (len(r.iset.kernel), 26)):
            x = r.iset.point(i, m)
            val = sum(a * np.prod([Fraction(xk) ** e for xk, e in zip(x, ex)])
                      for ex, a in poly.items())
            assert val == bernoulli_trace_sum(r.frame, x)
            assert r.table[i - 1][m - 1] == (-1) ** m * val


def test_bernoulli_trace_sum_n1(rationals):
    fr = class_number_cm(rationals, 7, 2).frames[0]
    x = (Fraction(2, 7),)
    assert bernoulli_trace_sum(fr, x) == bernoulli_poly(1)(x[0])


@pytest.mark.parametrize("p", [7, 11, 19, 23, 31, 43, 47, 59, 67, 71, 79, 83])
def test_rationals_match_oracles(rationals, p):
    h = class_number_cm(rationals, p, 2, keep_table=False).h_K
    assert h == dirichlet_oracle(p) == girstmair_oracle(p)


def test_q1_convention_for_rationals(rationals):
    # Q1 = [Z^x : Z^{x,+}] = 2; taking Q1 = 1 doubles the value
    assert class_number_cm(rationals, 23, 2, Q1=1, Q2=1).h_K == 2 * dirichlet_oracle(23)


def test_oracles_small():
    assert dirichlet_oracle(23) == 3 and dirichlet_oracle(47) == 5
    assert smallest_primitive_root(23) == 5
    assert girstmair_oracle(23, 7) == 3


def _other_primitive(spec):
    ctx = FFContext(3, spec.min_poly)
    for k in range(1, 27):
        a = ctx.elem([k % 3, k // 3 % 3, k // 9])
        if a != ctx.theta() and is_primitive(ctx, a):
            return list(a)


def test_other_rho_same_answer(ex1, ex2):
    for (spec, g), h in ((ex1, 1), (ex2, 3)):
        rho = _other_primitive(spec)
        rep = class_number_cm(spec, 3, 6, Q1=8, Q2=1, rho=rho)
        assert list(rep.setup.rho) == rho
        assert rep.setup.T_ff.to_ints() != [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        assert rep.h_K == h


def test_swapped_units_same_answer(ex1, ex2):
    for (spec, _), h in ((ex1, 1), (ex2, 3)):
        sw = spec.with_units(list(reversed(spec.totally_positive_units)))
        assert class_number_cm(sw, 3, 6, Q1=8, Q2=1).h_K == h


def test_ramified_prime_rejected(ex1):
    with pytest.raises(HypothesisError):
        class_number_cm(ex1[0], 7, 6, Q1=8)


def test_bad_prime_rejected(ex1):
    with pytest.raises(HypothesisError):
        class_number_cm(ex1[0], 5, 6, Q1=8)      # 5 = 1 mod 4
    with pytest.raises(HypothesisError):
        class_number_cm(ex1[0], 3, 5, Q1=8)      # odd w_K


def test_nonintegral_reported(ex1):
    rep = class_number_cm(ex1[0], 3, 2, Q1=8, Q2=1)
    assert rep.h_K == Fraction(1, 3)
    with pytest.raises(NonIntegralClassNumber):
        require_integral(rep)


def test_decompose_counts(ex1):
    spec = ex1[0]
    terms = decompose(spec, 3, 1, 2)
    assert len(terms) == 52
    terms = decompose(spec, 3, 1, 26)
    assert len(terms) == 52 and len({t.token for t in terms}) == 26
    with pytest.raises(HypothesisError):
        decompose(spec, 3, 1, 4)
    with pytest.raises(HypothesisError):
        decompose(spec, 3, 2, 26)


def test_skeleton_n1(rationals):
    sk = real_quadratic_skeleton(rationals, 5)
    assert sk["prefactor"] == 1
    assert [(t["coefficient"], t["log_factor"]) for t in sk["terms"]] == [
        (1, {"log_of": 5, "power": 1}), (-1, {"log_of": 5, "power": 0})]
    assert len(sk["slots"]) == 4
    with pytest.raises(HypothesisError):
        real_quadratic_skeleton(rationals, 7)


# numba and numpy back ends ----------------------------------------------------

def test_kernels_agree():
    rng = np.random.default_rng(1)
    D = 117
    C = rng.integers(0, D + 1, size=(40, 3)).astype(np.int64)
    W = rng.integers(0, D + 1, size=(5, 3)).astype(np.int64)
    high = np.array([True, False, True])
    assert (_kernels.oplus_grid(C, W, D, high) == _kernels.oplus_grid_np(C, W, D, high)).all()
    assert (_kernels.residues([1, -2, -1], 3, 26) == _kernels.residues_np([1, -2, -1], 3, 26)).all()
    exps = np.array([[3, 0, 0], [1, 1, 1], [0, 2, 0], [0, 0, 0]])
    coefs = [5, -7, 2, 11]
    pts = rng.integers(0, D + 1, size=(30, 3))
    fast = _kernels.poly_eval(pts, exps, coefs, D, 3)
    ref = _kernels.poly_eval_np(pts.astype(object), exps, coefs, D, 3)
    assert [int(a) for a in fast] == [int(a) for a in ref]


def test_big_values_use_python_ints():
    D = 10 ** 7
    pts = np.array([[D, D - 1, 3]], dtype=np.int64)
    exps = np.array([[3, 0, 0], [0, 1, 2]])
    out = _kernels.poly_eval(pts, exps, [1, 1], D, 3)
    assert out.dtype == object
    assert int(out[0]) == D ** 3 + (D - 1) * 9 * D ** 0


def test_pure_numpy_backend_subprocess():
    code = ("from shintani_cm import _kernels; from shintani_cm.selftest import load_example;"
            "from shintani_cm.lfun import class_number_cm;"
            "s, g = load_example(2); r = class_number_cm(s, 3, 6, Q1=8, Q2=1);"
            "print(_kernels.backend(), r.h_K, [str(x) for x in r.result('(12)').column_totals])")
    env = dict(os.environ, SHINTANI_DISABLE_NUMBA="1")
    slow = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                          check=True).stdout.split(" ", 1)
    env["SHINTANI_DISABLE_NUMBA"] = "0"
    fast = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                          check=True).stdout.split(" ", 1)
    assert slow[0] == "numpy"
    assert slow[1] == fast[1]
