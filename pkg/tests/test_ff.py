import pytest

from shintani_cm.exact import PolyQ
from shintani_cm.ff import (FFContext, factorize, find_primitive, is_primitive,
                            minimal_polynomial_lift)


def test_factorize():
    assert factorize(26) == [(2, 1), (13, 1)]
    assert factorize(2 ** 10 * 3 ** 4 * 101) == [(2, 10), (3, 4), (101, 1)]


def test_theta_primitive_in_f27():
    ctx = FFContext(3, PolyQ([1, -2, -1, 1]))
    assert ctx.order == 26
    assert is_primitive(ctx, ctx.theta())
    assert find_primitive(ctx, ctx.theta()) == ctx.theta()
    assert minimal_polynomial_lift(ctx, ctx.theta(), PolyQ([1, -2, -1, 1])) == PolyQ([1, -2, -1, 1])


def test_order_divides_group_order():
    ctx = FFContext(5, PolyQ([2, 0, 1]))       # x^2 + 2 irreducible mod 5
    count = 0
    for a in range(5):
        for b in range(5):
            if a == b == 0:
                continue
            o = ctx.element_order((a, b))
            assert 24 % o == 0
            assert ctx.pow((a, b), o) == ctx.one()
            count += o == 24
    assert count == 8   # phi(24)


def test_other_primitive_lift():
    ctx = FFContext(3, PolyQ([1, -2, -1, 1]))
    rho = ctx.elem([1, 1, 0])
    assert is_primitive(ctx, rho)
    h = minimal_polynomial_lift(ctx, rho)
    assert h.deg == 3 and h.lead() == 1
    # h(rho) = 0 in F_27
    acc = ctx.elem([0])
    for c in reversed(h.c):
        acc = ctx.mul(acc, rho)
        acc = tuple((a + (int(c) if i == 0 else 0)) % 3 for i, a in enumerate(acc))
    assert acc == ctx.elem([0])


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        FFContext(13, PolyQ([1, -2, -1, 1]))
