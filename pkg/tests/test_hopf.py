import pytest
from hypothesis import given, strategies as st

from qgrass.coeffs import LaurentScalar, LocScalar
from qgrass.hopf import (
    GLElement, Tensor, coproduct, counit, counit_leg, gl_reduce, is_group_like,
    quantum_determinant, sl_reduce,
)
from qgrass.ncalg import NCPoly, build_manin_presentation

Q = LocScalar(LaurentScalar.q(1))


def test_qdet_2_by_hand():
    p = build_manin_presentation(2)
    expected = p.gen((1, 1)) * p.gen((2, 2)) - (p.gen((1, 2)) * p.gen((2, 1))).scale(Q)
    assert quantum_determinant(2) == expected


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("conv", ["standard", "inverted"])
def test_qdet_central_and_group_like(n, conv):
    d = quantum_determinant(n, conv)
    p = d.pres
    for k in p.keys:
        assert d * p.gen(k) == p.gen(k) * d
    assert is_group_like(d)


def test_coproduct_of_generator():
    p = build_manin_presentation(2)
    t = coproduct(p.gen((1, 2)))
    expected = Tensor.pure(p.gen((1, 1)), p.gen((1, 2))) + Tensor.pure(p.gen((1, 2)), p.gen((2, 2)))
    assert t == expected


def polys():
    pres = build_manin_presentation(2)
    word = st.lists(st.integers(0, 3), max_size=3).map(tuple)
    return st.dictionaries(word, st.integers(-2, 2).filter(bool), max_size=3).map(
        lambda d: NCPoly(pres, {w: LocScalar(c) for w, c in d.items()}).normal_form())


@given(polys(), polys())
def test_coproduct_is_algebra_map(a, b):
    assert coproduct(a * b) == coproduct(a) * coproduct(b)
    assert counit(a * b) == counit(a) * counit(b)


@given(polys())
def test_counit_axioms(a):
    d = coproduct(a)
    assert counit_leg(d, 0).to_poly() == a
    assert counit_leg(d, 1).to_poly() == a


def test_gl_and_sl_reduction():
    d = quantum_determinant(2)
    p = d.pres
    T = GLElement.T(p)
    one = GLElement.from_poly(p.one())
    assert gl_reduce(T * GLElement.from_poly(d)) == one
    x11 = GLElement.from_poly(p.gen((1, 1)))
    assert gl_reduce(T * x11 * GLElement.from_poly(d)) == x11
    assert sl_reduce(d) == p.one()
    assert sl_reduce(d * p.gen((1, 2))) == p.gen((1, 2))
