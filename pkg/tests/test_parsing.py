from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qgrass.coeffs import LaurentScalar, LocScalar
from qgrass.drinfeld import to_vee_coordinates
from qgrass.hopf import quantum_determinant
from qgrass.ncalg import NCPoly, build_manin_presentation
from qgrass.parsing import ParseError, UnknownGenerator, parse_expression, parse_scalar


def test_word_kept_as_written():
    p = parse_expression("x[1,2]*x[1,1]")
    assert p.terms == {(1, 0): LocScalar(1)}
    assert parse_expression("x[1,2]*x[1,1]", normalize=True).terms == {(0, 1): LocScalar(LaurentScalar.q(-1))}


def test_laurent_coefficient():
    p = parse_expression("(q - q^-1)*x[2,1]*x[1,2]")
    assert len(p.terms) == 1
    (c,) = p.terms.values()
    assert c == LocScalar(LaurentScalar({1: 1, -1: -1}))


def test_scalar_syntax():
    assert parse_scalar("3*q^2 - 1/2*q^-1") == LocScalar(LaurentScalar({2: 3, -1: Fraction(-1, 2)}))
    assert parse_scalar("(q-1)^-2 * (q^2-1)") == LocScalar(LaurentScalar({1: 1, 0: 1}), 1)
    assert parse_scalar("  q  ") == LocScalar(LaurentScalar.q(1))


def test_errors():
    with pytest.raises(UnknownGenerator):
        parse_expression("x[9,9]", n=2)
    with pytest.raises(ParseError) as info:
        parse_expression("x[1,1] + * x[1,2]")
    assert info.value.pos == 9
    with pytest.raises(ParseError):
        parse_expression("x[1,1]/x[1,2]")
    with pytest.raises(ParseError):
        parse_expression("(x[1,1]")
    with pytest.raises(SyntaxError):
        parse_expression("x[1,1] $")


@pytest.mark.parametrize("n", [2, 3])
def test_printer_round_trip(n):
    d = quantum_determinant(n)
    assert parse_expression(str(d), n=n) == d
    v = to_vee_coordinates(d, "SL")
    assert parse_expression(str(v), pres=v.pres) == v


def polys():
    pres = build_manin_presentation(2)
    word = st.lists(st.integers(0, 3), max_size=3).map(tuple)
    coeff = st.dictionaries(st.integers(-2, 2), st.integers(-3, 3), max_size=2).map(LaurentScalar)
    loc = st.tuples(coeff, st.integers(0, 2)).map(lambda t: LocScalar(*t))
    return st.dictionaries(word, loc, max_size=3).map(lambda d: NCPoly(pres, {w: c for w, c in d.items() if c}))


@given(polys())
def test_round_trip_property(p):
    assert parse_expression(str(p)) == p
