import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qgrass import bialgebra as B
from qgrass.coeffs import LocScalar, NegativeValuation
from qgrass.drinfeld import (
    DM, chi, chi_commutator, chi_presentation, comm_det, comm_mul, comm_var, d_minus, d_minus_expected,
    d_minus_identity_check, d_minus_image_via_u, from_vee_coordinates, in_vee, lie_part,
    poisson_bracket, poisson_property_check, poisson_table, specialize_mu, specialize_vee,
    to_vee_coordinates, vee_limit_table, T_SYM,
)
from qgrass.hopf import quantum_determinant
from qgrass.ncalg import NCPoly, build_manin_presentation, check_confluence

EPS = LocScalar(1, -1)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("mode", ["GL", "SL"])
def test_chi_presentation_confluent(n, mode):
    assert check_confluence(chi_presentation(n, mode)).ok


def test_specialize_vee_examples():
    u = B.uea_presentation(B.GLSTAR, 2)
    assert specialize_vee(chi(2, 1, 2)) == u.gen((2, 1))
    assert specialize_vee(d_minus(2)) == d_minus_expected(2)
    assert not specialize_vee(chi(1, 2, 2).scale(EPS))
    with pytest.raises(NegativeValuation):
        specialize_vee(chi(1, 2, 2).scale(LocScalar(1, 1)))


def x_polys():
    pres = build_manin_presentation(2)
    word = st.lists(st.integers(0, 3), max_size=3).map(tuple)
    return st.dictionaries(word, st.integers(-2, 2).filter(bool), max_size=3).map(
        lambda d: NCPoly(pres, {w: LocScalar(c) for w, c in d.items()}).normal_form())


@given(x_polys(), x_polys())
def test_vee_coordinates_are_an_algebra_map(a, b):
    assert to_vee_coordinates(a * b, "SL") == to_vee_coordinates(a, "SL") * to_vee_coordinates(b, "SL")
    assert from_vee_coordinates(to_vee_coordinates(a, "SL")) == a


def test_membership_by_valuation():
    p = build_manin_presentation(2)
    assert in_vee(to_vee_coordinates(p.gen((1, 2))))
    assert in_vee(to_vee_coordinates(p.gen((1, 1)) - p.one()))


def test_vee_limit_n2_matches_table():
    assert vee_limit_table(2).ok
    assert vee_limit_table(2, "inverted").ok


def test_vee_limit_n3_is_the_dual_bracket():
    rep = vee_limit_table(3)
    assert not rep.route_disagreements
    assert len(rep.mismatches) == 4
    for a, b in itertools.product(B.basis_keys(3), repeat=2):
        got = lie_part(specialize_vee(chi_commutator(a, b, 3)))
        assert got == B.dual_glstar_bracket(B.Es(*a), B.Es(*b), 3)


def test_composable_pair_limit():
    got = lie_part(specialize_vee(chi_commutator((1, 2), (2, 3), 3)))
    assert got == 2 * B.Es(1, 3)


@pytest.mark.parametrize("n", [2, 3])
def test_d_minus(n):
    assert d_minus_image_via_u(n) == d_minus_expected(n)


def test_d_minus_identity():
    assert d_minus_identity_check(2)


def test_poisson_examples():
    x = comm_var
    assert poisson_bracket(x(1, 1), x(1, 2), 2) == comm_mul(x(1, 1), x(1, 2))
    assert poisson_bracket(x(1, 2), x(2, 1), 2) == {}
    # the definitional value of the flagged entry
    assert poisson_bracket(x(1, 1), x(2, 2), 2) == {k: 2 * v for k, v in comm_mul(x(1, 2), x(2, 1)).items()}


@pytest.mark.parametrize("n", [2, 3])
def test_determinant_is_casimir(n):
    for i, j in B.basis_keys(n):
        assert not poisson_bracket(comm_det(n), comm_var(i, j), n)
        assert not poisson_bracket({(T_SYM,): Fraction(1)}, comm_var(i, j), n)


@pytest.mark.parametrize("n", [2, 3])
def test_poisson_table(n):
    rep = poisson_table(n)
    assert rep.ok and rep.discrepancy_flag
    flagged = [e for e in rep.entries if e.discrepancy]
    assert all(e.rule == "diagonal" for e in flagged)


def test_poisson_properties():
    assert poisson_property_check(2, samples=15, seed=3).ok


@pytest.mark.parametrize("i,j,n,r,expected", [
    (2, 1, 2, 1, (2, 1)), (4, 2, 4, 2, (4, 2)), (3, 1, 3, 1, (3, 1)),
])
def test_specialize_mu_agreeing_cases(i, j, n, r, expected):
    u = B.uea_presentation(B.GLSTAR, n)
    assert specialize_mu(i, j, n, r) == u.gen(expected)


def test_specialize_mu_sign_observed():
    # the minor's permutation sign cancels (-q)^(r-j): mu_31 -> +E*_31 at (3, 2)
    u = B.uea_presentation(B.GLSTAR, 3)
    assert specialize_mu(3, 1, 3, 2) == u.gen((3, 1))


def test_qdet_in_one_plus_eps_vee():
    v = to_vee_coordinates(quantum_determinant(2)) - chi_presentation(2).one()
    assert v.valuation() >= 1
