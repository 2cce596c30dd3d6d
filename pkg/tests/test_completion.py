import pytest
from hypothesis import given, strategies as st

from qgrass.bigcell import LocElem
from qgrass.coeffs import LocScalar, QSeries
from qgrass.completion import (
    NotUnitAtOne, TruncElem, coideal_membership, counit_chi_leg, coproduct_completed, coproduct_on_leg,
    delta_tilde_d0_inverse, delta_tilde_localized, intersection_property, inverse_d0,
    invert_unit_series, mu_coproduct, mu_monomials, mu_series, tensor_to_vee, vee_series,
    verify_main_theorem,
)
from qgrass.drinfeld import chi_presentation
from qgrass.hopf import Tensor, coproduct, quantum_determinant
from qgrass.minors import d0

EPS = LocScalar(1, -1)


def chi(i, j, n=2, order=3):
    return TruncElem(chi_presentation(n, "SL").gen((i, j), order))


def series(*coeffs):
    return QSeries(coeffs)


def test_trivial_inverse():
    one = TruncElem.one(chi_presentation(2, "SL"), 3)
    assert invert_unit_series(one) == one


def test_d0_inverse_is_geometric_series():
    c = chi(1, 1)
    expected = TruncElem.one(c.pres, 3) - c.scale(EPS) + (c * c).scale(EPS * EPS)
    inv = inverse_d0(2, 1, 3)
    assert inv == expected
    assert inv * vee_series(d0(2, 1), 3) == TruncElem.one(c.pres, 3)


def test_qdet_inverse_order_2():
    inv = invert_unit_series(vee_series(quantum_determinant(2), 2))
    expected = TruncElem.one(chi(1, 1).pres, 2) - (chi(1, 1, order=2) + chi(2, 2, order=2)).scale(EPS)
    assert inv == expected


def test_not_unit_at_one():
    with pytest.raises(NotUnitAtOne):
        invert_unit_series(chi(1, 2))


def test_coproduct_of_chi12():
    cp = chi_presentation(2, "SL")
    g = lambda i, j: cp.gen((i, j), 3)
    one = cp.one(3)
    expected = (Tensor.pure(g(1, 2), one) + Tensor.pure(one, g(1, 2))
                + (Tensor.pure(g(1, 1), g(1, 2)) + Tensor.pure(g(1, 2), g(2, 2))).scale(EPS))
    assert coproduct_completed(chi(1, 2)) == expected
    assert coproduct_completed(TruncElem.one(cp, 3)) == Tensor.unit((cp, cp), 3)


@pytest.mark.parametrize("n", [2, 3])
def test_coproduct_matches_x_route(n):
    # Delta^ in chi-coordinates equals the x-coordinate coproduct rewritten
    x = d0(n, 1) * d0(n, 1)
    assert coproduct_completed(vee_series(x, 3)) == tensor_to_vee(coproduct(x), 3)


def words(n=2):
    keys = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    return st.lists(st.sampled_from(keys), min_size=1, max_size=3)


@given(words())
def test_counit_and_coassociativity(ws):
    cp = chi_presentation(2, "SL")
    t = TruncElem(cp.word(ws, 3))
    d = coproduct_completed(t)
    assert counit_chi_leg(d, 0).to_poly() == t.body
    assert counit_chi_leg(d, 1).to_poly() == t.body
    assert coproduct_on_leg(d, 0) == coproduct_on_leg(d, 1)


@pytest.mark.parametrize("n,r", [(2, 1), (3, 1), (3, 2), (4, 2)])
def test_delta_tilde_inverts_delta_d0(n, r):
    cert = delta_tilde_d0_inverse(n, r, 3 if n < 4 else 2)
    assert cert.s_valuation == 2
    order = cert.value.order
    dd = tensor_to_vee(coproduct(d0(n, r)), order)
    assert cert.value * dd == Tensor.unit(dd.legs, order)
    assert coproduct_completed(inverse_d0(n, r, order)) == cert.value


def test_delta_tilde_two_term_truncation():
    # n = 2, r = 1, N = 2: (1 - (q-1) chi11) (x) 1 + 1 (x) (-(q-1) chi11) + ...
    cp = chi_presentation(2, "SL")
    v = delta_tilde_localized(LocElem.d0_power(2, 1, -1), 2)
    c11 = cp.gen((1, 1), 2)
    one = cp.one(2)
    expected = Tensor.unit((cp, cp), 2) - (Tensor.pure(c11, one) + Tensor.pure(one, c11)).scale(EPS)
    assert v == expected


def test_delta_tilde_cross_routes():
    e = LocElem.from_poly(d0(2, 1), 2, 1)
    assert delta_tilde_localized(e, 3) == tensor_to_vee(coproduct(d0(2, 1)), 3)
    cp = chi_presentation(2, "SL")
    assert delta_tilde_localized(LocElem.d0_power(2, 1, 0), 3) == Tensor.unit((cp, cp), 3)


@pytest.mark.parametrize("args", [(2, 1, 2, 1, 3), (3, 1, 3, 2, 2), (4, 1, 4, 2, 2)])
def test_mu_coproduct_routes_agree(args):
    assert mu_coproduct(*args) == coproduct_completed(mu_series(*args))


def test_mu_series_leading_term():
    m = mu_series(2, 1, 2, 1, 2)
    # mu_21 = chi21 (1 + (q-1) chi11)^-1
    c21, c11 = chi(2, 1, order=2), chi(1, 1, order=2)
    assert m == c21 - (c21 * c11).scale(EPS)


@pytest.mark.parametrize("i,j,n,r,N,D", [(2, 1, 2, 1, 3, 3), (2, 1, 3, 1, 2, 2), (3, 1, 3, 1, 2, 2)])
def test_coideal_passes(i, j, n, r, N, D):
    cert = coideal_membership(i, j, n, r, N, D)
    assert cert.passed
    assert not cert.residuals[0]


def test_coideal_fails_with_too_small_degree():
    # degree 0 cannot hold the order-0 leg mu_21
    assert not coideal_membership(2, 1, 2, 1, 2, 0).passed


@pytest.mark.parametrize("n,r,N,D", [(2, 1, 3, 3), (3, 1, 2, 2)])
def test_main_theorem(n, r, N, D):
    rep = verify_main_theorem(n, r, N, D)
    assert rep.ok
    count, rank = intersection_property(n, r, N, D)
    assert count == rank == len(mu_monomials(n, r, D, N))
