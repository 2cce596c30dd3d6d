import pytest

from qgrass.bigcell import (
    LocElem, big_cell_generator, degree_zero_identification_check, extended_counit,
    intersection_check, verify_tij_manin,
)
from qgrass.coeffs import LocScalar
from qgrass.minors import d0, plucker_coordinate


@pytest.mark.parametrize("n,r,pairs", [(3, 1, 1), (3, 2, 1), (4, 2, 6), (4, 3, 3)])
@pytest.mark.parametrize("conv", ["standard", "inverted"])
def test_tij_manin_reversed_columns(n, r, pairs, conv):
    rep = verify_tij_manin(n, r, conv)
    assert rep.ok and len(rep.relations) == pairs


def test_literal_orientation_fails_for_r_at_least_2():
    assert not verify_tij_manin(3, 2, column_order="literal").ok
    assert verify_tij_manin(3, 1, column_order="literal").ok


def test_generator_outside_staircase():
    with pytest.raises(IndexError):
        big_cell_generator(1, 1, 3, 1)


def test_locelem_inverse_and_counit():
    n, r = 3, 1
    D = LocElem.from_poly(d0(n, r), n, r)
    Dinv = LocElem.d0_power(n, r, -1)
    assert D * Dinv == LocElem.d0_power(n, r, 0)
    t = big_cell_generator(2, 1, n, r).value
    assert extended_counit(t) == LocScalar(0)
    assert extended_counit(D) == LocScalar(1)


def test_q_commutation_moves_through_d0():
    n, r = 3, 1
    Dinv = LocElem.d0_power(n, r, -1)
    b = LocElem.from_poly(plucker_coordinate((2,), n), n, r)
    # D_0 b = q b D_0, hence D_0^-1 b = q^-1 b D_0^-1
    q = b.pres.q
    assert Dinv * b == (b * Dinv).scale(LocScalar(q ** -1))


@pytest.mark.parametrize("n,r", [(2, 1), (3, 1), (3, 2), (4, 2)])
def test_degree_zero_and_intersection(n, r):
    assert degree_zero_identification_check(n, r, 2)
    assert intersection_check(n, r, 2)
