import itertools

import pytest
import sympy as sp

from qgrass.linalg import rank_at_one, rank_over_fraction_field
from qgrass.minors import (
    GrassmannBasisSlice, MinorIndex, NotQCommuting, coaction_identity_check, commutation_exponent,
    plucker_coordinate, plucker_indices, plucker_kernel_dimension, q_exponent, quantum_minor,
)
from qgrass.hopf import quantum_determinant
from qgrass.ncalg import build_manin_presentation


def classical_kernel_dimension(n, r, d):
    """Independent oracle: relations among degree-d products of classical r x r minors."""
    X = sp.Matrix(n, r, lambda i, j: sp.Symbol(f"x{i}{j}"))
    minors = [X.extract(list(I), list(range(r))).det() for I in itertools.combinations(range(n), r)]
    prods = [sp.Poly(sp.expand(sp.Mul(*m)), *X) for m in itertools.combinations_with_replacement(minors, d)]
    monos = sorted({mono for p in prods for mono in p.monoms()})
    M = sp.Matrix([[p.coeff_monomial(m) for m in monos] for p in prods])
    return len(prods) - M.rank()


@pytest.mark.parametrize("n,r,d,expected", [(4, 2, 2, 1), (3, 1, 2, 0), (2, 1, 1, 0), (3, 2, 2, 0)])
def test_plucker_kernel(n, r, d, expected):
    assert plucker_kernel_dimension(n, r, d) == expected
    assert classical_kernel_dimension(n, r, d) == expected


def test_flatness_4_2_2():
    s = GrassmannBasisSlice(4, 2, 2)
    assert s.rank == s.rank_at_one == 20
    assert s.is_flat()


@pytest.mark.parametrize("n,r", [(2, 1), (3, 1), (3, 2), (4, 2)])
def test_coaction(n, r):
    assert all(coaction_identity_check(I, n) for I in plucker_indices(n, r))


def test_full_minor_is_qdet():
    assert quantum_minor((1, 2, 3), (1, 2, 3)) == quantum_determinant(3)


def test_minor_index_validation():
    with pytest.raises(ValueError):
        MinorIndex((2, 1), (1, 2))
    with pytest.raises(ValueError):
        MinorIndex((1,), (1, 2))


def test_commutation_exponents():
    # D_0 = x11 at r = 1; x11 x21 = q x21 x11
    assert commutation_exponent((2,), 2, 1) == 1
    assert commutation_exponent((3, 4), 4, 2) == 2
    assert commutation_exponent((1, 2), 4, 2) == 0
    p = build_manin_presentation(2)
    with pytest.raises(NotQCommuting):
        q_exponent(p.gen((1, 1)), p.gen((2, 2)))


def test_rank_matches_sympy():
    rows = [p.terms for p in GrassmannBasisSlice(3, 2, 2).polys]
    q = sp.Symbol("q")
    cols = sorted({w for r in rows for w in r})

    def conv(c):
        num = sum(sp.Rational(v.numerator, v.denominator) * q ** e for e, v in c.num.items())
        return num / (q - 1) ** c.k

    M = sp.Matrix([[conv(r[w]) if w in r else 0 for w in cols] for r in rows])
    assert rank_over_fraction_field(rows) == M.rank(simplify=True)
    assert rank_at_one(rows) == M.subs(q, 1).rank()
