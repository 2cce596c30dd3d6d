"""Quantum minors, Plücker coordinates and degree-bounded Grassmannian slices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .coeffs import LocScalar
from .hopf import Tensor, alternating_sum, coproduct, counit
from .linalg import rank_at_one, rank_over_fraction_field
from .ncalg import NCPoly, build_manin_presentation


class NotQCommuting(ValueError):
    """D_0 and the given element do not q-commute."""


@dataclass(frozen=True)
class MinorIndex:
    rows: tuple
    cols: tuple

    def __post_init__(self):
        rows, cols = tuple(self.rows), tuple(self.cols)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        if len(rows) != len(cols) or not rows:
            raise ValueError("a minor needs equally many (>= 1) rows and columns")
        for t in (rows, cols):
            if any(a >= b for a, b in zip(t, t[1:])) or t[0] < 1:
                raise ValueError(f"indices must be strictly increasing and positive: {t}")

    @property
    def r(self) -> int:
        return len(self.rows)


def _index(idx, cols=None) -> MinorIndex:
    if isinstance(idx, MinorIndex):
        return idx
    return MinorIndex(tuple(idx), tuple(cols))


@lru_cache(maxsize=None)
def _minor_cached(rows, cols, n, q_conv) -> NCPoly:
    return alternating_sum(build_manin_presentation(n, n, q_conv), rows, cols)


def quantum_minor(idx, cols=None, n: int | None = None, q_conv: str = "standard") -> NCPoly:
    """D^I_K in O_q(M_n); n defaults to the largest index used."""
    m = _index(idx, cols)
    if n is None:
        n = max(m.rows[-1], m.cols[-1])
    if max(m.rows[-1], m.cols[-1]) > n:
        raise ValueError(f"index out of range for n = {n}")
    return _minor_cached(m.rows, m.cols, n, q_conv)


def plucker_coordinate(I, n: int | None = None, q_conv: str = "standard") -> NCPoly:
    I = tuple(I)
    return quantum_minor(I, tuple(range(1, len(I) + 1)), n, q_conv)


def plucker_indices(n: int, r: int):
    if not 1 <= r <= n:
        raise ValueError("need 1 <= r <= n")
    return list(itertools.combinations(range(1, n + 1), r))


def base_index(r: int) -> tuple:
    return tuple(range(1, r + 1))


def d0(n: int, r: int, q_conv: str = "standard") -> NCPoly:
    return plucker_coordinate(base_index(r), n, q_conv)


def coaction_identity_check(I, n: int, q_conv: str = "standard") -> bool:
    """Delta(D^I) == sum_K D^I_K (x) D^K."""
    I = tuple(I)
    r = len(I)
    lhs = coproduct(plucker_coordinate(I, n, q_conv))
    pres = build_manin_presentation(n, n, q_conv)
    rhs = Tensor((pres, pres))
    for K in plucker_indices(n, r):
        rhs = rhs + Tensor.pure(quantum_minor(I, K, n, q_conv), plucker_coordinate(K, n, q_conv))
    return lhs == rhs


def q_exponent(a: NCPoly, b: NCPoly) -> int:
    """The integer c with a*b = q^c * b*a."""
    ab, ba = a * b, b * a
    if not ab and not ba:
        return 0
    if set(ab.terms) != set(ba.terms):
        raise NotQCommuting("supports differ")
    qq = a.pres.q
    w = next(iter(ba.terms))
    ratio = ab.terms[w].exact_div(ba.terms[w])
    if not ratio.is_laurent() or not ratio.num.is_monomial():
        raise NotQCommuting(f"ratio {ratio} is not a power of q")
    (e, c), = ratio.num.items()
    if c != 1:
        raise NotQCommuting(f"ratio {ratio} is not a power of q")
    cexp = e if qq.min_exp() == 1 else -e
    if ab != ba.scale(LocScalar(qq ** cexp)):
        raise NotQCommuting("not a uniform power of q")
    return cexp


def commutation_exponent(J, n: int, r: int, q_conv: str = "standard") -> int:
    """c with D_0 * D^J = q^c * D^J * D_0; J is an r-tuple or a MinorIndex."""
    if isinstance(J, MinorIndex):
        elem = quantum_minor(J, n=n, q_conv=q_conv)
    elif isinstance(J, NCPoly):
        elem = J
    else:
        J = tuple(J)
        if len(J) != r:
            raise ValueError(f"expected an {r}-tuple")
        elem = plucker_coordinate(J, n, q_conv)
    return q_exponent(d0(n, r, q_conv), elem)


def plucker_counit(I) -> LocScalar:
    return counit(plucker_coordinate(I))


def formal_monomials(n: int, r: int, d: int):
    return list(itertools.combinations_with_replacement(plucker_indices(n, r), d))


class GrassmannBasisSlice:
    """Products of d Plücker coordinates (indices non-decreasing), in normal form."""

    def __init__(self, n: int, r: int, d: int, q_conv: str = "standard"):
        self.n, self.r, self.d = n, r, d
        self.monomials = formal_monomials(n, r, d)
        pres = build_manin_presentation(n, n, q_conv)
        self.polys = []
        for mono in self.monomials:
            p = pres.one()
            for I in mono:
                p = p * plucker_coordinate(I, n, q_conv)
            self.polys.append(p)
        self._rank = None
        self._rank1 = None

    @property
    def rank(self) -> int:
        if self._rank is None:
            self._rank = rank_over_fraction_field([p.terms for p in self.polys])
        return self._rank

    @property
    def rank_at_one(self) -> int:
        if self._rank1 is None:
            self._rank1 = rank_at_one([p.terms for p in self.polys])
        return self._rank1

    @property
    def kernel_dimension(self) -> int:
        return len(self.polys) - self.rank

    def is_flat(self) -> bool:
        # no (q-1)-torsion appears at q = 1 iff the two ranks agree
        return self.rank == self.rank_at_one


def plucker_kernel_dimension(n: int, r: int, d: int, q_conv: str = "standard") -> int:
    return GrassmannBasisSlice(n, r, d, q_conv).kernel_dimension


def staircase(n: int, r: int):
    """(i, j) with r < i <= n and 1 <= j <= r, row-major."""
    return [(i, j) for i in range(r + 1, n + 1) for j in range(1, r + 1)]


def swap_index(i: int, j: int, r: int) -> tuple:
    """Sorted (1..j^..r, i) for the big-cell generator t_ij."""
    return tuple(k for k in range(1, r + 1) if k != j) + (i,)

