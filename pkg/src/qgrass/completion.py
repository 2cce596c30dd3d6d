"""(q-1)-adically truncated arithmetic on the chi-coordinates.

Elements are chi-polynomials whose coefficients are QSeries of a common
order N, i.e. they are known modulo (q-1)^N. The chi-relations have Laurent
coefficients, so normal forms commute with truncation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .bigcell import LocElem, _check_staircase
from .coeffs import LOC_ZERO, LocScalar, QSeries
from .drinfeld import chi_presentation, specialize_vee, to_vee_coordinates
from .hopf import Tensor, coproduct, tensor_algebra_map
from .linalg import Projector, rank_at_one
from .minors import base_index, d0, plucker_coordinate, plucker_indices, quantum_minor, staircase, swap_index
from .ncalg import NCPoly, build_manin_presentation


class NotUnitAtOne(ArithmeticError):
    """The series does not reduce to 1 at q = 1."""


class ValuationTooLow(ArithmeticError):
    """A term expected in (q-1)^2 (...) has lower (q-1)-valuation."""


def _max_len(p: NCPoly) -> int:
    return max((len(w) for w in p.terms), default=0)


class TruncElem:
    """A chi-polynomial modulo (q-1)^N.

    degree_bound records the longest word the element may contain. It is
    bookkeeping only: words are never dropped by length, since the
    chi-relations lower word length and long words do not form an ideal.
    """

    __slots__ = ("body", "degree_bound")

    def __init__(self, body: NCPoly, degree_bound: int | None = None):
        if body.order is None:
            raise TypeError("TruncElem needs a truncated polynomial")
        self.body = body
        self.degree_bound = _max_len(body) if degree_bound is None else degree_bound

    @classmethod
    def from_exact(cls, p: NCPoly, order: int) -> "TruncElem":
        return cls(p.truncate(order))

    @classmethod
    def one(cls, pres, order: int) -> "TruncElem":
        return cls(pres.one(order), 0)

    @property
    def order(self) -> int:
        return self.body.order

    @property
    def pres(self):
        return self.body.pres

    def _wrap(self, other):
        if isinstance(other, TruncElem):
            return other
        if isinstance(other, NCPoly):
            return TruncElem(other if other.order is not None else other.truncate(self.order))
        return TruncElem(self.pres.scalar(other, self.order), 0)

    def __add__(self, other):
        other = self._wrap(other)
        return TruncElem(self.body + other.body, max(self.degree_bound, other.degree_bound))

    __radd__ = __add__

    def __neg__(self):
        return TruncElem(-self.body, self.degree_bound)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncElem":
        return TruncElem(self.body.scale(c), self.degree_bound)

    def __mul__(self, other):
        if not isinstance(other, (TruncElem, NCPoly)):
            return self.scale(other)
        other = self._wrap(other)
        return TruncElem(self.body * other.body, self.degree_bound + other.degree_bound)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, k: int):
        out = TruncElem.one(self.pres, self.order)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, TruncElem):
            return self.body == other.body
        if isinstance(other, NCPoly):
            return self.body == self._wrap(other).body
        return self.body == self.pres.scalar(other, self.order)

    __hash__ = None

    def __bool__(self):
        return bool(self.body)

    def truncate(self, order: int) -> "TruncElem":
        return TruncElem(self.body.truncate(order), self.degree_bound)

    def divide_qminus1(self, k: int = 1) -> "TruncElem":
        return TruncElem(self.body.divide_qminus1(k), self.degree_bound)

    def valuation(self) -> int:
        return self.body.valuation()

    def eval_at_one(self) -> dict:
        return self.body.eval_at_one()

    def to_exact(self) -> NCPoly:
        """The polynomial representative of degree < N in (q-1)."""
        terms = {w: LocScalar(c.to_laurent()) for w, c in self.body.terms.items()}
        return NCPoly(self.pres, {w: c for w, c in terms.items() if c})

    def __str__(self):
        return f"{self.body} + O((q-1)^{self.order})"

    __repr__ = __str__


# -- inverses ---------------------------------------------------------------

def invert_unit_series(t: TruncElem) -> TruncElem:
    """Inverse of t = 1 mod (q-1), by the geometric series in 1 - t."""
    if t.order == 0:
        return t
    one = TruncElem.one(t.pres, t.order)
    s = one - t
    if s.body.truncate(1):
        raise NotUnitAtOne(f"{t} is not 1 at q = 1")
    out, power = one, one
    # (1 - t)^k has valuation >= k, so k < N suffices
    for _ in range(1, t.order):
        power = power * s
        out = out + power
    return out


def vee_series(p: NCPoly, order: int, mode: str = "SL") -> TruncElem:
    """An O_q(M_n) element in chi-coordinates, truncated."""
    return TruncElem.from_exact(to_vee_coordinates(p, mode), order)


def inverse_d0(n: int, r: int, order: int, q_conv: str = "standard", mode: str = "SL") -> TruncElem:
    return invert_unit_series(vee_series(d0(n, r, q_conv), order, mode))


# -- coproducts ---------------------------------------------------------------

def _chi_coproduct_image(pres, n: int, order: int):
    """Delta(chi_ij) = chi_ij (x) 1 + 1 (x) chi_ij + (q-1) sum_k chi_ik (x) chi_kj."""
    eps = QSeries.from_scalar(LocScalar(1, -1), order)
    one = QSeries.const(1, order)

    def image(g: int) -> Tensor:
        key = pres.keys[g]
        if not isinstance(key, tuple):
            raise ValueError(f"no completed coproduct for generator {key!r}")
        i, j = key
        terms = {((g,), ()): one, ((), (g,)): one}
        for k in range(1, n + 1):
            w = ((pres.idx[(i, k)],), (pres.idx[(k, j)],))
            terms[w] = terms.get(w, QSeries.zero(order)) + eps
        return Tensor((pres, pres), terms, order)

    return image


def _chi_size(pres) -> int:
    return int(round(sum(1 for k in pres.keys if isinstance(k, tuple)) ** 0.5))


def coproduct_completed(t: TruncElem) -> Tensor:
    pres = t.pres
    n = _chi_size(pres)
    return tensor_algebra_map(t.body, _chi_coproduct_image(pres, n, t.order),
                              ("chi-delta", id(pres), t.order), (pres, pres))


def counit_chi_leg(t: Tensor, i: int) -> Tensor:
    """Contract leg i with the counit; every chi_ij has counit 0."""
    return t.apply_leg(i, lambda w: {(): 0 if w else 1}).drop_leg(i)


def coproduct_on_leg(t: Tensor, i: int) -> Tensor:
    """Apply the completed coproduct to leg i, splitting it in two."""
    pres = t.legs[i]
    legs = t.legs[:i] + (pres, pres) + t.legs[i + 1:]
    acc = Tensor._raw(legs, {}, t.order)
    for ws, c in t.terms.items():
        d = coproduct_completed(TruncElem(NCPoly._raw(pres, {ws[i]: QSeries.const(1, t.order)}, t.order)))
        terms = {ws[:i] + pair + ws[i + 1:]: c * v for pair, v in d.terms.items()}
        acc = acc + Tensor._raw(legs, {k: v for k, v in terms.items() if v}, t.order)
    return acc


def tensor_to_vee(t: Tensor, order: int, mode: str = "SL") -> Tensor:
    """Exact x-coordinate tensor rewritten leg-wise in chi-coordinates, truncated."""
    if t.order is not None:
        raise TypeError("expected an exact tensor")
    cache: dict = {}

    def leg_image(pres, w):
        key = (id(pres), w)
        if key not in cache:
            cache[key] = to_vee_coordinates(NCPoly._raw(pres, {w: LocScalar(1)}, None), mode)
        return cache[key]

    acc = None
    for ws, c in t.terms.items():
        polys = [leg_image(p, w) for p, w in zip(t.legs, ws)]
        term = Tensor.pure(*polys).scale(c)
        acc = term if acc is None else acc + term
    if acc is None:
        cp = chi_presentation(int(round(t.legs[0].ngens ** 0.5)), mode, t.legs[0].q_conv)
        return Tensor._raw((cp, cp), {}, order)
    return acc.truncate(order)


def _unit_tensor(pres, order):
    return Tensor.unit((pres, pres), order)


def _tensor_inverse(t: Tensor) -> Tensor:
    """Inverse of a tensor congruent to 1 (x) 1 mod (q-1)."""
    one = _unit_tensor(t.legs[0], t.order)
    s = one - t
    if s.truncate(1):
        raise NotUnitAtOne("tensor is not 1 (x) 1 at q = 1")
    out, power = one, one
    for _ in range(1, t.order):
        power = power * s
        out = out + power
    return out


@dataclass
class DeltaTildeD0:
    """Delta~(D_0^-1) together with the valuation certificate of S."""
    value: Tensor
    s_valuation: int


def delta_tilde_d0_inverse(n: int, r: int, order: int, q_conv: str = "standard", mode: str = "SL") -> DeltaTildeD0:
    """(D_0 (x) D_0)^-1 (1 + S)^-1, S = sum_{K != I_0} D^{I_0}_K D_0^-1 (x) D^K D_0^-1."""
    I0 = base_index(r)
    cp = chi_presentation(n, mode, q_conv)
    inv = inverse_d0(n, r, order, q_conv, mode)
    s = Tensor._raw((cp, cp), {}, order)
    val = 1 << 30
    for K in plucker_indices(n, r):
        if K == I0:
            continue
        left = to_vee_coordinates(quantum_minor(I0, K, n, q_conv), mode)
        right = to_vee_coordinates(plucker_coordinate(K, n, q_conv), mode)
        # exact certificate; D_0^-1 is a unit at q = 1 and cannot lower it
        val = min(val, left.valuation() + right.valuation())
        s = s + Tensor.pure((TruncElem.from_exact(left, order) * inv).body,
                            (TruncElem.from_exact(right, order) * inv).body)
    if val < 2:
        raise ValuationTooLow(f"S has (q-1)-valuation {val} < 2")
    one = _unit_tensor(cp, order)
    inv_s = one
    power = one
    # (1 + S)^-1 = sum (-S)^m, and S^m vanishes once 2m >= N
    for _ in range(1, (order + 1) // 2 + 1):
        power = power * (-s)
        inv_s = inv_s + power
    return DeltaTildeD0(Tensor.pure(inv.body, inv.body) * inv_s, val)


def delta_tilde_localized(e: LocElem, order: int, degree_bound: int | None = None, mode: str = "SL") -> Tensor:
    """Delta~ of sum_c B_c D_0^K_c in the completed tensor square, mod (q-1)^N.

    degree_bound is accepted for symmetry with TruncElem and not used to cut words.
    """
    n, r, q_conv = e.n, e.r, e.q_conv
    cp = chi_presentation(n, mode, q_conv)
    out = Tensor._raw((cp, cp), {}, order)
    if not e.parts:
        return out
    ks = [k for _, k in e.parts.values()]
    neg = pos = None
    if min(ks) < 0:
        neg = delta_tilde_d0_inverse(n, r, order, q_conv, mode).value
    if max(ks) > 0:
        pos = tensor_to_vee(coproduct(d0(n, r, q_conv)), order, mode)
    for body, k in e.parts.values():
        term = tensor_to_vee(coproduct(body), order, mode)
        factor = neg if k < 0 else pos
        for _ in range(abs(k)):
            term = term * factor
        out = out + term
    return out


# -- mu generators --------------------------------------------------------------

def _t_numerator(i, j, n, r, q_conv):
    pres = build_manin_presentation(n, n, q_conv)
    return plucker_coordinate(swap_index(i, j, r), n, q_conv).scale(LocScalar((-pres.q) ** (r - j)))


def mu_series(i: int, j: int, n: int, r: int, order: int, q_conv: str = "standard", mode: str = "SL") -> TruncElem:
    """mu_ij = (q-1)^-1 t_ij modulo (q-1)^order."""
    _check_staircase(i, j, n, r)
    num = vee_series(_t_numerator(i, j, n, r, q_conv), order + 1, mode)
    t = num * inverse_d0(n, r, order + 1, q_conv, mode)
    return t.divide_qminus1()


def mu_coproduct(i: int, j: int, n: int, r: int, order: int, q_conv: str = "standard", mode: str = "SL") -> Tensor:
    """Delta^(mu_ij) = (q-1)^-1 Delta(numerator) Delta~(D_0^-1), mod (q-1)^order."""
    _check_staircase(i, j, n, r)
    num = tensor_to_vee(coproduct(_t_numerator(i, j, n, r, q_conv)), order + 1, mode)
    inv = delta_tilde_d0_inverse(n, r, order + 1, q_conv, mode).value
    return (num * inv).divide_qminus1()


def mu_monomials(n: int, r: int, degree: int, order: int, q_conv: str = "standard", mode: str = "SL"):
    """[(word, TruncElem)] for the PBW-sorted mu-words of length <= degree.

    Words are sorted by (i, r + 1 - j), the orientation in which the mu
    satisfy the Manin relations.
    """
    keys = sorted(staircase(n, r), key=lambda ij: (ij[0], r + 1 - ij[1]))
    mus = {k: mu_series(k[0], k[1], n, r, order, q_conv, mode) for k in keys}
    cp = chi_presentation(n, mode, q_conv)
    out = []
    for d in range(degree + 1):
        for word in itertools.combinations_with_replacement(keys, d):
            v = TruncElem.one(cp, order)
            for k in word:
                v = v * mus[k]
            out.append((word, v))
    return out


# -- coideal certificate ------------------------------------------------------

@dataclass
class CoidealCertificate:
    i: int
    j: int
    n: int
    r: int
    order: int
    degree: int
    # residuals[k] = {left chi-word: {right chi-word: rational string}}
    residuals: list = field(default_factory=list)
    spans: int = 0

    @property
    def passed(self) -> bool:
        return all(not res for res in self.residuals)

    def summary(self) -> str:
        flag = "pass" if self.passed else "FAIL"
        return f"mu[{self.i},{self.j}] (n={self.n}, r={self.r}, N={self.order}, D={self.degree}): {flag}"


def _lift_order_by_order(target: TruncElem, monos, proj: Projector):
    """Write target as sum a_alpha M_alpha one (q-1)-order at a time.

    Returns one residual dict per order; a nonzero residual at order k means
    the q^k coefficient leaves the span of the mu-monomials at q = 1.
    """
    chosen = [monos[t] for t in proj.indices]
    rest = target
    residuals = []
    for k in range(target.order):
        coeffs, resid, _ = proj.project(rest.eval_at_one())
        residuals.append(resid)
        if resid:
            # later orders are meaningless once an order fails
            residuals.extend({} for _ in range(k + 1, target.order))
            break
        for c, m in zip(coeffs, chosen):
            if c:
                rest = rest - m.truncate(rest.order).scale(c)
        rest = rest.divide_qminus1()
    return residuals


def coideal_membership(i: int, j: int, n: int, r: int, N: int, D: int, q_conv: str = "standard") -> CoidealCertificate:
    """Certify that every right leg of Delta^(mu_ij) lies in the closure of the mu-algebra.

    The left legs are PBW chi-words, so the right legs are unique. Each is
    expanded against the mu-monomials of degree <= D, one (q-1)-order at a time.
    """
    cert = CoidealCertificate(i, j, n, r, N, D)
    delta = mu_coproduct(i, j, n, r, N, q_conv)
    monos = [m for _, m in mu_monomials(n, r, D, N, q_conv)]
    proj = Projector([m.eval_at_one() for m in monos])
    cert.spans = proj.rank
    cp = delta.legs[1]
    per_order = [dict() for _ in range(N)]
    for left, right in sorted(delta.grouped_by_leg(0).items()):
        body = right.to_poly() if right.terms else cp.zero(N)
        res = _lift_order_by_order(TruncElem(body), monos, proj)
        for k, rd in enumerate(res):
            if rd:
                per_order[k][cp.format_word(left)] = {cp.format_word(w): str(c) for w, c in sorted(rd.items())}
    cert.residuals = per_order
    return cert


# -- main theorem -------------------------------------------------------------

@dataclass
class MainTheoremReport:
    n: int
    r: int
    order: int
    degree: int
    p_perp_ok: bool = False
    coideal: list = field(default_factory=list)
    intersection_ok: bool = False
    monomial_count: int = 0
    rank_at_one: int = 0

    @property
    def coideal_ok(self) -> bool:
        return all(c.passed for c in self.coideal)

    @property
    def ok(self) -> bool:
        return self.p_perp_ok and self.coideal_ok and self.intersection_ok


def intersection_property(n: int, r: int, N: int, D: int, q_conv: str = "standard"):
    """(count, rank at q = 1) of the mu-monomials of degree <= D.

    A combination sum a_alpha M_alpha is divisible by (q-1) in the ambient
    completion exactly when every a_alpha is, iff the q = 1 images are
    independent.
    """
    monos = [m for _, m in mu_monomials(n, r, D, N, q_conv)]
    return len(monos), rank_at_one([m.eval_at_one() for m in monos])


def verify_main_theorem(n: int, r: int, N: int, D: int, q_conv: str = "standard") -> MainTheoremReport:
    from .drinfeld import verify_p_perp_image

    rep = MainTheoremReport(n, r, N, D)
    rep.p_perp_ok = verify_p_perp_image(n, r, q_conv).ok
    for i, j in staircase(n, r):
        rep.coideal.append(coideal_membership(i, j, n, r, N, D, q_conv))
    rep.monomial_count, rep.rank_at_one = intersection_property(n, r, N, D, q_conv)
    rep.intersection_ok = rep.monomial_count == rep.rank_at_one
    return rep
