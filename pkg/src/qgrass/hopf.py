"""Bialgebra structure on O_q(M_n), O_q(GL_n) and O_q(SL_n).

Tensor products are stored leg-wise: each key is a tuple of normal words,
one per leg, and each leg is reduced in its own presentation.
"""

from __future__ import annotations

import itertools

from .coeffs import LOC_ONE, LOC_ZERO, LocScalar, NotDivisible, QSeries
from .ncalg import (
    NCPoly,
    Presentation,
    build_manin_presentation,
    divide,
    leading_term,
    multiset_key,
)


def inversions(perm) -> int:
    return sum(1 for a, b in itertools.combinations(perm, 2) if a > b)


def alternating_sum(pres: Presentation, rows, cols) -> NCPoly:
    """sum over sigma of (-q)^{l(sigma)} x[rows_1, cols_sigma(1)] ... x[rows_r, cols_sigma(r)]."""
    rows, cols = tuple(rows), tuple(cols)
    if len(rows) != len(cols):
        raise ValueError("minor needs as many rows as columns")
    mq = -pres.q
    terms = {}
    for perm in itertools.permutations(range(len(cols))):
        w = tuple(pres.idx[(i, cols[s])] for i, s in zip(rows, perm))
        c = LocScalar(mq ** inversions(perm))
        terms[w] = terms.get(w, LOC_ZERO) + c
    return NCPoly(pres, terms).normal_form()


def quantum_determinant(n: int, q_conv: str = "standard") -> NCPoly:
    if n < 1:
        raise ValueError("n >= 1 required")
    pres = build_manin_presentation(n, n, q_conv)
    idx = tuple(range(1, n + 1))
    return alternating_sum(pres, idx, idx)


# -- tensors ----------------------------------------------------------------

class Tensor:
    """Element of A_1 (x) ... (x) A_k with coefficients in LocScalar or QSeries."""

    __slots__ = ("legs", "terms", "order")

    def __init__(self, legs, terms=None, order=None):
        self.legs = tuple(legs)
        self.order = order
        self.terms = {}
        for ws, c in (terms or {}).items():
            if order is not None and not isinstance(c, QSeries):
                c = QSeries.from_scalar(c, order)
            elif order is None:
                c = LocScalar.coerce(c)
            if c:
                self.terms[tuple(ws)] = self.terms.get(tuple(ws), _zero(order)) + c
        self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def _raw(cls, legs, terms, order):
        obj = cls.__new__(cls)
        obj.legs = legs
        obj.terms = terms
        obj.order = order
        return obj

    @classmethod
    def unit(cls, legs, order=None) -> "Tensor":
        return cls(legs, {tuple(() for _ in legs): 1}, order)

    @classmethod
    def pure(cls, *polys: NCPoly) -> "Tensor":
        """p_1 (x) ... (x) p_k."""
        order = polys[0].order
        legs = tuple(p.pres for p in polys)
        acc = {(): LOC_ONE if order is None else QSeries.const(1, order)}
        for p in polys:
            if p.order != order:
                raise TypeError("legs with different truncation orders")
            nxt = {}
            for ws, c in acc.items():
                for w, d in p.terms.items():
                    nxt[ws + (w,)] = c * d
            acc = nxt
        return cls._raw(legs, {k: v for k, v in acc.items() if v}, order)

    def __bool__(self):
        return bool(self.terms)

    def valuation(self) -> int:
        return min((c.valuation() for c in self.terms.values()), default=1 << 30)

    def _same(self, other):
        if self.legs != other.legs:
            raise ValueError("tensors over different algebras")
        if self.order != other.order:
            raise TypeError("tensors with different truncation orders")

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            old = out.get(k)
            if old is None:
                out[k] = c
            else:
                s = old + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return Tensor._raw(self.legs, out, self.order)

    def __neg__(self):
        return Tensor._raw(self.legs, {k: -c for k, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Tensor":
        if self.order is not None and not isinstance(c, QSeries):
            c = QSeries.from_scalar(c, self.order)
        elif self.order is None:
            c = LocScalar.coerce(c)
        out = {}
        for k, v in self.terms.items():
            e = v * c
            if e:
                out[k] = e
        return Tensor._raw(self.legs, out, self.order)

    def __mul__(self, other):
        if not isinstance(other, Tensor):
            return self.scale(other)
        self._same(other)
        order = self.order
        conv = (lambda d: d) if order is None else (lambda d: QSeries.from_scalar(d, order))
        nfs = [leg.word_nf for leg in self.legs]
        acc: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                c = c1 * c2
                if not c:
                    continue
                parts = [nfs[i](k1[i] + k2[i]) for i in range(len(self.legs))]
                for combo in itertools.product(*(p.items() for p in parts)):
                    e = c
                    for _, d in combo:
                        e = e * conv(d)
                    key = tuple(w for w, _ in combo)
                    old = acc.get(key)
                    acc[key] = e if old is None else old + e
        return Tensor._raw(self.legs, {k: v for k, v in acc.items() if v}, order)

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.legs == other.legs and self.terms == other.terms

    __hash__ = None

    def truncate(self, order: int) -> "Tensor":
        if self.order is None:
            f = lambda c: QSeries.from_scalar(c, order)
        else:
            f = lambda c: c.truncate(order)
        out = {}
        for k, c in self.terms.items():
            v = f(c)
            if v:
                out[k] = v
        return Tensor._raw(self.legs, out, order)

    def divide_qminus1(self, k: int = 1) -> "Tensor":
        order = None if self.order is None else self.order - k
        return Tensor._raw(self.legs, {w: c.divide_qminus1(k) for w, c in self.terms.items()}, order)

    def apply_leg(self, i: int, f) -> "Tensor":
        """Apply a linear map leg-wise; f maps a word to a dict {word: coefficient}
        in the target presentation (or {(): scalar} to contract the leg)."""
        acc: dict = {}
        legs = self.legs
        for ws, c in self.terms.items():
            for w, d in f(ws[i]).items():
                if self.order is not None and not isinstance(d, QSeries):
                    d = QSeries.from_scalar(d, self.order)
                key = ws[:i] + (w,) + ws[i + 1:]
                acc[key] = acc.get(key, _zero(self.order)) + c * d
        return Tensor._raw(legs, {k: v for k, v in acc.items() if v}, self.order)

    def drop_leg(self, i: int) -> "Tensor":
        """Contract a leg whose words are all empty (e.g. after a counit)."""
        acc: dict = {}
        for ws, c in self.terms.items():
            if ws[i]:
                raise ValueError("leg is not scalar")
            key = ws[:i] + ws[i + 1:]
            acc[key] = acc.get(key, _zero(self.order)) + c
        legs = self.legs[:i] + self.legs[i + 1:]
        return Tensor._raw(legs, {k: v for k, v in acc.items() if v}, self.order)

    def to_poly(self) -> NCPoly:
        if len(self.legs) != 1:
            raise ValueError("only one-leg tensors convert to polynomials")
        return NCPoly._raw(self.legs[0], {ws[0]: c for ws, c in self.terms.items()}, self.order)

    def grouped_by_leg(self, i: int) -> dict:
        """{word on leg i: tensor of the remaining legs}."""
        out: dict = {}
        for ws, c in self.terms.items():
            out.setdefault(ws[i], {})[ws[:i] + ws[i + 1:]] = c
        legs = self.legs[:i] + self.legs[i + 1:]
        return {w: Tensor._raw(legs, t, self.order) for w, t in out.items()}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for ws, c in sorted(self.terms.items(), key=lambda t: tuple((len(w), w) for w in t[0])):
            legs = " (x) ".join(p.format_word(w) for p, w in zip(self.legs, ws))
            parts.append(f"({c})*[{legs}]")
        return " + ".join(parts)

    __repr__ = __str__


def _zero(order):
    return LOC_ZERO if order is None else QSeries.zero(order)


# -- algebra maps into tensor powers -----------------------------------------

_DELTA_CACHE: dict = {}


def tensor_algebra_map(p: NCPoly, images, cache_key, legs) -> Tensor:
    """Extend generator images multiplicatively to p."""
    cache = _DELTA_CACHE.setdefault(cache_key, {})
    order = p.order
    out = Tensor._raw(tuple(legs), {}, order)
    for w, c in p.terms.items():
        t = cache.get(w)
        if t is None:
            t = Tensor.unit(legs, order)
            for k in range(len(w)):
                pre = cache.get(w[: k + 1])
                if pre is None:
                    pre = t * images(w[k])
                    cache[w[: k + 1]] = pre
                t = pre
        out = out + t.scale(c)
    return out


def _x_coproduct_image(pres: Presentation, n: int):
    def image(g: int) -> Tensor:
        i, j = pres.keys[g]
        terms = {((pres.idx[(i, k)],), (pres.idx[(k, j)],)): 1 for k in range(1, n + 1)}
        return Tensor((pres, pres), terms)
    return image


def coproduct(p: NCPoly) -> Tensor:
    """Delta(x_ij) = sum_k x_ik (x) x_kj, extended as an algebra map."""
    if p.order is not None:
        raise TypeError("coproduct of truncated elements lives in the completion module")
    pres = p.pres
    n = int(round(pres.ngens ** 0.5))
    if n * n != pres.ngens or pres.keys[0] != (1, 1):
        raise ValueError("coproduct is defined on O_q(M_n)")
    return tensor_algebra_map(p, _x_coproduct_image(pres, n), ("x-delta", id(pres)), (pres, pres))


def counit_word(pres: Presentation, w) -> LocScalar:
    for g in w:
        i, j = pres.keys[g]
        if i != j:
            return LOC_ZERO
    return LOC_ONE


def counit(p: NCPoly) -> LocScalar:
    """epsilon(x_ij) = delta_ij."""
    out = LOC_ZERO
    for w, c in p.terms.items():
        if counit_word(p.pres, w):
            out = out + c
    return out


def counit_leg(t: Tensor, i: int) -> Tensor:
    pres = t.legs[i]
    return t.apply_leg(i, lambda w: {(): counit_word(pres, w)}).drop_leg(i)


def is_group_like(p: NCPoly) -> bool:
    return coproduct(p) == Tensor.pure(p, p)


# -- O_q(GL_n) --------------------------------------------------------------

class GLElement:
    """sum of body_k * T^k with T central and T * D_q = 1."""

    __slots__ = ("pres", "parts")

    def __init__(self, pres: Presentation, parts=None):
        self.pres = pres
        self.parts = {}
        for k, b in (parts or {}).items():
            if k < 0:
                raise ValueError("negative T powers are not part of O_q(GL_n)")
            if b:
                self.parts[k] = self.parts.get(k, pres.zero()) + b
        self.parts = {k: b for k, b in self.parts.items() if b}

    @classmethod
    def from_poly(cls, p: NCPoly, tpow: int = 0) -> "GLElement":
        return cls(p.pres, {tpow: p})

    @classmethod
    def T(cls, pres: Presentation) -> "GLElement":
        return cls(pres, {1: pres.one()})

    def __add__(self, other):
        if isinstance(other, NCPoly):
            other = GLElement.from_poly(other)
        parts = dict(self.parts)
        for k, b in other.parts.items():
            parts[k] = parts.get(k, self.pres.zero()) + b
        return GLElement(self.pres, parts)

    __radd__ = __add__

    def __neg__(self):
        return GLElement(self.pres, {k: -b for k, b in self.parts.items()})

    def __sub__(self, other):
        if isinstance(other, NCPoly):
            other = GLElement.from_poly(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            other = GLElement.from_poly(other)
        if not isinstance(other, GLElement):
            return GLElement(self.pres, {k: b.scale(other) for k, b in self.parts.items()})
        parts: dict = {}
        for k1, b1 in self.parts.items():
            for k2, b2 in other.parts.items():
                parts[k1 + k2] = parts.get(k1 + k2, self.pres.zero()) + b1 * b2
        return GLElement(self.pres, parts)

    def __rmul__(self, other):
        if isinstance(other, NCPoly):
            return GLElement.from_poly(other) * self
        return self * other

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            other = GLElement.from_poly(other)
        if not isinstance(other, GLElement):
            return NotImplemented
        a, b = gl_reduce(self), gl_reduce(other)
        return a.parts == b.parts or _parts_equal(a.parts, b.parts)

    __hash__ = None

    def reduced(self) -> "GLElement":
        return gl_reduce(self)

    def __str__(self):
        if not self.parts:
            return "0"
        out = []
        parts = gl_reduce(self).parts
        for k in sorted(parts):
            body = str(parts[k])
            out.append(body if k == 0 else f"({body})*T^{k}")
        return " + ".join(out)

    __repr__ = __str__


def _parts_equal(a, b):
    return set(a) == set(b) and all(a[k] == b[k] for k in a)


def gl_reduce(e: GLElement) -> GLElement:
    """Canonical form B * T^K with K minimal, cancelling T * D_q pairs."""
    if not e.parts:
        return e
    pres = e.pres
    n = int(round(pres.ngens ** 0.5))
    dq = alternating_sum(pres, range(1, n + 1), range(1, n + 1))
    top = max(e.parts)
    body = pres.zero()
    for k, b in e.parts.items():
        body = body + b * dq ** (top - k)
    while top > 0:
        try:
            body = divide(body, dq, side="right")
        except NotDivisible:
            break
        top -= 1
    return GLElement(pres, {top: body})


def sl_reduce(p: NCPoly) -> NCPoly:
    """Normal form in O_q(SL_n) = O_q(M_n)/(D_q - 1).

    D_q is central with leading monomial x_11 x_22 ... x_nn, so the remainder
    carries no monomial divisible by the diagonal.
    """
    pres = p.pres
    n = int(round(pres.ngens ** 0.5))
    dq = alternating_sum(pres, range(1, n + 1), range(1, n + 1))
    diag = leading_term(dq)[0]
    rel = dq - pres.one()
    rem = p
    while True:
        divisible = [w for w in rem.terms if _contains(w, diag)]
        if not divisible:
            return rem
        w = max(divisible, key=multiset_key)
        c = rem.terms[w]
        m = list(w)
        for a in diag:
            m.remove(a)
        mono = NCPoly(pres, {tuple(sorted(m)): 1}).normal_form()
        prod = mono * dq
        lw, lc = leading_term(prod)
        assert lw == w, "leading monomial of m*D_q is not the merged word"
        rem = rem - (mono * rel).scale(c.exact_div(lc))


def _contains(w, d) -> bool:
    rest = list(w)
    for a in d:
        if a in rest:
            rest.remove(a)
        else:
            return False
    return True
