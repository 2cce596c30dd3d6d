"""Noncommutative polynomials and quadratic rewriting systems.

A Presentation is an ordered generator set plus oriented rules whose leading
words have length two.  Words are tuples of generator indices; the index is
the sort key.  The monomial order is degree first, then lexicographic.
Normal forms of words are memoized per presentation, so a Presentation must
not be mutated after construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from numbers import Rational

from .coeffs import (
    LOC_ONE,
    LOC_ZERO,
    LaurentScalar,
    LocScalar,
    NotDivisible,
    QSeries,
    Q,
    QINV,
)

Word = tuple


class RewriteBudgetExceeded(RuntimeError):
    pass


def word_key(w: Word):
    return (len(w), w)


class Presentation:
    def __init__(self, keys, labels, rules, name="", q_conv="standard", step_budget=10**7):
        self.keys = list(keys)
        self.labels = list(labels)
        if len(self.keys) != len(self.labels):
            raise ValueError("keys and labels differ in length")
        self.idx = {k: i for i, k in enumerate(self.keys)}
        self.name = name
        self.q_conv = q_conv
        self.step_budget = step_budget
        self.rules: dict = {}
        for lead, repl in rules.items():
            lead = tuple(lead)
            if len(lead) != 2:
                raise ValueError(f"leading word {lead} is not quadratic")
            clean = {}
            for w, c in repl.items():
                c = LocScalar.coerce(c)
                if c:
                    w = tuple(w)
                    if word_key(w) >= word_key(lead):
                        raise ValueError(
                            f"rule {self.format_word(lead)} -> {self.format_word(w)} "
                            "does not decrease the monomial order"
                        )
                    clean[w] = clean.get(w, LOC_ZERO) + c
            self.rules[lead] = {w: c for w, c in clean.items() if c}
        self._nf: dict = {}
        self._prefix: dict = {}
        self._steps = 0

    @property
    def q(self) -> LaurentScalar:
        """The deformation parameter as it appears in the relations."""
        return QINV if self.q_conv == "inverted" else Q

    @property
    def ngens(self) -> int:
        return len(self.keys)

    def __repr__(self):
        return f"Presentation({self.name or 'anonymous'}, {self.ngens} gens, {len(self.rules)} rules)"

    def format_word(self, w: Word) -> str:
        return "*".join(self.labels[i] for i in w) if w else "1"

    def is_normal(self, w: Word) -> bool:
        return not any((w[i], w[i + 1]) in self.rules for i in range(len(w) - 1))

    # -- normal forms -------------------------------------------------------

    def word_nf(self, w: Word) -> dict:
        """Normal form of a single word, as {normal word: LocScalar}."""
        hit = self._nf.get(w)
        if hit is not None:
            return hit
        if len(w) <= 1:
            out = {w: LOC_ONE}
        else:
            tail = self.word_nf(w[1:])
            a = w[0]
            out = {}
            for u, c in tail.items():
                for v, d in self._insert(a, u).items():
                    e = c * d
                    old = out.get(v)
                    out[v] = e if old is None else old + e
            out = {v: c for v, c in out.items() if c}
        self._nf[w] = out
        return out

    def _insert(self, a: int, u: Word) -> dict:
        # normal form of a*u for a normal word u
        key = (a, u)
        hit = self._prefix.get(key)
        if hit is not None:
            return hit
        if not u or (a, u[0]) not in self.rules:
            out = {(a,) + u: LOC_ONE}
        else:
            self._steps += 1
            if self._steps > self.step_budget:
                raise RewriteBudgetExceeded(f"{self.name}: more than {self.step_budget} rewrites")
            rest = u[1:]
            out = {}
            for v, d in self.rules[(a, u[0])].items():
                for z, e in self.word_nf(v + rest).items():
                    f = d * e
                    old = out.get(z)
                    out[z] = f if old is None else old + f
            out = {z: c for z, c in out.items() if c}
        self._prefix[key] = out
        return out

    # -- constructors -------------------------------------------------------

    def zero(self, order=None) -> "NCPoly":
        return NCPoly(self, {}, order)

    def one(self, order=None) -> "NCPoly":
        return NCPoly(self, {(): _unit(order)}, order)

    def scalar(self, c, order=None) -> "NCPoly":
        return NCPoly(self, {(): _coerce(c, order)}, order)

    def gen(self, key, order=None) -> "NCPoly":
        return NCPoly(self, {(self.idx[key],): _unit(order)}, order)

    def word(self, keys, order=None) -> "NCPoly":
        w = tuple(self.idx[k] for k in keys)
        return NCPoly(self, {w: _unit(order)}, order).normal_form()

    def normal_words(self, degree: int):
        """All normal words of the given length, in increasing order."""
        out = [()]
        for _ in range(degree):
            out = [w + (a,) for w in out for a in range(self.ngens) if not w or (w[-1], a) not in self.rules]
        return sorted(out)


def _unit(order):
    return LOC_ONE if order is None else QSeries.const(1, order)


def _coerce(c, order):
    if order is None:
        if isinstance(c, QSeries):
            raise TypeError("series coefficient in an exact polynomial")
        return LocScalar.coerce(c)
    if isinstance(c, QSeries):
        return c.truncate(order) if c.order > order else c
    return QSeries.from_scalar(c, order)


class NCPoly:
    """Finite sum of words with exact (LocScalar) or truncated (QSeries) coefficients.

    With ``order=None`` coefficients are LocScalar; with an integer order they
    are QSeries modulo (q-1)^order.  Results of arithmetic are in normal form.
    """

    __slots__ = ("pres", "terms", "order")

    def __init__(self, pres: Presentation, terms=None, order=None):
        self.pres = pres
        self.order = order
        self.terms = {}
        if terms:
            for w, c in terms.items():
                c = _coerce(c, order)
                if c:
                    w = tuple(w)
                    old = self.terms.get(w)
                    self.terms[w] = c if old is None else old + c
            self.terms = {w: c for w, c in self.terms.items() if c}

    @classmethod
    def _raw(cls, pres, terms, order):
        obj = cls.__new__(cls)
        obj.pres = pres
        obj.terms = terms
        obj.order = order
        return obj

    def _conv(self, d: LocScalar):
        return d if self.order is None else QSeries.from_scalar(d, self.order)

    # -- inspection ---------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def items(self):
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]))

    def coeff(self, w: Word):
        w = tuple(w)
        if w in self.terms:
            return self.terms[w]
        return LOC_ZERO if self.order is None else QSeries.zero(self.order)

    def constant(self):
        return self.coeff(())

    def valuation(self) -> int:
        """Minimal (q-1)-adic valuation of the coefficients."""
        return min((c.valuation() for c in self.terms.values()), default=1 << 30)

    def is_normal(self) -> bool:
        return all(self.pres.is_normal(w) for w in self.terms)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "NCPoly"):
        if other.pres is not self.pres:
            raise ValueError("polynomials live in different presentations")

    def _order_with(self, other):
        if self.order is None and other.order is None:
            return None
        if self.order is None or other.order is None:
            raise TypeError("mixing exact and truncated polynomials; use truncate() first")
        return min(self.order, other.order)

    def _lift(self, c):
        return _coerce(c, self.order)

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            other = self.pres.scalar(other, self.order)
        self._check(other)
        order = self._order_with(other)
        a = self if self.order == order else self.truncate(order)
        b = other if other.order == order else other.truncate(order)
        out = dict(a.terms)
        for w, c in b.terms.items():
            old = out.get(w)
            if old is None:
                out[w] = c
            else:
                s = old + c
                if s:
                    out[w] = s
                else:
                    del out[w]
        return NCPoly._raw(self.pres, out, order)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw(self.pres, {w: -c for w, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            other = self.pres.scalar(other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NCPoly":
        c = self._lift(c)
        if not c:
            return self.pres.zero(self.order)
        out = {}
        for w, v in self.terms.items():
            e = v * c
            if e:
                out[w] = e
        return NCPoly._raw(self.pres, out, self.order)

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        self._check(other)
        order = self._order_with(other)
        nf = self.pres.word_nf
        conv = (lambda d: d) if order is None else (lambda d: QSeries.from_scalar(d, order))
        acc: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                c = c1 * c2
                if not c:
                    continue
                for w, d in nf(w1 + w2).items():
                    e = c * conv(d)
                    old = acc.get(w)
                    acc[w] = e if old is None else old + e
        return NCPoly._raw(self.pres, {w: c for w, c in acc.items() if c}, order)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = self.pres.one(self.order)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            if other.pres is not self.pres:
                return False
            if self.order != other.order:
                order = self._order_with(other)
                return self.truncate(order).terms == other.truncate(order).terms
            return self.terms == other.terms
        if isinstance(other, (int, Rational, LaurentScalar, LocScalar)):
            return self == self.pres.scalar(other, self.order)
        return NotImplemented

    __hash__ = None

    def normal_form(self) -> "NCPoly":
        nf = self.pres.word_nf
        acc: dict = {}
        for w, c in self.terms.items():
            for v, d in nf(w).items():
                e = c * self._conv(d)
                old = acc.get(v)
                acc[v] = e if old is None else old + e
        return NCPoly._raw(self.pres, {w: c for w, c in acc.items() if c}, self.order)

    # -- coefficient maps ---------------------------------------------------

    def map_coeffs(self, f, order="same") -> "NCPoly":
        order = self.order if order == "same" else order
        out = {}
        for w, c in self.terms.items():
            v = f(c)
            if v:
                out[w] = v
        return NCPoly._raw(self.pres, out, order)

    def truncate(self, order: int) -> "NCPoly":
        """Reduce modulo (q-1)^order."""
        if self.order is None:
            return self.map_coeffs(lambda c: QSeries.from_scalar(c, order), order)
        if order > self.order:
            raise ValueError("cannot raise the truncation order")
        return self.map_coeffs(lambda c: c.truncate(order), order)

    def divide_qminus1(self, k: int = 1) -> "NCPoly":
        return self.map_coeffs(lambda c: c.divide_qminus1(k),
                               self.order if self.order is None else self.order - k)

    def times_qminus1(self, k: int = 1) -> "NCPoly":
        return self.map_coeffs(lambda c: c.times_qminus1(k))

    def eval_at_one(self) -> dict:
        """Coefficients at q = 1, keyed by word."""
        out = {}
        for w, c in self.terms.items():
            v = c.eval_at_one()
            if v:
                out[w] = v
        return out

    # -- printing -----------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"NCPoly({format_poly(self)!r})"


def format_coeff(c) -> str:
    if isinstance(c, QSeries):
        return f"[{c}]"
    if c.k == 0:
        return f"({c.num})"
    return f"({c.num})/(q-1)^{c.k}"


def format_poly(p: NCPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for w, c in p.items():
        if p.order is None and c == LOC_ONE:
            parts.append(p.pres.format_word(w))
        elif not w:
            parts.append(format_coeff(c))
        else:
            parts.append(f"{format_coeff(c)}*{p.pres.format_word(w)}")
    return " + ".join(parts)


# -- free functions matching the module contract ---------------------------

def normal_form(p: NCPoly, pres: Presentation | None = None) -> NCPoly:
    if pres is not None and pres is not p.pres:
        raise ValueError("polynomial belongs to another presentation")
    return p.normal_form()


def multiply(p: NCPoly, r: NCPoly, pres: Presentation | None = None) -> NCPoly:
    return p * r


def add(p: NCPoly, r: NCPoly) -> NCPoly:
    return p + r


def scale(p: NCPoly, c) -> NCPoly:
    return p.scale(c)


def commutator(p: NCPoly, r: NCPoly) -> NCPoly:
    return p * r - r * p


@dataclass
class ConfluenceReport:
    overlaps_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_confluence(pres: Presentation) -> ConfluenceReport:
    """Resolve every overlap c*b*a of two rules both ways and compare."""
    report = ConfluenceReport()
    by_first: dict = {}
    for (b, a) in pres.rules:
        by_first.setdefault(b, []).append(a)
    nf = pres.word_nf
    for (c, b) in pres.rules:
        for a in by_first.get(b, ()):
            report.overlaps_checked += 1
            left: dict = {}
            for v, d in pres.rules[(c, b)].items():
                for z, e in nf(v + (a,)).items():
                    left[z] = left.get(z, LOC_ZERO) + d * e
            right: dict = {}
            for u, d in pres.rules[(b, a)].items():
                for z, e in nf((c,) + u).items():
                    right[z] = right.get(z, LOC_ZERO) + d * e
            left = {z: v for z, v in left.items() if v}
            right = {z: v for z, v in right.items() if v}
            if left != right:
                report.failures.append((
                    pres.format_word((c, b, a)),
                    str(NCPoly._raw(pres, left, None)),
                    str(NCPoly._raw(pres, right, None)),
                ))
    return report


def pbw_count_matches(pres: Presentation, degree: int) -> bool:
    """Normal words of the degree are exactly the nondecreasing words."""
    words = pres.normal_words(degree)
    sorted_only = all(list(w) == sorted(w) for w in words)
    return sorted_only and len(words) == comb(pres.ngens + degree - 1, degree)


# -- the Manin presentation -------------------------------------------------

def _manin_rule(a, b, q):
    """Rewrite for x_b x_a with x_a < x_b in row-major order."""
    (i, j), (k, l) = a, b
    if i == k:  # same row, j < l: x_ij x_il = q x_il x_ij
        return {(a, b): LocScalar(q ** -1)}
    if j == l:  # same column, i < k
        return {(a, b): LocScalar(q ** -1)}
    if j > l:  # i < k, j > l: commute
        return {(a, b): LOC_ONE}
    # i < k, j < l: x_ij x_kl - x_kl x_ij = (q - q^-1) x_kj x_il, and x_kj x_il = x_il x_kj
    return {(a, b): LOC_ONE, ((i, l), (k, j)): LocScalar(-(q - q ** -1))}


def build_manin_presentation(m: int, n: int | None = None, q_conv: str = "standard") -> Presentation:
    """O_q(M_{m x n}) with generators x[i,j] ordered row-major."""
    return _manin_presentation(m, m if n is None else n, q_conv)


@lru_cache(maxsize=None)
def _manin_presentation(m: int, n: int, q_conv: str) -> Presentation:
    if m < 1 or n < 1:
        raise ValueError("quantum matrix algebras need m, n >= 1")
    if q_conv not in ("standard", "inverted"):
        raise ValueError(f"unknown q convention {q_conv!r}")
    q = QINV if q_conv == "inverted" else Q
    keys = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    labels = [f"x[{i},{j}]" for i, j in keys]
    idx = {k: t for t, k in enumerate(keys)}
    rules = {}
    for a, b in itertools.combinations(keys, 2):
        repl = _manin_rule(a, b, q)
        rules[(idx[b], idx[a])] = {(idx[u], idx[v]): c for (u, v), c in repl.items()}
    return Presentation(keys, labels, rules, name=f"O_q(M_{m}x{n})", q_conv=q_conv)


# -- division by elements with a unit leading coefficient -------------------

def multiset_key(w: Word):
    # lex on exponent vectors, largest generator first; Manin corrections decrease it
    return (len(w), tuple(sorted(w, reverse=True)))


def leading_term(p: NCPoly):
    w = max(p.terms, key=multiset_key)
    return w, p.terms[w]


def _multiset_minus(w: Word, d: Word):
    rest = list(w)
    for a in d:
        try:
            rest.remove(a)
        except ValueError:
            return None
    return tuple(sorted(rest))


def divide(p: NCPoly, d: NCPoly, side: str = "right") -> NCPoly:
    """Exact quotient c with c*d == p (side='right') or d*c == p (side='left').

    Valid in presentations whose normal words are the sorted words (PBW in
    generator order); raises NotDivisible when no such c exists.
    """
    pres = p.pres
    if not d:
        raise ZeroDivisionError("division by zero polynomial")
    dw, _ = leading_term(d)
    quo = pres.zero(p.order)
    rem = p
    while rem:
        w, c = leading_term(rem)
        m = _multiset_minus(w, dw)
        if m is None:
            raise NotDivisible(f"{d} does not divide {p}")
        mono = NCPoly(pres, {m: 1}, p.order).normal_form()
        prod = mono * d if side == "right" else d * mono
        lw, lc = leading_term(prod)
        if multiset_key(lw) != multiset_key(w):
            raise NotDivisible(f"leading terms do not line up dividing by {d}")
        coef = c.exact_div(lc)
        quo = quo + mono.scale(coef)
        rem = rem - prod.scale(coef)
    return quo
