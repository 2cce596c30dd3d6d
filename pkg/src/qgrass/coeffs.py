"""Exact scalars: Laurent polynomials in q over Q, their localization at (q-1),
and truncated (q-1)-adic expansions.

Nothing in here ever touches a float.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational


class NotDivisible(ArithmeticError):
    """Raised when an exact division has a nonzero remainder."""


class NegativeValuation(ArithmeticError):
    """Raised when a scalar with a pole at q = 1 is evaluated or expanded."""


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class LaurentScalar:
    """Element of Q[q, q^-1], stored sparsely as {exponent: coefficient}."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in dict(terms).items():
                c = _frac(c)
                if c:
                    clean[int(e)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentScalar":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "LaurentScalar":
        c = _frac(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def q(cls, e: int = 1, c=1) -> "LaurentScalar":
        return cls._raw({e: _frac(c)} if c else {})

    @classmethod
    def coerce(cls, x) -> "LaurentScalar":
        if isinstance(x, LaurentScalar):
            return x
        return cls.const(x)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_exp(self) -> int:
        return min(self._terms)

    def max_exp(self) -> int:
        return max(self._terms)

    def constant(self) -> Fraction:
        return self._terms.get(0, Fraction(0))

    def eval_at_one(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))

    def substitute_inverse(self) -> "LaurentScalar":
        """q -> q^-1."""
        return LaurentScalar._raw({-e: c for e, c in self._terms.items()})

    def valuation(self) -> int:
        """Multiplicity of (q-1) as a factor; zero has infinite valuation (returns a large int)."""
        if not self._terms:
            return 1 << 30
        v = 0
        s = self
        while True:
            quo, rem = s._divmod_qminus1()
            if rem:
                return v
            s = quo
            v += 1

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentScalar):
            if isinstance(other, (int, Rational)):
                other = LaurentScalar.const(other)
            else:
                return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return LaurentScalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentScalar):
            if isinstance(other, (int, Rational)):
                other = LaurentScalar.const(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentScalar):
            if isinstance(other, (int, Rational)):
                c = _frac(other)
                if not c:
                    return LaurentScalar._raw({})
                return LaurentScalar._raw({e: v * c for e, v in self._terms.items()})
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentScalar._raw({})
        if len(b) == 1:
            (eb, cb), = b.items()
            return LaurentScalar._raw({e + eb: c * cb for e, c in a.items()})
        if len(a) == 1:
            (ea, ca), = a.items()
            return LaurentScalar._raw({e + ea: c * ca for e, c in b.items()})
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                out[e] = out.get(e, 0) + ca * cb
        return LaurentScalar._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise NotDivisible(f"{self} is not a unit in Q[q, q^-1]")
            (e, c), = self._terms.items()
            return LaurentScalar._raw({-e * (-k): Fraction(1) / c ** (-k)})
        out = LaurentScalar.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentScalar):
            return self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self._terms == ({0: _frac(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- division -----------------------------------------------------------

    def _divmod_qminus1(self):
        # synthetic division of q^m * P(q) by (q - 1); exponents stay Laurent
        if not self._terms:
            return self, Fraction(0)
        lo, hi = self.min_exp(), self.max_exp()
        quo = {}
        carry = Fraction(0)
        for e in range(hi, lo - 1, -1):
            carry += self._terms.get(e, 0)
            if e > lo:
                if carry:
                    quo[e - 1] = carry
        # carry now equals P(1)
        return LaurentScalar._raw(quo), carry

    def divide_qminus1(self, k: int = 1) -> "LaurentScalar":
        s = self
        for _ in range(k):
            quo, rem = s._divmod_qminus1()
            if rem:
                raise NotDivisible(f"(q-1)^{k} does not divide {self}")
            s = quo
        return s

    def exact_div(self, other: "LaurentScalar") -> "LaurentScalar":
        """Exact quotient in Q[q, q^-1]; raises NotDivisible otherwise."""
        other = LaurentScalar.coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self:
            return self
        if other.is_monomial():
            (e, c), = other._terms.items()
            return LaurentScalar._raw({k - e: v / c for k, v in self._terms.items()})
        # shift both to genuine polynomials, then long division
        sa, sb = self.min_exp(), other.min_exp()
        num = [self._terms.get(sa + i, Fraction(0)) for i in range(self.max_exp() - sa + 1)]
        den = [other._terms.get(sb + i, Fraction(0)) for i in range(other.max_exp() - sb + 1)]
        if len(num) < len(den):
            raise NotDivisible(f"{other} does not divide {self}")
        lead = den[-1]
        quo = [Fraction(0)] * (len(num) - len(den) + 1)
        for i in range(len(quo) - 1, -1, -1):
            c = num[i + len(den) - 1] / lead
            quo[i] = c
            if c:
                for j, d in enumerate(den):
                    num[i + j] -= c * d
        if any(num):
            raise NotDivisible(f"{other} does not divide {self}")
        return LaurentScalar._raw({i + sa - sb: c for i, c in enumerate(quo) if c})

    # -- printing -----------------------------------------------------------

    def __str__(self):
        return format_laurent(self)

    def __repr__(self):
        return f"LaurentScalar({format_laurent(self)!r})"


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_laurent(s: LaurentScalar) -> str:
    if not s:
        return "0"
    parts = []
    for e, c in sorted(s._terms.items(), reverse=True):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if e == 0:
            body = _fmt_coeff(a)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if a == 1 else f"{_fmt_coeff(a)}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


ZERO = LaurentScalar()
ONE = LaurentScalar.const(1)
Q = LaurentScalar.q(1)
QINV = LaurentScalar.q(-1)
QM1 = LaurentScalar({1: 1, 0: -1})


def laurent_eval_at_one(s: LaurentScalar) -> Fraction:
    return s.eval_at_one()


def divide_exact_by_qminus1(s: LaurentScalar, k: int = 1) -> LaurentScalar:
    return LaurentScalar.coerce(s).divide_qminus1(k)


class LocScalar:
    """numerator / (q-1)^k with numerator in Q[q, q^-1].

    Canonical: when k > 0 the numerator is not divisible by (q-1).
    """

    __slots__ = ("num", "k", "_hash")

    def __init__(self, num=0, k: int = 0):
        num = LaurentScalar.coerce(num)
        if k < 0:
            num = num * QM1 ** (-k)
            k = 0
        while k > 0 and num and not num.eval_at_one():
            num = num.divide_qminus1(1)
            k -= 1
        if not num:
            k = 0
        self.num = num
        self.k = k
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentScalar, k: int) -> "LocScalar":
        obj = cls.__new__(cls)
        obj.num = num
        obj.k = k
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, x) -> "LocScalar":
        if isinstance(x, LocScalar):
            return x
        return cls._raw(LaurentScalar.coerce(x), 0)

    @property
    def denom_power(self) -> int:
        return self.k

    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_laurent(self) -> bool:
        return self.k == 0

    def valuation(self) -> int:
        if not self.num:
            return 1 << 30
        return self.num.valuation() - self.k

    def eval_at_one(self) -> Fraction:
        if self.k:
            raise NegativeValuation(f"{self} has a pole at q = 1")
        return self.num.eval_at_one()

    def substitute_inverse(self) -> "LocScalar":
        # (q^-1 - 1) = -q^-1 (q - 1)
        num = self.num.substitute_inverse()
        if self.k:
            num = num * LaurentScalar.q(self.k, (-1) ** self.k)
        return LocScalar(num, self.k)

    def __add__(self, other):
        if not isinstance(other, LocScalar):
            if isinstance(other, (int, Rational, LaurentScalar)):
                other = LocScalar.coerce(other)
            else:
                return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.k == other.k == 0:
            return LocScalar._raw(self.num + other.num, 0)
        k = max(self.k, other.k)
        a = self.num if self.k == k else self.num * QM1 ** (k - self.k)
        b = other.num if other.k == k else other.num * QM1 ** (k - other.k)
        return LocScalar(a + b, k)

    __radd__ = __add__

    def __neg__(self):
        return LocScalar._raw(-self.num, self.k)

    def __sub__(self, other):
        if not isinstance(other, LocScalar):
            if isinstance(other, (int, Rational, LaurentScalar)):
                other = LocScalar.coerce(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LocScalar):
            if isinstance(other, (int, Rational, LaurentScalar)):
                other = LocScalar.coerce(other)
            else:
                return NotImplemented
        num = self.num * other.num
        k = self.k + other.k
        if not num:
            return LocScalar._raw(num, 0)
        if k == 0:
            return LocScalar._raw(num, 0)
        return LocScalar(num, k)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = LocScalar._raw(ONE, 0)
        for _ in range(e):
            out = out * self
        return out

    def inverse(self) -> "LocScalar":
        """Inverse, defined when the numerator is c q^s (q-1)^j."""
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        j = self.num.valuation()
        unit = self.num.divide_qminus1(j)
        if not unit.is_monomial():
            raise NotDivisible(f"{self} is not invertible: only (q-1) is inverted")
        inv = unit ** -1
        return LocScalar(inv, j - self.k)

    def exact_div(self, other) -> "LocScalar":
        other = LocScalar.coerce(other)
        if not other.num:
            raise ZeroDivisionError("division by zero")
        j = other.num.valuation()
        unit = other.num.divide_qminus1(j)
        num = self.num.exact_div(unit)
        return LocScalar(num, self.k + j - other.k)

    def divide_qminus1(self, k: int = 1) -> "LocScalar":
        return LocScalar(self.num, self.k + k)

    def times_qminus1(self, k: int = 1) -> "LocScalar":
        return LocScalar(self.num, self.k - k)

    def __eq__(self, other):
        if isinstance(other, LocScalar):
            return self.k == other.k and self.num == other.num
        if isinstance(other, (int, Rational, LaurentScalar)):
            return self.k == 0 and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.k))
        return self._hash

    def __str__(self):
        if self.k == 0:
            return str(self.num)
        return f"({self.num})/(q-1)^{self.k}"

    def __repr__(self):
        return f"LocScalar({str(self)!r})"


LOC_ZERO = LocScalar()
LOC_ONE = LocScalar(1)


def loc_eval_at_one(s: LocScalar) -> Fraction:
    return LocScalar.coerce(s).eval_at_one()


@lru_cache(maxsize=None)
def _binom(e: int, j: int) -> Fraction:
    # generalized binomial C(e, j), valid for negative e
    out = Fraction(1)
    for i in range(j):
        out = out * (e - i) / (i + 1)
    return out


class QSeries:
    """sum_k c_k (q-1)^k modulo (q-1)^order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(_frac(c) for c in coeffs)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "QSeries":
        obj = cls.__new__(cls)
        obj.coeffs = coeffs
        return obj

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls._raw((Fraction(0),) * order)

    @classmethod
    def const(cls, c, order: int) -> "QSeries":
        if order == 0:
            return cls._raw(())
        return cls._raw((_frac(c),) + (Fraction(0),) * (order - 1))

    @classmethod
    def from_scalar(cls, s, order: int) -> "QSeries":
        return _expand_cached(LocScalar.coerce(s), order)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return self.order

    def eval_at_one(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError("cannot raise the order of a truncated series")
        return QSeries._raw(self.coeffs[:order])

    def divide_qminus1(self, k: int = 1) -> "QSeries":
        if any(self.coeffs[:k]):
            raise NotDivisible(f"(q-1)^{k} does not divide {self}")
        return QSeries._raw(self.coeffs[k:])

    def times_qminus1(self, k: int = 1) -> "QSeries":
        n = self.order
        return QSeries._raw(((Fraction(0),) * k + self.coeffs)[:n])

    def to_laurent(self) -> LaurentScalar:
        out = ZERO
        p = ONE
        for c in self.coeffs:
            if c:
                out = out + p * c
            p = p * QM1
        return out

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        return QSeries._raw(tuple(a[i] + b[i] for i in range(n)))

    def __neg__(self):
        return QSeries._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            c = _frac(other)
            return QSeries._raw(tuple(v * c for v in self.coeffs))
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * n
        for i in range(n):
            ai = a[i]
            if ai:
                for j in range(n - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return QSeries._raw(tuple(out))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, QSeries):
            n = min(self.order, other.order)
            return self.coeffs[:n] == other.coeffs[:n]
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if not any(self.coeffs):
            return f"O((q-1)^{self.order})"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                parts.append(_fmt_coeff(c) if k == 0 else f"{_fmt_coeff(c)}*(q-1)^{k}")
        return " + ".join(parts) + f" + O((q-1)^{self.order})"

    def __repr__(self):
        return f"QSeries({self.coeffs!r})"


@lru_cache(maxsize=200_000)
def _expand_cached(s: LocScalar, order: int) -> QSeries:
    if s.valuation() < 0:
        raise NegativeValuation(f"{s} has a pole at q = 1")
    width = order + s.k
    acc = [Fraction(0)] * width
    for e, c in s.num._terms.items():
        for j in range(width):
            b = _binom(e, j)
            if b:
                acc[j] += c * b
    assert not any(acc[: s.k]), "canonical LocScalar lost its valuation"
    return QSeries._raw(tuple(acc[s.k:]))


def expand_qseries(s, order: int) -> QSeries:
    return QSeries.from_scalar(s, order)
