"""Text syntax for scalars and noncommutative polynomials.

Grammar (whitespace-insensitive):

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := NUMBER | "q" | NAME "[" INT "," INT "]" | "(" expr ")"

Division is only by scalars that are c q^s (q-1)^j times a unit of Q[q, q^-1].
The printer in ncalg produces text this parser reads back. Products are
concatenated as written; parse_expression(..., normalize=True) rewrites.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .coeffs import LocScalar, NotDivisible, Q
from .ncalg import NCPoly, Presentation, build_manin_presentation


class ParseError(SyntaxError):
    """Malformed expression; .offset is the 0-based character position."""

    def __init__(self, msg: str, src: str, pos: int):
        super().__init__(f"{msg} at position {pos}: {src!r}")
        self.src = src
        self.pos = pos


class UnknownGenerator(KeyError):
    pass


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<gen>[A-Za-z_]+\*?\s*\[\s*\d+\s*,\s*\d+\s*\])
  | (?P<num>\d+)
  | (?P<q>q)
  | (?P<op>[-+*/^()])
""", re.VERBOSE)


def _tokenize(src: str):
    pos = 0
    out = []
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", src, pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(src)))
    return out


class _Parser:
    def __init__(self, src: str, pres: Presentation):
        self.src = src
        self.pres = pres
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}", self.src, tok[2])
        self.i += 1
        return tok

    def fail(self, msg):
        raise ParseError(msg, self.src, self.peek()[2])

    def parse(self):
        v = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            w = self.term()
            v = _add(v, w) if op == "+" else _add(v, _neg(w))
        return v

    def term(self):
        v = self.unary()
        while self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            w = self.unary()
            if op == "*":
                v = _mul(v, w)
            else:
                if isinstance(w, NCPoly):
                    raise ParseError("division by a polynomial", self.src, pos)
                try:
                    v = v.exact_div(w) if isinstance(v, LocScalar) else v.scale(LocScalar(1).exact_div(w))
                except (NotDivisible, ZeroDivisionError) as exc:
                    raise ParseError(f"cannot divide: {exc}", self.src, pos) from None
        return v

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return _neg(self.unary())
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] != "^":
            return base
        _, _, pos = self.take()
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        kind, text, p = self.take()
        if kind != "num":
            raise ParseError("expected an integer exponent", self.src, p)
        e = sign * int(text)
        if isinstance(base, NCPoly):
            if e < 0:
                raise ParseError("negative power of a polynomial", self.src, pos)
            out = self.pres.one()
            for _ in range(e):
                out = _mul(out, base)
            return out
        try:
            return base ** e
        except (NotDivisible, ZeroDivisionError) as exc:
            raise ParseError(f"cannot invert: {exc}", self.src, pos) from None

    def atom(self):
        kind, text, pos = self.take()
        if kind == "num":
            return LocScalar(Fraction(int(text)))
        if kind == "q":
            return LocScalar(Q)
        if kind == "gen":
            label = re.sub(r"\s+", "", text)
            if label not in self._labels():
                raise UnknownGenerator(f"{label} is not a generator of {self.pres.name}")
            return self.pres.gen(self.pres.keys[self._labels()[label]])
        if text == "(":
            v = self.expr()
            self.take(")")
            return v
        raise ParseError(f"unexpected {text or 'end of input'!r}", self.src, pos)

    def _labels(self):
        cache = getattr(self, "_lab", None)
        if cache is None:
            cache = self._lab = {lab: t for t, lab in enumerate(self.pres.labels)}
        return cache


def _neg(v):
    return -v


def _add(a, b):
    if isinstance(a, NCPoly):
        return a + b
    if isinstance(b, NCPoly):
        return b + a
    return a + b


def _free_mul(a: NCPoly, b: NCPoly) -> NCPoly:
    # concatenation only; normal forms are taken at the end on request
    acc: dict = {}
    for w1, c1 in a.terms.items():
        for w2, c2 in b.terms.items():
            w = w1 + w2
            acc[w] = acc[w] + c1 * c2 if w in acc else c1 * c2
    return NCPoly._raw(a.pres, {w: c for w, c in acc.items() if c}, None)


def _mul(a, b):
    if isinstance(a, NCPoly) and isinstance(b, NCPoly):
        return _free_mul(a, b)
    if isinstance(a, NCPoly):
        return a.scale(b)
    if isinstance(b, NCPoly):
        return b.scale(a)
    return a * b


def parse_scalar(src: str) -> LocScalar:
    v = _Parser(src, build_manin_presentation(1)).parse()
    if isinstance(v, NCPoly):
        raise ParseError("expected a scalar", src, 0)
    return v


def parse_expression(src: str, pres: Presentation | None = None, n: int = 2,
                     q_conv: str = "standard", normalize: bool = False) -> NCPoly:
    """Parse over pres (default O_q(M_n)).

    Products are kept as written (free-algebra words) unless normalize is set.
    """
    if pres is None:
        pres = build_manin_presentation(n, n, q_conv)
    v = _Parser(src, pres).parse()
    if not isinstance(v, NCPoly):
        v = pres.scalar(v)
    return v.normal_form() if normalize else v
