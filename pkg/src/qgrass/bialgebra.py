"""The Lie bialgebras gl_n, gl_n^* (and sl_n^*), their enveloping algebras,
and the parabolic pair p, p^perp.

Basis symbols are index pairs (i, j): E_ij for gl_n and the dual basis
E*_ij for gl_n^*. A cobracket value is a dict {(a, b): coefficient} standing
for sum c * a (x) b.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .coeffs import LocScalar
from .ncalg import NCPoly, Presentation

GL = "gl"
GLSTAR = "glstar"


class NotCentral(ValueError):
    """l_n fails to commute with some basis element."""


class LieElt:
    __slots__ = ("kind", "coords")

    def __init__(self, kind: str, coords=None):
        if kind not in (GL, GLSTAR):
            raise ValueError(f"unknown Lie algebra {kind!r}")
        self.kind = kind
        self.coords = {}
        for k, c in (coords or {}).items():
            c = Fraction(c)
            if c:
                self.coords[tuple(k)] = self.coords.get(tuple(k), Fraction(0)) + c
        self.coords = {k: c for k, c in self.coords.items() if c}

    @classmethod
    def basis(cls, kind: str, i: int, j: int) -> "LieElt":
        return cls(kind, {(i, j): 1})

    def __bool__(self):
        return bool(self.coords)

    def _check(self, other):
        if not isinstance(other, LieElt) or other.kind != self.kind:
            raise TypeError("elements of different Lie algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coords)
        for k, c in other.coords.items():
            out[k] = out.get(k, Fraction(0)) + c
        return LieElt(self.kind, out)

    def __neg__(self):
        return LieElt(self.kind, {k: -c for k, c in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return LieElt(self.kind, {k: v * Fraction(c) for k, v in self.coords.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LieElt):
            return NotImplemented
        return self.kind == other.kind and self.coords == other.coords

    def __hash__(self):
        return hash((self.kind, frozenset(self.coords.items())))

    def __str__(self):
        if not self.coords:
            return "0"
        sym = "E" if self.kind == GL else "E*"
        parts = []
        for k in sorted(self.coords):
            c = self.coords[k]
            name = f"{sym}[{k[0]},{k[1]}]"
            parts.append(name if c == 1 else f"-{name}" if c == -1 else f"{c}*{name}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def basis_keys(n: int):
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]


# named generators ---------------------------------------------------------

def E(i, j) -> LieElt:
    return LieElt.basis(GL, i, j)


def Es(i, j) -> LieElt:
    return LieElt.basis(GLSTAR, i, j)


def e(i):
    return E(i, i + 1)


def f(i):
    return E(i + 1, i)


def g(j):
    return E(j, j)


def h(i):
    return g(i) - g(i + 1)


def es(i):
    return Es(i, i + 1)


def fs(i):
    return Es(i + 1, i)


def gs(j):
    return Es(j, j)


def l_n(n: int) -> LieElt:
    return LieElt(GLSTAR, {(k, k): 1 for k in range(1, n + 1)})


# brackets -----------------------------------------------------------------

def _delta(a, b):
    return 1 if a == b else 0


def _glstar_basis_bracket(a, b) -> dict:
    (i, j), (h_, k) = a, b
    first = (i <= j and h_ <= k) or (i > j and h_ > k)
    second = (i == j and h_ > k) or (i > j and h_ == k)
    out: dict = {}
    if first:
        sign = 1
    elif second:
        sign = -1
    else:
        return out
    if _delta(j, h_):
        out[(i, k)] = out.get((i, k), 0) + sign
    if _delta(k, i):
        out[(h_, j)] = out.get((h_, j), 0) - sign
    return out


def _gl_basis_bracket(a, b) -> dict:
    (i, j), (h_, k) = a, b
    out: dict = {}
    if j == h_:
        out[(i, k)] = out.get((i, k), 0) + 1
    if k == i:
        out[(h_, j)] = out.get((h_, j), 0) - 1
    return out


def _bracket(a: LieElt, b: LieElt, table) -> LieElt:
    acc: dict = {}
    for ka, ca in a.coords.items():
        for kb, cb in b.coords.items():
            for k, c in table(ka, kb).items():
                acc[k] = acc.get(k, Fraction(0)) + ca * cb * c
    return LieElt(a.kind, acc)


def gl_bracket(a: LieElt, b: LieElt) -> LieElt:
    """Matrix commutator on gl_n."""
    a._check(b)
    if a.kind != GL:
        raise TypeError("gl_bracket expects gl_n elements")
    return _bracket(a, b, _gl_basis_bracket)


def glstar_bracket(a: LieElt, b: LieElt) -> LieElt:
    """Three-case structure-constant table of gl_n^*."""
    a._check(b)
    if a.kind != GLSTAR:
        raise TypeError("glstar_bracket expects gl_n^* elements")
    return _bracket(a, b, _glstar_basis_bracket)


def dual_glstar_bracket(a: LieElt, b: LieElt, n: int) -> LieElt:
    """[f, g] = sum_c <f (x) g, delta(E_c)> E*_c, the bracket dual to gl_cobracket.

    It coincides with the printed table except on composable root pairs, where
    it is twice the table value (upper block) or minus twice (lower block).
    """
    a._check(b)
    acc: dict = {}
    t = tensor(a, b)
    for c in basis_keys(n):
        v = pairing2(t, gl_cobracket(E(*c)))
        if v:
            acc[c] = v
    return LieElt(GLSTAR, acc)


def bracket(a: LieElt, b: LieElt) -> LieElt:
    return gl_bracket(a, b) if a.kind == GL else glstar_bracket(a, b)


# tensors and cobrackets ---------------------------------------------------

def _tensor_add(acc: dict, key, c):
    v = acc.get(key, Fraction(0)) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def tensor(a: LieElt, b: LieElt) -> dict:
    out: dict = {}
    for ka, ca in a.coords.items():
        for kb, cb in b.coords.items():
            _tensor_add(out, (ka, kb), ca * cb)
    return out


def wedge(a: LieElt, b: LieElt) -> dict:
    out = tensor(a, b)
    for k, c in tensor(b, a).items():
        _tensor_add(out, k, -c)
    return out


def _tensor_sum(*ts, coeffs=None) -> dict:
    out: dict = {}
    for t, c in zip(ts, coeffs or [1] * len(ts)):
        for k, v in t.items():
            _tensor_add(out, k, v * c)
    return out


def adjoint_on_tensor(x: LieElt, t: dict) -> dict:
    """x . (a (x) b) = [x, a] (x) b + a (x) [x, b]."""
    out: dict = {}
    for (ka, kb), c in t.items():
        a = LieElt.basis(x.kind, *ka)
        b = LieElt.basis(x.kind, *kb)
        for k, v in tensor(bracket(x, a), b).items():
            _tensor_add(out, k, c * v)
        for k, v in tensor(a, bracket(x, b)).items():
            _tensor_add(out, k, c * v)
    return out


@lru_cache(maxsize=None)
def _gl_cobracket_basis(i: int, j: int) -> tuple:
    # simple root vectors and the Cartan part are given; the rest follows from
    # the cocycle rule delta([x, y]) = x.delta(y) - y.delta(x)
    if i == j:
        return ()
    if j == i + 1:
        return tuple(wedge(h(i), e(i)).items())
    if i == j + 1:
        return tuple(wedge(h(j), f(j)).items())
    if i < j:
        x, y = E(i, j - 1), E(j - 1, j)
    else:
        x, y = E(i, i - 1), E(i - 1, j)
    dx = dict(_gl_cobracket_basis(*next(iter(x.coords))))
    dy = dict(_gl_cobracket_basis(*next(iter(y.coords))))
    t = _tensor_sum(adjoint_on_tensor(x, dy), adjoint_on_tensor(y, dx), coeffs=[1, -1])
    return tuple(t.items())


def gl_cobracket(x: LieElt) -> dict:
    if x.kind != GL:
        raise TypeError("gl_cobracket expects gl_n elements")
    out: dict = {}
    for k, c in x.coords.items():
        for key, v in _gl_cobracket_basis(*k):
            _tensor_add(out, key, c * v)
    return out


def glstar_cobracket(x: LieElt) -> dict:
    """delta(E*_ij) = sum_k E*_ik ^ E*_kj."""
    if x.kind != GLSTAR:
        raise TypeError("glstar_cobracket expects gl_n^* elements")
    n = max(max(k) for k in x.coords) if x.coords else 0
    return glstar_cobracket_n(x, n)


def glstar_cobracket_n(x: LieElt, n: int) -> dict:
    out: dict = {}
    for (i, j), c in x.coords.items():
        for k in range(1, n + 1):
            for key, v in wedge(Es(i, k), Es(k, j)).items():
                _tensor_add(out, key, c * v)
    return out


def cobracket(x: LieElt, n: int) -> dict:
    return gl_cobracket(x) if x.kind == GL else glstar_cobracket_n(x, n)


# pairing and duality ------------------------------------------------------

def pairing(f_: LieElt, x: LieElt) -> Fraction:
    """<E*_ij, E_kl> = delta_ik delta_jl."""
    if f_.kind != GLSTAR or x.kind != GL:
        raise TypeError("pairing is gl_n^* x gl_n")
    return sum((c * x.coords.get(k, 0) for k, c in f_.coords.items()), Fraction(0))


def pairing2(t_star: dict, t: dict) -> Fraction:
    return sum((c * t.get(k, 0) for k, c in t_star.items()), Fraction(0))


@dataclass
class DualityReport:
    n: int
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def pairing_duality_check(n: int, bracket_fn=None) -> DualityReport:
    """<[f,g]*, x> = <f (x) g, delta(x)> and <delta*(f), x (x) y> = <f, [x,y]>.

    bracket_fn defaults to the printed structure constants (glstar_bracket).
    """
    bracket_fn = bracket_fn or glstar_bracket
    rep = DualityReport(n)
    keys = basis_keys(n)
    for a, b, c in itertools.product(keys, repeat=3):
        fa, fb, xc = Es(*a), Es(*b), E(*c)
        lhs = pairing(bracket_fn(fa, fb), xc)
        rhs = pairing2(tensor(fa, fb), gl_cobracket(xc))
        rep.checked += 1
        if lhs != rhs:
            rep.violations.append(("bracket-vs-cobracket", a, b, c, str(lhs), str(rhs)))
        fc, xa, xb = Es(*c), E(*a), E(*b)
        lhs = pairing2(glstar_cobracket_n(fc, n), tensor(xa, xb))
        rhs = pairing(fc, gl_bracket(xa, xb))
        rep.checked += 1
        if lhs != rhs:
            rep.violations.append(("cobracket-vs-bracket", c, a, b, str(lhs), str(rhs)))
    return rep


# identities ---------------------------------------------------------------

def jacobi_violations(kind: str, n: int, bracket_fn=None) -> list:
    bracket_fn = bracket_fn or bracket
    keys = basis_keys(n)
    bad = []
    for a, b, c in itertools.combinations_with_replacement(keys, 3):
        x, y, z = (LieElt.basis(kind, *k) for k in (a, b, c))
        s = bracket_fn(x, bracket_fn(y, z)) + bracket_fn(y, bracket_fn(z, x)) + bracket_fn(z, bracket_fn(x, y))
        if s:
            bad.append((a, b, c))
    return bad


def antisymmetry_violations(kind: str, n: int) -> list:
    keys = basis_keys(n)
    return [
        (a, b)
        for a, b in itertools.product(keys, repeat=2)
        if bracket(LieElt.basis(kind, *a), LieElt.basis(kind, *b)) + bracket(LieElt.basis(kind, *b), LieElt.basis(kind, *a))
    ]


def _apply_first(t: dict, fn) -> dict:
    """(fn (x) id) on a 2-tensor, fn returning a 2-tensor: result on 3-tensors."""
    out: dict = {}
    for (ka, kb), c in t.items():
        for (k1, k2), v in fn(ka).items():
            _tensor_add(out, (k1, k2, kb), c * v)
    return out


def co_jacobi_violations(kind: str, n: int, cobracket_fn=None, keys=None) -> list:
    """(1 + s + s^2)(delta (x) id) delta = 0 with s the cyclic shift."""
    if cobracket_fn is None:
        cobracket_fn = lambda x: cobracket(x, n)
    keys = keys if keys is not None else basis_keys(n)
    bad = []
    for k in keys:
        x = LieElt.basis(kind, *k)
        t = _apply_first(cobracket_fn(x), lambda key: cobracket_fn(LieElt.basis(kind, *key)))
        total: dict = {}
        for (a, b, c), v in t.items():
            _tensor_add(total, (a, b, c), v)
            _tensor_add(total, (c, a, b), v)
            _tensor_add(total, (b, c, a), v)
        if total:
            bad.append(k)
    return bad


def cobracket_antisymmetry_violations(kind: str, n: int) -> list:
    bad = []
    for k in basis_keys(n):
        t = cobracket(LieElt.basis(kind, *k), n)
        if any(t.get((b, a), 0) != -c for (a, b), c in t.items()):
            bad.append(k)
    return bad


def cocycle_violations(n: int) -> list:
    """delta([x, y]) = x.delta(y) - y.delta(x) on gl_n."""
    keys = basis_keys(n)
    bad = []
    for a, b in itertools.product(keys, repeat=2):
        x, y = E(*a), E(*b)
        lhs = gl_cobracket(gl_bracket(x, y))
        rhs = _tensor_sum(adjoint_on_tensor(x, gl_cobracket(y)), adjoint_on_tensor(y, gl_cobracket(x)), coeffs=[1, -1])
        if lhs != rhs:
            bad.append((a, b))
    return bad


# the double ---------------------------------------------------------------

def _unit_matrix(n, i, j):
    m = np.full((n, n), Fraction(0), dtype=object)
    m[i - 1, j - 1] = Fraction(1)
    return m


def realize_in_double(a: LieElt, n: int):
    """E*_ij -> (E_ij, 0) if i > j, (-E_ii, E_ii) if i = j, (0, E_ij) if i < j."""
    if a.kind != GLSTAR:
        raise TypeError("only gl_n^* elements are realized in the double")
    left = np.full((n, n), Fraction(0), dtype=object)
    right = np.full((n, n), Fraction(0), dtype=object)
    for (i, j), c in a.coords.items():
        u = _unit_matrix(n, i, j) * c
        if i > j:
            left = left + u
        elif i == j:
            left = left - u
            right = right + u
        else:
            right = right + u
    return left, right


def double_bracket(x, y):
    (a1, b1), (a2, b2) = x, y
    return a1.dot(a2) - a2.dot(a1), b1.dot(b2) - b2.dot(b1)


def double_homomorphism_violations(n: int) -> list:
    keys = basis_keys(n)
    bad = []
    for a, b in itertools.product(keys, repeat=2):
        x, y = Es(*a), Es(*b)
        lhs = realize_in_double(glstar_bracket(x, y), n)
        rhs = double_bracket(realize_in_double(x, n), realize_in_double(y, n))
        if not (np.array_equal(lhs[0], rhs[0]) and np.array_equal(lhs[1], rhs[1])):
            bad.append((a, b))
    return bad


# enveloping algebras ------------------------------------------------------

@lru_cache(maxsize=None)
def uea_presentation(kind: str, n: int) -> Presentation:
    """U(gl_n) or U(gl_n^*): PBW on row-major E_ij with b a -> a b + [b, a]."""
    keys = basis_keys(n)
    idx = {k: t for t, k in enumerate(keys)}
    sym = "E" if kind == GL else "E*"
    labels = [f"{sym}[{i},{j}]" for i, j in keys]
    rules = {}
    for a, b in itertools.combinations(keys, 2):
        br = bracket(LieElt.basis(kind, *b), LieElt.basis(kind, *a))
        repl = {(idx[a], idx[b]): LocScalar(1)}
        for k, c in br.coords.items():
            repl[(idx[k],)] = LocScalar(c)
        rules[(idx[b], idx[a])] = repl
    name = f"U(gl_{n})" if kind == GL else f"U(gl_{n}^*)"
    return Presentation(keys, labels, rules, name=name)


def uea_element(kind: str, n: int, words) -> NCPoly:
    """Linear combination {tuple of basis keys: coefficient} as an element of U."""
    pres = uea_presentation(kind, n)
    terms = {tuple(pres.idx[k] for k in w): LocScalar(Fraction(c)) for w, c in words.items()}
    return NCPoly(pres, terms)


def uea_from_lie(a: LieElt, n: int) -> NCPoly:
    return uea_element(a.kind, n, {(k,): c for k, c in a.coords.items()})


def uea_normal_form(p: NCPoly) -> NCPoly:
    return p.normal_form()


# sl_n^* -------------------------------------------------------------------

@dataclass
class SlStarQuotient:
    """gl_n^* / (l_n): E*_nn is eliminated via E*_nn = -(E*_11 + ... + E*_{n-1,n-1})."""

    n: int

    @property
    def basis(self):
        return [k for k in basis_keys(self.n) if k != (self.n, self.n)]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def reduce(self, a: LieElt) -> LieElt:
        c = a.coords.get((self.n, self.n))
        if not c:
            return a
        coords = dict(a.coords)
        del coords[(self.n, self.n)]
        out = LieElt(GLSTAR, coords)
        return out + LieElt(GLSTAR, {(k, k): -c for k in range(1, self.n)})

    def reduce_tensor(self, t: dict) -> dict:
        out: dict = {}
        for (ka, kb), c in t.items():
            for k, v in tensor(self.reduce(Es(*ka)), self.reduce(Es(*kb))).items():
                _tensor_add(out, k, c * v)
        return out

    def bracket(self, a: LieElt, b: LieElt) -> LieElt:
        return self.reduce(glstar_bracket(a, b))

    def cobracket(self, a: LieElt) -> dict:
        return self.reduce_tensor(glstar_cobracket_n(a, self.n))

    def jacobi_violations(self) -> list:
        return [v for v in jacobi_violations(GLSTAR, self.n, self.bracket) if (self.n, self.n) not in v]

    def co_jacobi_violations(self) -> list:
        return co_jacobi_violations(GLSTAR, self.n, self.cobracket, self.basis)


def sl_star_quotient(n: int) -> SlStarQuotient:
    ln = l_n(n)
    for k in basis_keys(n):
        if glstar_bracket(ln, Es(*k)):
            raise NotCentral(f"[l_n, E*{k}] != 0")
    if glstar_cobracket_n(ln, n):
        raise NotCentral("delta(l_n) != 0, the centre is not a coideal")
    return SlStarQuotient(n)


# parabolic data -----------------------------------------------------------

@dataclass
class ParabolicData:
    n: int
    r: int

    def __post_init__(self):
        if not 1 <= self.r < self.n:
            raise ValueError("need 1 <= r < n")

    @property
    def p_basis(self):
        return [(i, j) for i, j in basis_keys(self.n) if not (i > self.r >= j)]

    @property
    def p_perp_basis(self):
        return [(i, j) for i, j in basis_keys(self.n) if i > self.r >= j]

    def annihilates(self) -> bool:
        return all(pairing(Es(*a), E(*b)) == 0 for a in self.p_perp_basis for b in self.p_basis)

    def p_is_subalgebra(self) -> bool:
        span = set(self.p_basis)
        return all(
            set(gl_bracket(E(*a), E(*b)).coords) <= span for a in self.p_basis for b in self.p_basis
        )

    def p_perp_is_abelian(self) -> bool:
        return all(not glstar_bracket(Es(*a), Es(*b)) for a in self.p_perp_basis for b in self.p_perp_basis)
