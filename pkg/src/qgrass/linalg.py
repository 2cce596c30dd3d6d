"""Exact linear algebra on sparse row vectors.

Rows are dicts {column key: scalar}. Ranks over Q(q) use fraction-free
Bareiss elimination in Q[q, q^-1]; ranks at q = 1 use Fraction pivoting.
Pivots are the first nonzero entry, so results are deterministic.
"""

from __future__ import annotations

from fractions import Fraction

from .coeffs import LaurentScalar, LocScalar, QSeries


def _column_order(rows):
    cols = set()
    for r in rows:
        cols.update(r)
    return sorted(cols, key=repr)


def _clear_denominators(row: dict) -> dict:
    out = {}
    kmax = 0
    for c in row.values():
        if isinstance(c, LocScalar):
            kmax = max(kmax, c.k)
    for key, c in row.items():
        if isinstance(c, LocScalar):
            v = c.times_qminus1(kmax).num
        elif isinstance(c, QSeries):
            v = c.to_laurent()
        else:
            v = LaurentScalar.coerce(c)
        if v:
            out[key] = v
    return out


def rank_over_fraction_field(rows) -> int:
    """Rank over Q(q) of rows with LocScalar/LaurentScalar entries."""
    work = [_clear_denominators(r) for r in rows]
    work = [r for r in work if r]
    cols = _column_order(work)
    prev = LaurentScalar.coerce(1)
    rank = 0
    for col in cols:
        piv = next((t for t in range(rank, len(work)) if col in work[t]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        p = prow[col]
        for t in range(rank + 1, len(work)):
            row = work[t]
            a = row.get(col)
            new = {}
            keys = set(row) | set(prow)
            for key in keys:
                v = row.get(key, LaurentScalar()) * p
                if a is not None and key in prow:
                    v = v - a * prow[key]
                if v:
                    new[key] = v.exact_div(prev)
            new.pop(col, None)
            work[t] = new
        prev = p
        rank += 1
        work = work[:rank] + [r for r in work[rank:] if r]
        if rank == len(work):
            break
    return rank


def _to_fraction(c) -> Fraction:
    if isinstance(c, (LocScalar, LaurentScalar, QSeries)):
        return c.eval_at_one()
    return Fraction(c)


def echelon_rational(rows):
    """Row-reduce over Q; returns (pivot rows, pivot columns)."""
    basis: list[dict] = []
    pivots: list = []
    for r in rows:
        v = {k: _to_fraction(c) for k, c in r.items()}
        v = {k: c for k, c in v.items() if c}
        v = _reduce(v, basis, pivots)
        if v:
            col = min(v, key=repr)
            inv = 1 / v[col]
            v = {k: c * inv for k, c in v.items()}
            basis.append(v)
            pivots.append(col)
    return basis, pivots


def _reduce(v: dict, basis, pivots) -> dict:
    v = dict(v)
    for b, col in zip(basis, pivots):
        a = v.get(col)
        if a:
            for k, c in b.items():
                s = v.get(k, Fraction(0)) - a * c
                if s:
                    v[k] = s
                else:
                    v.pop(k, None)
    return v


def rank_at_one(rows) -> int:
    return len(echelon_rational(rows)[0])


def _dot(u: dict, v: dict) -> Fraction:
    if len(u) > len(v):
        u, v = v, u
    return sum((c * v[k] for k, c in u.items() if k in v), Fraction(0))


def solve_rational(a, b) -> list[Fraction]:
    """Solve the square system a x = b over Q (a nonsingular)."""
    n = len(a)
    m = [list(map(Fraction, row)) + [Fraction(b[i])] for i, row in enumerate(a)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c])
        m[c], m[p] = m[p], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[r][n] for r in range(n)]


class Projector:
    """Orthogonal projection onto the span of rational vectors.

    The span is first reduced to an independent subset, then each projection
    solves the Gram system exactly.
    """

    def __init__(self, vectors):
        self.vectors: list[dict] = []
        basis: list[dict] = []
        pivots: list = []
        self.indices: list[int] = []
        for t, v in enumerate(vectors):
            v = {k: _to_fraction(c) for k, c in v.items()}
            v = {k: c for k, c in v.items() if c}
            red = _reduce(v, basis, pivots)
            if red:
                col = min(red, key=repr)
                inv = 1 / red[col]
                basis.append({k: c * inv for k, c in red.items()})
                pivots.append(col)
                self.vectors.append(v)
                self.indices.append(t)
        self.gram = [[_dot(u, v) for v in self.vectors] for u in self.vectors]

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def project(self, target: dict):
        """(coefficients on the independent subset, residual dict, |residual|^2)."""
        target = {k: _to_fraction(c) for k, c in target.items()}
        target = {k: c for k, c in target.items() if c}
        if not self.vectors:
            return [], target, _dot(target, target)
        rhs = [_dot(v, target) for v in self.vectors]
        coeffs = solve_rational(self.gram, rhs)
        resid = dict(target)
        for c, v in zip(coeffs, self.vectors):
            if c:
                for k, x in v.items():
                    s = resid.get(k, Fraction(0)) - c * x
                    if s:
                        resid[k] = s
                    else:
                        resid.pop(k, None)
        return coeffs, resid, _dot(resid, resid)
