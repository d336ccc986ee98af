"""Exact linear algebra over the rationals.

Vectors are plain lists of ``Fraction``.  Matrices are lists of rows.  Sizes
in this package are small (rarely more than a few hundred columns) so dense
rows with sparse pivot bookkeeping are good enough.
"""
from __future__ import annotations

from fractions import Fraction

__all__ = [
    "to_fraction_rows",
    "rref",
    "rank",
    "nullspace",
    "EchelonSpan",
    "mat_mul",
    "transpose",
    "is_zero_matrix",
]


def to_fraction_rows(rows):
    return [[x if isinstance(x, Fraction) else Fraction(x) for x in r] for r in rows]


def rref(rows, ncols=None):
    """Reduced row echelon form.  Returns ``(reduced_rows, pivot_columns)``."""
    m = to_fraction_rows(rows)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r >= nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        row = [x * inv for x in m[r]]
        m[r] = row
        nz = [k for k in range(c, ncols) if row[k]]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    mi = m[i]
                    for k in nz:
                        mi[k] -= f * row[k]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows, ncols=None):
    if not rows:
        return 0
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols):
    """Basis of ``{x : A x = 0}`` for ``A`` given by ``rows`` with ``ncols`` columns."""
    if not rows:
        basis = []
        for j in range(ncols):
            v = [Fraction(0)] * ncols
            v[j] = Fraction(1)
            basis.append(v)
        return basis
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


class EchelonSpan:
    """Incrementally maintained span of vectors of a fixed length.

    ``add`` reports whether the vector enlarged the span.  ``coordinates``
    expresses a vector in terms of the vectors added so far.
    """

    def __init__(self, length):
        self.length = length
        self._rows = []  # (pivot, reduced row, combination of inputs)
        self.count = 0

    def _reduce(self, v):
        v = list(v)
        comb = {}
        for piv, row, rc in self._rows:
            f = v[piv]
            if f:
                for k in range(piv, self.length):
                    if row[k]:
                        v[k] -= f * row[k]
                for key, val in rc.items():
                    comb[key] = comb.get(key, 0) - f * val
        return v, comb

    def contains(self, v):
        red, _ = self._reduce(v)
        return not any(red)

    def add(self, v):
        v = [x if isinstance(x, Fraction) else Fraction(x) for x in v]
        red, comb = self._reduce(v)
        idx = self.count
        self.count += 1
        piv = next((k for k, x in enumerate(red) if x), None)
        if piv is None:
            return False
        inv = 1 / red[piv]
        red = [x * inv for x in red]
        comb = {k: val * inv for k, val in comb.items() if val}
        comb[idx] = comb.get(idx, 0) + inv
        self._rows.append((piv, red, comb))
        self._rows.sort(key=lambda t: t[0])
        return True

    @property
    def dimension(self):
        return len(self._rows)

    def coordinates(self, v):
        """Coefficients ``c`` with ``v = sum c[k] * added[k]``, or ``None``."""
        red, comb = self._reduce([Fraction(x) for x in v])
        if any(red):
            return None
        out = [Fraction(0)] * self.count
        for k, val in comb.items():
            out[k] = -val
        return out


def mat_mul(a, b):
    """Product of an ``m x k`` and a ``k x n`` matrix (lists of rows)."""
    if not a:
        return []
    n = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [Fraction(0)] * n
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(n):
                    if bk[j]:
                        acc[j] += x * bk[j]
        out.append(acc)
    return out


def transpose(a, nrows=None):
    if not a:
        return [[] for _ in range(nrows or 0)]
    return [list(col) for col in zip(*a)]


def is_zero_matrix(a):
    return all(not x for row in a for x in row)
