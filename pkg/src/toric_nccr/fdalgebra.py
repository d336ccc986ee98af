"""Finite-dimensional algebras over the rationals given by structure constants.

Used for endomorphism algebras of tilting objects: associativity and unit
checks, the Jacobson radical via the trace form, and a count of primitive
orthogonal idempotents obtained by splitting with minimal polynomials.
Vectors are sparse dicts ``{basis index: coefficient}`` internally.
"""
from __future__ import annotations

import random
from fractions import Fraction

import sympy

from .linalg import EchelonSpan, nullspace

__all__ = ["StructureConstants", "SplitResult"]


def _sparse(v):
    return {k: Fraction(c) for k, c in enumerate(v) if c}


def _dense(d, n):
    v = [Fraction(0)] * n
    for k, c in d.items():
        v[k] = c
    return v


def _axpy(x, y, c=1):
    out = dict(x)
    for k, v in y.items():
        s = out.get(k, 0) + c * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


class SplitResult:
    def __init__(self, count, status, radical_dimension):
        self.count = count  # None when undecided
        self.status = status  # "split" or "undecided"
        self.radical_dimension = radical_dimension

    def to_dict(self):
        return {"indecomposable_summands": self.count, "status": self.status, "radical_dimension": self.radical_dimension}


class StructureConstants:
    """Algebra with basis ``b_0..b_{N-1}`` and ``b_k b_l = sum table[k, l][m] b_m``.

    ``table`` maps ``(k, l)`` to a dense coefficient list; absent pairs
    multiply to zero.
    """

    def __init__(self, dim, table, unit):
        self.dim = dim
        self.table = {key: list(v) for key, v in table.items() if any(v)}
        self.unit = [Fraction(x) for x in unit]
        self._sp = {key: _sparse(v) for key, v in self.table.items()}
        self._right = {}
        for (k, l) in self._sp:
            self._right.setdefault(k, []).append(l)

    def product(self, k, l):
        return _dense(self._sp.get((k, l), {}), self.dim)

    def _mul(self, x, y):
        out = {}
        for k, a in x.items():
            for l in self._right.get(k, ()):
                b = y.get(l)
                if b:
                    out = _axpy(out, self._sp[(k, l)], a * b)
        return out

    def mul(self, x, y):
        return _dense(self._mul(_sparse(x), _sparse(y)), self.dim)

    # checks
    def is_associative(self):
        for i in range(self.dim):
            for j in self._right.get(i, ()):
                ij = self._sp[(i, j)]
                for k in range(self.dim):
                    lhs = self._mul(ij, {k: Fraction(1)})
                    rhs = self._mul({i: Fraction(1)}, self._sp.get((j, k), {}))
                    if lhs != rhs:
                        return False
        # products that vanish on the left must vanish on the right too
        for j in range(self.dim):
            for k in self._right.get(j, ()):
                jk = self._sp[(j, k)]
                for i in range(self.dim):
                    if (i, j) in self._sp:
                        continue
                    if self._mul({i: Fraction(1)}, jk):
                        return False
        return True

    def is_unital(self):
        u = _sparse(self.unit)
        for k in range(self.dim):
            b = {k: Fraction(1)}
            if self._mul(u, b) != b or self._mul(b, u) != b:
                return False
        return True

    # structure
    def radical(self):
        """Basis of the Jacobson radical: the kernel of the trace form (characteristic 0)."""
        N = self.dim
        tr = [sum(self._sp.get((m, l), {}).get(l, 0) for l in range(N)) for m in range(N)]
        T = [[sum(c * tr[m] for m, c in self._sp.get((k, l), {}).items()) for l in range(N)] for k in range(N)]
        return nullspace(T, N)

    def split(self, seed=0, trials=40) -> SplitResult:
        """Number of primitive idempotents in a decomposition of ``1``.

        Works on the semisimple quotient.  Each step takes an element whose
        minimal polynomial has two coprime factors and splits the corner
        algebra by the resulting idempotent.  A corner of dimension ``> 1``
        in which no such element is found is reported as undecided: it would
        need a field extension (or a cleverer search) to split further.
        """
        rad = self.radical()
        N = self.dim
        span = EchelonSpan(N)
        for v in rad:
            span.add(v)
        comp, slots = [], []
        for k in range(N):
            slot = span.count
            v = [Fraction(0)] * N
            v[k] = Fraction(1)
            if span.add(v):
                comp.append(k)
                slots.append(slot)
        nrad = len(rad)

        # quotient coordinates: drop the radical part of the coordinates
        def reduce(v):
            coords = span.coordinates(v)
            return [coords[s] for s in slots]

        m = len(comp)
        if m == 0:
            return SplitResult(0, "split", nrad)
        qtable = {}
        for a, k in enumerate(comp):
            for b, l in enumerate(comp):
                if (k, l) in self._sp:
                    p = reduce(self.product(k, l))
                    if any(p):
                        qtable[(a, b)] = p
        Q = StructureConstants(m, qtable, reduce(self.unit))
        rng = random.Random(seed)
        basis = [{a: Fraction(1)} for a in range(m)]
        count = Q._count(basis, _sparse(Q.unit), rng, trials)
        return SplitResult(count, "split" if count is not None else "undecided", nrad)

    def _corner(self, basis, e):
        sp = EchelonSpan(self.dim)
        out = []
        for b in basis:
            v = self._mul(self._mul(e, b), e)
            if sp.add(_dense(v, self.dim)):
                out.append(v)
        return out

    def _minimal_polynomial(self, x, unit):
        """Minimal polynomial of ``x`` inside the corner with unit ``unit``."""
        t = sympy.Symbol("t")
        sp = EchelonSpan(self.dim)
        sp.add(_dense(unit, self.dim))
        npow = 1
        cur = unit
        while True:
            cur = self._mul(cur, x)
            coords = sp.coordinates(_dense(cur, self.dim))
            if coords is not None:
                poly = t**npow
                for k, c in enumerate(coords):
                    if c:
                        poly -= sympy.Rational(c.numerator, c.denominator) * t**k
                return sympy.Poly(poly, t, domain="QQ")
            sp.add(_dense(cur, self.dim))
            npow += 1

    def _evaluate(self, poly, x, unit):
        acc = {}
        for c in poly.all_coeffs():
            acc = self._mul(acc, x)
            acc = _axpy(acc, unit, Fraction(int(c.p), int(c.q)))
        return acc

    def _count(self, basis, unit, rng, trials):
        if len(basis) <= 1:
            return len(basis)
        candidates = list(basis)
        for a in basis:
            for b in basis:
                candidates.append(self._mul(a, b))
        for _ in range(trials):
            v = {}
            for b in basis:
                v = _axpy(v, b, rng.randint(-3, 3))
            candidates.append(v)
        for x in candidates:
            if not x:
                continue
            poly = self._minimal_polynomial(x, unit)
            if poly.degree() < 2:
                continue
            _, factors = poly.factor_list()
            if len(factors) < 2:
                continue
            f1 = factors[0][0] ** factors[0][1]
            g = sympy.Poly(1, poly.gen, domain="QQ")
            for f, k in factors[1:]:
                g = g * f**k
            _, s, _ = f1.gcdex(g)
            idem = self._evaluate(s * g, x, unit)
            other = _axpy(unit, idem, -1)
            a = self._count(self._corner(basis, idem), idem, rng, trials)
            b = self._count(self._corner(basis, other), other, rng, trials)
            if a is None or b is None:
                return None
            return a + b
        return None
