"""Brute-force oracles used to cross-check the engine.

They deliberately avoid the fine grading, caching and counting shortcuts of
the package: monomials come from ``itertools.product``, Hom complexes are
assembled from explicit algebra multiplication in the coarse grading, and
ranks are taken by sympy.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

import sympy


def all_monomials(n, d):
    return [e for e in itertools.product(range(d + 1), repeat=n) if sum(e) == d]


def combined_weight(torus, finite, moduli, e):
    t = sum(c * a for c, a in zip(torus, e))
    res = tuple(
        sum(finite[i][j] * e[i] for i in range(len(e))) % m for j, m in enumerate(moduli)
    )
    return (t,) + res


def brute_weight_space(torus, finite, moduli, d, weight):
    return sorted(
        e for e in all_monomials(len(torus), d) if combined_weight(torus, finite, moduli, e) == tuple(weight)
    )


def brute_L(torus, grid=4):
    """Integers ``k`` with ``2k`` in the closure of the attainable sums, left end removed.

    Sums ``sum a_i chi_i`` with ``a_i`` on the grid ``{0, -1/g, ..., -(g-1)/g}``
    sample the open zonotope.  Its extreme samples sit exactly ``P/g`` inside
    the true endpoints, which recovers the closure.
    """
    vals = set()
    steps = [Fraction(-k, grid) for k in range(grid)]
    for a in itertools.product(steps, repeat=len(torus)):
        vals.add(sum(x * c for x, c in zip(a, torus)))
    P = sum(c for c in torus if c > 0)
    lo = min(vals) - Fraction(P, grid)
    hi = max(vals) + Fraction(sum(-c for c in torus if c < 0), grid)
    return [k for k in range(-P, P + 1) if lo < 2 * k <= hi]


def brute_hilbert_basis(torus, finite, moduli, max_degree):
    """Weight-zero monomials not a product of two nonconstant weight-zero ones."""
    n = len(torus)
    zero = (0,) * (1 + len(moduli))
    inv = []
    for d in range(1, max_degree + 1):
        inv.extend(e for e in all_monomials(n, d) if combined_weight(torus, finite, moduli, e) == zero)
    inv_set = set(inv)
    basis = []
    for e in inv:
        decomposable = False
        for f in inv:
            if f == e or sum(f) >= sum(e):
                continue
            rest = tuple(a - b for a, b in zip(e, f))
            if min(rest) >= 0 and rest in inv_set:
                decomposable = True
                break
        if not decomposable:
            basis.append(e)
    return sorted(basis)


def generates(basis, torus, finite, moduli, max_degree):
    """True iff every weight-zero monomial up to ``max_degree`` is a product of ``basis``."""
    n = len(torus)
    zero = (0,) * (1 + len(moduli))
    reach = {(0,) * n}
    frontier = [(0,) * n]
    while frontier:
        new = []
        for e in frontier:
            for b in basis:
                f = tuple(x + y for x, y in zip(e, b))
                if sum(f) <= max_degree and f not in reach:
                    reach.add(f)
                    new.append(f)
        frontier = new
    for d in range(max_degree + 1):
        for e in all_monomials(n, d):
            if combined_weight(torus, finite, moduli, e) == zero and e not in reach:
                return False
    return True


def brute_effective(torus):
    pos = [c for c in torus if c > 0]
    neg = [c for c in torus if c < 0]
    two = len(pos) >= 2 and len(neg) >= 2
    s = sum(torus) == 0
    g = all(gcd(a, b) == 1 for a in pos for b in neg)
    return two, s, g


# --- Hom complexes in the coarse grading ---------------------------------


def _summand_degree(X, s):
    v, g = s
    return sum(g) - X.shift


def _cochain_basis(X, Y, r, j):
    """Basis ``(p, i, k, exps)``: entry ``Y^(p+r)_i <- X^p_k`` equal to ``x^exps``."""
    alg = X.alg
    out = []
    for p in sorted(X.terms):
        tgt = Y.term(p + r)
        for k, sx in enumerate(X.terms[p]):
            for i, sy in enumerate(tgt):
                d = _summand_degree(X, sx) + j - _summand_degree(Y, sy)
                if d < 0:
                    continue
                for m in alg.piece(sx[0], sy[0], d).basis:
                    out.append((p, i, k, tuple(m.exponents)))
    return out


def _entry(C, p, i, k):
    """``d_C^p`` entry from summand ``k`` to summand ``i`` as a dict ``exps -> coef``."""
    c = C.diff(p)[i][k] if (p in C.diffs) else 0
    if not c:
        return None
    g = C.terms[p][k][1]
    h = C.terms[p + 1][i][1]
    return tuple(a - b for a, b in zip(g, h)), Fraction(c)


def _apply_D(X, Y, r, basis_vec):
    """``D f = dY f - (-1)^r f dX`` for one basis cochain; returns dict of coordinates."""
    p, i, k, e = basis_vec
    out = {}
    # dY^(p+r) o f: target summands of Y^(p+r+1)
    for l in range(len(Y.term(p + r + 1))):
        ent = _entry(Y, p + r, l, i)
        if ent is None:
            continue
        m, c = ent
        key = (p, l, k, tuple(a + b for a, b in zip(e, m)))
        out[key] = out.get(key, 0) + c
    # f o dX^(p-1): f now lives on X^(p-1)
    sign = -1 if r % 2 == 0 else 1
    for l in range(len(X.term(p - 1))):
        ent = _entry(X, p - 1, k, l)
        if ent is None:
            continue
        m, c = ent
        key = (p - 1, i, l, tuple(a + b for a, b in zip(e, m)))
        out[key] = out.get(key, 0) + sign * c
    return {k: v for k, v in out.items() if v}


def _matrix(X, Y, r, j):
    src = _cochain_basis(X, Y, r, j)
    tgt = _cochain_basis(X, Y, r + 1, j)
    idx = {b: t for t, b in enumerate(tgt)}
    M = sympy.zeros(len(tgt), len(src))
    for c, b in enumerate(src):
        for key, val in _apply_D(X, Y, r, b).items():
            if key not in idx:
                raise AssertionError(f"oracle: differential left the cochain space at {key}")
            M[idx[key], c] = sympy.Rational(val.numerator, val.denominator)
    return src, M


def oracle_hom_dimension(X, Y, r, j=0):
    """``dim H^r Hom(X, Y(j))`` by dense linear algebra."""
    src, Dr = _matrix(X, Y, r, j)
    if not src:
        return 0
    _, Dm = _matrix(X, Y, r - 1, j)
    z = len(src) - (Dr.rank() if Dr.rows else 0)
    b = Dm.rank() if Dm.cols and Dm.rows else 0
    return z - b


def graded_total_dimension(X, D):
    """``sum_p dim X^p`` over internal degrees ``<= D`` (size gate for the oracle)."""
    alg = X.alg
    total = 0
    for p, t in X.terms.items():
        for v, g in t:
            s = sum(g) - X.shift
            for d in range(0, D - s + 1):
                total += sum(alg.piece_dim(v, u, d) for u in range(alg.num_vertices))
    return total
