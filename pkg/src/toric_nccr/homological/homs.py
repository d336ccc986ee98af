"""Graded maps between complexes of projectives, modulo homotopy.

A map ``e_v Lambda<g> -> e_u Lambda<h>`` of fine degree ``delta`` sends the
generator to ``c * gen_h * x^(g + delta - h)``, so it exists iff
``g + delta >= h`` and ``wt(delta) = tau_u - tau_v``.  For fixed ``delta``
the Hom complex is a finite complex of vector spaces with one coordinate
per admissible matrix entry, and

    H^r = dim ker D^r - rank D^(r-1),
    (D f)^p = dY f^p - (-1)^r f^(p+1) dX.

A map raising internal degree by ``j`` has ``|delta| = j + sigma_Y - sigma_X``
and only finitely many ``delta`` give a nonzero cochain space, so the
graded Hom is the finite sum over those.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import InconsistencyError
from ..linalg import EchelonSpan, nullspace, rank, transpose
from ..monomials import _exponents_for
from .core import ProjectiveComplex, twist

__all__ = ["HomBlock", "HomResult", "hom_block", "hom_complexes", "candidate_degrees", "compose_maps"]


def _twists(X: ProjectiveComplex):
    return {p: [twist(X.alg, s) for s in t] for p, t in X.terms.items()}


def _variables(X, Y, r, delta, tx, ty):
    w = X.alg.weights
    wd = w.weight(delta)
    out = []
    for p in X.positions:
        tgt = Y.term(p + r)
        if not tgt:
            continue
        for j, (v, g) in enumerate(X.terms[p]):
            gd = tuple(a + b for a, b in zip(g, delta))
            for i, (u, h) in enumerate(tgt):
                if all(a >= b for a, b in zip(gd, h)) and w.sub(ty[p + r][i], tx[p][j]) == wd:
                    out.append((p, i, j))
    return out


def _dmatrix(X, Y, r, cols, row_index):
    """Matrix of ``D^r`` from the coordinates ``cols`` to ``row_index``."""
    sign = -1 if r % 2 == 0 else 1
    M = [[Fraction(0)] * len(cols) for _ in range(len(row_index))]
    for c, (p, i, j) in enumerate(cols):
        dY = Y.diffs.get(p + r)
        if dY is not None:
            for k, row in enumerate(dY):
                x = row[i]
                if x:
                    key = (p, k, j)
                    if key not in row_index:
                        raise InconsistencyError(f"Hom differential leaves the cochain space at {key}")
                    M[row_index[key]][c] += x
        dX = X.diffs.get(p - 1)
        if dX is not None:
            for l, x in enumerate(dX[j]):
                if x:
                    key = (p - 1, i, l)
                    if key not in row_index:
                        raise InconsistencyError(f"Hom differential leaves the cochain space at {key}")
                    M[row_index[key]][c] += sign * x
    return M


@dataclass
class HomBlock:
    """``H^r`` of the Hom complex in one fine degree ``delta``."""

    r: int
    delta: tuple
    variables: list
    cocycle_dim: int
    boundary_dim: int
    representatives: list  # cocycle vectors over ``variables``
    span: EchelonSpan = field(repr=False, default=None)
    rep_positions: list = field(repr=False, default_factory=list)

    @property
    def dimension(self):
        return self.cocycle_dim - self.boundary_dim

    def index(self):
        return {v: k for k, v in enumerate(self.variables)}

    def as_maps(self, vec, X, Y):
        """Coordinates -> ``{p: matrix Y^(p+r) x X^p}``."""
        out = {}
        for (p, i, j), c in zip(self.variables, vec):
            if not c:
                continue
            m = out.get(p)
            if m is None:
                m = [[Fraction(0)] * len(X.term(p)) for _ in range(len(Y.term(p + self.r)))]
                out[p] = m
            m[i][j] += c
        return out

    def from_maps(self, maps):
        idx = self.index()
        vec = [Fraction(0)] * len(self.variables)
        for p, m in maps.items():
            for i, row in enumerate(m):
                for j, c in enumerate(row):
                    if c:
                        key = (p, i, j)
                        if key not in idx:
                            raise InconsistencyError(
                                f"map entry {key} not admissible in degree {self.delta}"
                            )
                        vec[idx[key]] += c
        return vec

    def coordinates(self, vec):
        """Class of a cocycle in terms of ``representatives``."""
        if not self.variables:
            return []
        coords = self.span.coordinates(vec)
        if coords is None:
            raise InconsistencyError("vector is not a cocycle in this block")
        return [coords[k] for k in self.rep_positions]


def hom_block(X: ProjectiveComplex, Y: ProjectiveComplex, r: int, delta, tx=None, ty=None, want_reps=True):
    tx = _twists(X) if tx is None else tx
    ty = _twists(Y) if ty is None else ty
    delta = tuple(delta)
    v0 = _variables(X, Y, r, delta, tx, ty)
    if not v0:
        return HomBlock(r, delta, [], 0, 0, [])
    vp = _variables(X, Y, r + 1, delta, tx, ty)
    vm = _variables(X, Y, r - 1, delta, tx, ty)
    idx0 = {v: k for k, v in enumerate(v0)}
    idxp = {v: k for k, v in enumerate(vp)}
    Dr = _dmatrix(X, Y, r, v0, idxp) if vp else []
    Dm = _dmatrix(X, Y, r - 1, vm, idx0) if vm else []
    if not want_reps:
        z = len(v0) - (rank(Dr, len(v0)) if vp else 0)
        b = rank(Dm, len(vm)) if vm else 0
        return HomBlock(r, delta, v0, z, b, [])
    Z = nullspace(Dr, len(v0))
    span = EchelonSpan(len(v0))
    bvecs = transpose(Dm) if vm else []
    for bv in bvecs:
        span.add(bv)
    bdim = span.dimension
    reps, positions = [], []
    for k, zv in enumerate(Z):
        if span.add(zv):
            reps.append(zv)
            positions.append(len(bvecs) + k)
    return HomBlock(r, delta, v0, len(Z), bdim, reps, span, positions)


def candidate_degrees(X: ProjectiveComplex, Y: ProjectiveComplex, r: int, j: int = 0):
    """All ``delta`` with a nonzero degree-``(r, j)`` cochain space."""
    alg = X.alg
    w = alg.weights
    total = j + Y.shift - X.shift
    seen = set()
    out = set()
    for p in X.positions:
        tgt = Y.term(p + r)
        for (v, g) in X.terms[p]:
            for (u, h) in tgt:
                key = (v, g, u, h)
                if key in seen:
                    continue
                seen.add(key)
                k = total - sum(h) + sum(g)
                if k < 0:
                    continue
                cw = w.sub(alg.chars[v], alg.chars[u])
                for c in _exponents_for(w, k, cw):
                    out.add(tuple(hh - gg + cc for hh, gg, cc in zip(h, g, c)))
    return sorted(out)


@dataclass
class HomResult:
    r: int
    j: int
    dimension: int
    blocks: list  # nonzero HomBlocks


def hom_complexes(X: ProjectiveComplex, Y: ProjectiveComplex, r: int, j: int = 0, want_reps=True) -> HomResult:
    """``dim Hom_K(X, Y[r](j))`` with class representatives per fine degree."""
    tx, ty = _twists(X), _twists(Y)
    blocks = []
    total = 0
    for delta in candidate_degrees(X, Y, r, j):
        b = hom_block(X, Y, r, delta, tx, ty, want_reps=want_reps)
        if b.dimension:
            blocks.append(b)
            total += b.dimension
    return HomResult(r, j, total, blocks)


def compose_maps(g_maps, f_maps):
    """``(g o f)^p = g^p f^p`` for degree-zero chain maps given as matrix dicts."""
    out = {}
    for p, fm in f_maps.items():
        gm = g_maps.get(p)
        if gm is None:
            continue
        prod = []
        for row in gm:
            acc = [Fraction(0)] * (len(fm[0]) if fm else 0)
            for k, x in enumerate(row):
                if x:
                    for t, y in enumerate(fm[k]):
                        if y:
                            acc[t] += x * y
            prod.append(acc)
        out[p] = prod
    return out
