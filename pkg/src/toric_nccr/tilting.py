"""The tilting object ``E_Q``, its Ext table and its endomorphism algebra.

Each component is kept at two levels: the complex of ``eLambda e``-modules
obtained by restricting to the distinguished vertex, and a bounded complex of
projective ``Lambda``-modules representing it.  Homs in the graded
singularity category are computed through the ``Lambda``-level
representative

    sum_{i=2}^{n-1} P~_{-i}(i)  +  (1-e)Lambda  +  (1-e)Lambda(1)

where ``(1-e)Lambda(1)`` stands for the ``i = 1`` component, which agrees
with ``Omega^1(1-e)(1)`` up to a finite-dimensional module.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import HypothesisError, InconsistencyError
from .fdalgebra import StructureConstants
from .homological.approximation import (
    Approximation,
    apply_idempotent,
    approximation_complex,
    check_condition_one,
    check_condition_two,
    minimal_left_approximation,
)
from .homological.core import ProjectiveComplex
from .homological.homs import _twists, compose_maps, hom_block, hom_complexes
from .homological.resolution import homology_dims, resolve_tops, syzygy
from .nccr import NCCRAlgebra

__all__ = [
    "Component",
    "TiltingObject",
    "build_tilting_object",
    "build_group_tilting",
    "verify_ext_vanishing",
    "EndAlgebraReport",
    "endomorphism_algebra",
    "tail_isomorphism_check",
]


@dataclass
class Component:
    """One member of ``Q``.

    ``index`` is ``0`` for ``(1-e)Lambda e`` and ``i`` for the
    approximation of ``Omega^i(1-e)(i)e``.
    """

    index: int
    label: str
    raw: ProjectiveComplex
    normalized: ProjectiveComplex
    restricted: object  # RestrictedComplex
    approximation: Approximation = None
    condition_one: dict = field(default_factory=dict)
    condition_two: list = field(default_factory=list)

    @property
    def m(self):
        return self.approximation.rank if self.approximation else 0

    @property
    def conditions_hold(self):
        return all(v == 0 for v in self.condition_one.values()) and all(self.condition_two)

    def to_dict(self):
        out = {
            "index": self.index,
            "label": self.label,
            "m": self.m,
            "raw": self.raw.to_dict(),
            "normalized": self.normalized.to_dict(),
            "restricted": self.restricted.to_dict(),
            "betti": self.normalized.betti_table(),
        }
        if self.approximation is not None:
            out["approximation"] = {
                "target_shifts": self.approximation.target_shifts(),
                "hom_dims": {str(j): d for j, d in self.approximation.hom_dims.items()},
                "condition_one_cokernels": {str(j): d for j, d in self.condition_one.items()},
                "condition_two_minimal": self.condition_two,
            }
        return out


@dataclass
class TiltingObject:
    algebra: NCCRAlgebra
    resolution: ProjectiveComplex
    components: list
    ext_representatives: list  # (label, complex), one per component
    tail_check: dict

    def to_dict(self):
        return {
            "component_count": len(self.components),
            "components": [c.to_dict() for c in self.components],
            "ext_representatives": [label for label, _ in self.ext_representatives],
            "m": [c.m for c in self.components if c.index > 0],
            "tail_check_i1": self.tail_check,
        }


def _one_minus_e(alg: NCCRAlgebra, shift=0):
    zero = (0,) * alg.n
    verts = [v for v in range(alg.num_vertices) if v != alg.distinguished]
    label = "(1-e)Lambda" if shift == 0 else f"(1-e)Lambda({shift})"
    return ProjectiveComplex(alg, {0: tuple((v, zero) for v in verts)}, {}, shift, label)


def tail_isomorphism_check(P: ProjectiveComplex, first: Component, D=None):
    """``Omega^1(1-e)(1)`` agrees with ``(1-e)Lambda(1)`` in the tail category.

    The inclusion ``Omega^1 -> P^0`` has cokernel ``(1-e)Lambda_0``, so the
    shifted resolution ``P(1)`` must have homology only in internal degree
    ``-1``; and the ``i = 1`` approximation must be trivial (``m_1 = 0``) so
    that its cone is the syzygy itself.
    """
    hom = homology_dims(P.shifted(1), D)
    finite = all(k == -1 for (_, k) in hom)
    return {"m1_zero": first.m == 0, "cokernel_finite": finite, "homology": {f"{p},{k}": v for (p, k), v in hom.items()}, "ok": finite and first.m == 0}


def build_tilting_object(alg: NCCRAlgebra, D=None, P=None, check_hypotheses=True, window=None) -> TiltingObject:
    """Assemble the ``n`` components of ``E_Q`` and their representatives."""
    if check_hypotheses and not alg.hypotheses.gate:
        raise HypothesisError("hypotheses fail: " + ", ".join(alg.hypotheses.failed()), failed=alg.hypotheses.failed())
    n = alg.n
    if P is None:
        P = resolve_tops(alg, D)
    window = 2 * n if window is None else window
    base = _one_minus_e(alg)
    comps = [Component(0, "(1-e)Lambda e", base, base, apply_idempotent(base, D))]
    for i in range(1, n):
        N = syzygy(P, i).module
        approx = minimal_left_approximation(N, window)
        raw = approximation_complex(P, i, approx)
        if not raw.check_d_squared():
            raise InconsistencyError(f"d^2 != 0 in P~_-{i}({i})")
        norm = raw.normalized()
        c1 = check_condition_one(alg, raw, window)
        c2 = check_condition_two(alg, P, i, approx)
        comps.append(Component(i, f"L(Omega^{i}(1-e)({i})e)", raw, norm, apply_idempotent(norm, D), approx, c1, c2))
    tail = tail_isomorphism_check(P, comps[1], D)
    reps = [("(1-e)Lambda", base), ("(1-e)Lambda(1)", _one_minus_e(alg, 1))]
    for c in comps[2:]:
        reps.append((f"P~_-{c.index}({c.index})", c.normalized))
    return TiltingObject(alg, P, comps, reps, tail)


def build_group_tilting(alg: NCCRAlgebra, D=None, P=None, window=None) -> TiltingObject:
    """Same pipeline for ``Lambda' = kH (x) Lambda`` with ``e'`` distinguished.

    In the character basis of ``kH`` the idempotent ``(1/|H|) sum h (x) e``
    is the vertex ``(min L, trivial character)``, which is vertex ``0``.
    """
    return build_tilting_object(alg, D, P, window=window)


def verify_ext_vanishing(E: TiltingObject, r_range=None, j=0):
    """``{r: dim Hom^r(X, X)}`` on the representative, with per-pair tables."""
    n = E.algebra.n
    if r_range is None:
        r_range = range(-(n - 1), n)
    reps = E.ext_representatives
    table = {}
    pairs = {}
    for r in r_range:
        total = 0
        grid = []
        for _, X in reps:
            row = []
            for _, Y in reps:
                d = hom_complexes(X, Y, r, j, want_reps=False).dimension
                row.append(d)
                total += d
            grid.append(row)
        table[r] = total
        pairs[r] = grid
    return ExtTable(table, pairs, [label for label, _ in reps])


@dataclass
class ExtTable:
    totals: dict
    pairs: dict
    labels: list

    @property
    def vanishes_off_zero(self):
        return all(v == 0 for r, v in self.totals.items() if r != 0)

    def to_dict(self):
        return {
            "labels": self.labels,
            "totals": {str(r): v for r, v in sorted(self.totals.items())},
            "pairs": {str(r): g for r, g in sorted(self.pairs.items())},
            "vanishes_off_zero": self.vanishes_off_zero,
        }


@dataclass
class EndAlgebraReport:
    dimension: int
    labels: list
    block_dims: list  # block_dims[a][b] = dim Hom(X_a, X_b)
    basis: list  # (source, target, delta, maps)
    algebra: StructureConstants
    associative: bool
    unital: bool
    blocks: list
    split: object

    @property
    def is_diagonal(self):
        return all(
            (self.block_dims[a][b] == 0) == (a != b) for a in range(len(self.labels)) for b in range(len(self.labels))
        ) and all(self.block_dims[a][a] == 1 for a in range(len(self.labels)))

    def structure_constants(self):
        out = []
        for (k, l), vec in sorted(self.algebra.table.items()):
            for m, c in enumerate(vec):
                if c:
                    out.append([k, l, m, str(c)])
        return out

    def to_dict(self):
        return {
            "dimension": self.dimension,
            "labels": self.labels,
            "block_dims": self.block_dims,
            "diagonal": self.is_diagonal,
            "basis": [
                {"source": s, "target": t, "delta": list(d)} for s, t, d, _ in self.basis
            ],
            "structure_constants": self.structure_constants(),
            "unit": [str(c) for c in self.algebra.unit],
            "associative": self.associative,
            "unital": self.unital,
            "blocks": self.blocks,
            "idempotents": self.split.to_dict(),
        }


def endomorphism_algebra(E: TiltingObject, check_associativity=True) -> EndAlgebraReport:
    """Degree-zero chain maps modulo homotopy with their composition table."""
    reps = [X for _, X in E.ext_representatives]
    labels = [label for label, _ in E.ext_representatives]
    k = len(reps)
    twists = [_twists(X) for X in reps]
    basis = []  # (a, b, delta, maps)
    block_cache = {}
    dims = [[0] * k for _ in range(k)]
    for a in range(k):
        for b in range(k):
            res = hom_complexes(reps[a], reps[b], 0, 0)
            dims[a][b] = res.dimension
            for blk in res.blocks:
                block_cache[(a, b, blk.delta)] = blk
                for vec in blk.representatives:
                    basis.append((a, b, blk.delta, blk.as_maps(vec, reps[a], reps[b])))
    index = {}
    for t, (a, b, delta, _) in enumerate(basis):
        index.setdefault((a, b, delta), []).append(t)
    N = len(basis)

    def block(a, b, delta):
        blk = block_cache.get((a, b, delta))
        if blk is None:
            blk = hom_block(reps[a], reps[b], 0, delta, twists[a], twists[b])
            block_cache[(a, b, delta)] = blk
        return blk

    def coords(a, c, delta, maps):
        out = [Fraction(0)] * N
        blk = block(a, c, delta)
        if not blk.variables:
            if any(x for m in maps.values() for row in m for x in row):
                raise InconsistencyError("composite has no admissible entries")
            return out
        loc = blk.coordinates(blk.from_maps(maps))
        for t, c_ in zip(index.get((a, c, delta), []), loc):
            out[t] = c_
        return out

    table = {}
    for s, (b2, c, d2, g) in enumerate(basis):
        for t, (a, b, d1, f) in enumerate(basis):
            if b != b2:
                continue
            delta = tuple(x + y for x, y in zip(d1, d2))
            vec = coords(a, c, delta, compose_maps(g, f))
            if any(vec):
                table[(s, t)] = vec
    unit = [Fraction(0)] * N
    zero = (0,) * E.algebra.n
    for a, X in enumerate(reps):
        ident = {p: [[Fraction(int(i == j)) for j in range(len(t))] for i in range(len(t))] for p, t in X.terms.items()}
        vec = coords(a, a, zero, ident)
        unit = [x + y for x, y in zip(unit, vec)]
    alg = StructureConstants(N, table, unit)
    assoc = alg.is_associative() if check_associativity else None
    unital = alg.is_unital()
    blocks = _components(k, dims)
    return EndAlgebraReport(N, labels, dims, [(a, b, d, m) for a, b, d, m in basis], alg, assoc, unital, blocks, alg.split())


def _components(k, dims):
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(k):
        for b in range(k):
            if a != b and dims[a][b]:
                parent[find(a)] = find(b)
    groups = {}
    for a in range(k):
        groups.setdefault(find(a), []).append(a)
    return sorted(groups.values())
