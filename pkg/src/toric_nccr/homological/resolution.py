"""Projective covers, minimal resolutions and syzygies.

Kernels are computed slot by slot in the fine grading.  Because the module
structure maps an element of slot ``b`` to slot ``a >= b`` without changing
its coefficient vector, the submodule generated by chosen elements is, at
slot ``a``, the span of the vectors of those chosen at slots ``b <= a`` of
the same twist.  Minimal generators are then found by a single sweep over
slots in increasing degree.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import InconsistencyError, WindowExhaustedError
from ..linalg import EchelonSpan, nullspace, rank
from ..monomials import order_key
from ..nccr import NCCRAlgebra
import numpy as np

from .core import GradedModule, ProjectiveComplex, TermIndex, slot_chunks, slot_vertex

__all__ = [
    "Generator",
    "minimal_generators",
    "projective_cover",
    "minimal_resolution",
    "SyzygyModule",
    "syzygy",
    "homology_dims",
    "ResolutionReport",
    "resolution_report",
    "resolve_tops",
]


@dataclass(frozen=True)
class Generator:
    vertex: int
    multidegree: tuple
    vector: dict  # summand index -> coefficient


def minimal_generators(alg: NCCRAlgebra, index: TermIndex, problem, D, margin=2):
    """Minimal homogeneous generators of a submodule of a free module.

    ``index`` describes the ambient free module.  ``problem`` supplies
    ``slot_keys(A, tau)`` (a hashable key per slot, such that the slot's
    answer depends only on the key) and ``slot_basis(key, a, tau)``
    returning ``(present, basis)`` with basis vectors over ``present``.
    Slots are visited up to total degree ``D``; a generator found above
    ``D - margin`` raises ``WindowExhaustedError``.
    """
    gens = []
    for tau in index.twist_classes():
        chosen = []  # (multidegree, vector dict)
        settled = set()  # (key, below) pairs known to need nothing new
        for k, A in slot_chunks(alg, index, tau, D):
            keys = problem.slot_keys(A, tau)
            if chosen:
                C = np.array([c[0] for c in chosen], dtype=np.int64)
                below_mask = (A[:, None, :] >= C[None, :, :]).all(axis=2)
                below_keys = [row.tobytes() for row in np.packbits(below_mask, axis=1)]
            else:
                below_mask = None
                below_keys = [b""] * len(A)
            new = []
            for s_idx in range(len(A)):
                ck = (keys[s_idx], below_keys[s_idx])
                if ck in settled:
                    continue
                a = tuple(int(x) for x in A[s_idx])
                present, basis = problem.slot_basis(keys[s_idx], a, tau)
                if not basis:
                    settled.add(ck)
                    continue
                pos = {j: t for t, j in enumerate(present)}
                span = EchelonSpan(len(present))
                if below_mask is not None:
                    for t in np.nonzero(below_mask[s_idx])[0]:
                        vec = [Fraction(0)] * len(present)
                        for j, c in chosen[t][1].items():
                            vec[pos[j]] = c
                        span.add(vec)
                if span.dimension >= len(basis):
                    settled.add(ck)
                    continue
                if k > D - margin:
                    raise WindowExhaustedError(
                        f"generator in degree {k} too close to truncation {D}"
                    )
                for vec in basis:
                    if span.add(vec):
                        new.append((a, {present[t]: c for t, c in enumerate(vec) if c}))
            # generators of degree k only matter for slots of higher degree
            chosen.extend(new)
        for b, vec in chosen:
            gens.append(Generator(slot_vertex(alg, b, tau), b, vec))
    gens.sort(key=lambda g: (sum(g.multidegree), order_key(g.multidegree), g.vertex))
    return gens


class KernelProblem:
    """Slot problem for ``ker(d: P -> Q)``."""

    def __init__(self, src_index: TermIndex, tgt_index: TermIndex, matrix):
        self.src = src_index
        self.tgt = tgt_index
        self.matrix = matrix
        self.cache = {}

    def slot_keys(self, A, tau):
        return list(zip(self.src.pattern_keys(A, tau), self.tgt.pattern_keys(A, tau)))

    def slot_basis(self, key, a, tau):
        hit = self.cache.get((key, tau))
        if hit is None:
            cols = self.src.present_from_key(key[0], tau)
            rows = self.tgt.present_from_key(key[1], tau)
            if not cols:
                hit = (cols, [])
            else:
                sub = [[self.matrix[i][j] for j in cols] for i in rows]
                hit = (cols, nullspace(sub, len(cols)))
            self.cache[(key, tau)] = hit
        return hit


def _gens_to_term(gens, ambient_len):
    summands = tuple((g.vertex, g.multidegree) for g in gens)
    matrix = [[Fraction(0)] * len(gens) for _ in range(ambient_len)]
    for k, g in enumerate(gens):
        for j, c in g.vector.items():
            matrix[j][k] = Fraction(c)
    return summands, matrix


def projective_cover(M: GradedModule, D=None):
    """Cover ``F0 -> M`` and the first syzygy as a generator list.

    Presentations are assumed minimal (no unit relation entries), so the
    cover is the free module on the given generators.  Returns
    ``(summands, kernel_summands, kernel_matrix)``.
    """
    alg = M.alg
    D = alg.truncation if D is None else D
    if not M.radical_kernel and not M.is_minimal_presentation():
        raise InconsistencyError("presentation is not minimal")
    gens = minimal_generators(alg, M.generator_index, M, D)
    ksum, kmat = _gens_to_term(gens, len(M.generators))
    return M.generators, ksum, kmat


def minimal_resolution(M: GradedModule, max_length=None, D=None, label="P") -> ProjectiveComplex:
    """Minimal graded projective resolution, ``P^0`` at position 0.

    Raises ``WindowExhaustedError`` when generators approach the
    truncation and ``InconsistencyError`` when the resolution is longer
    than ``max_length``.
    """
    alg = M.alg
    D = alg.truncation if D is None else D
    terms = {0: tuple(M.generators)}
    diffs = {}
    _, ksum, kmat = projective_cover(M, D)
    p = 0
    while ksum:
        if max_length is not None and -p + 1 > max_length:
            raise InconsistencyError(f"resolution longer than {max_length}")
        terms[p - 1] = ksum
        diffs[p - 1] = kmat
        src = TermIndex(alg, ksum)
        tgt = TermIndex(alg, terms[p])
        gens = minimal_generators(alg, src, KernelProblem(src, tgt, kmat), D)
        ksum, kmat = _gens_to_term(gens, len(terms[p - 1]))
        p -= 1
    return ProjectiveComplex(alg, terms, diffs, M.shift, label)


def resolve_tops(alg: NCCRAlgebra, D=None, include_e=False):
    """Resolution of ``(1-e) Lambda_0`` (or ``Lambda_0`` with ``include_e``)."""
    verts = [v for v in range(alg.num_vertices) if include_e or v != alg.distinguished]
    M = GradedModule.tops(alg, verts, label="(1-e)Lambda_0" if not include_e else "Lambda_0")
    return minimal_resolution(M, max_length=alg.n + 2, D=D)


@dataclass
class SyzygyModule:
    index: int
    module: GradedModule


def syzygy(P: ProjectiveComplex, i: int, M: GradedModule = None) -> SyzygyModule:
    """``Omega^i (i)``: generated by ``P^(-i)``, presented by ``d^(-i-1)``, shifted by ``i``.

    For ``i = 0`` the resolved module ``M`` itself is returned when given.
    """
    alg = P.alg
    if i == 0 and M is not None:
        return SyzygyModule(0, M)
    gens = P.term(-i)
    rels = P.term(-i - 1)
    mat = P.diff(-i - 1) if rels else None
    mod = GradedModule(alg, gens, rels, mat, shift=P.shift + i, label=f"Omega^{i}({i})")
    return SyzygyModule(i, mod)


def homology_dims(X: ProjectiveComplex, D=None):
    """``{(position, internal degree): dim H}`` over all slots with ``|a| <= D``."""
    alg = X.alg
    D = alg.truncation if D is None else D
    out = Counter()
    indices = {p: TermIndex(alg, t) for p, t in X.terms.items()}
    empty = TermIndex(alg, ())
    for p, idx in indices.items():
        prev = indices.get(p - 1, empty)
        nxt = indices.get(p + 1, empty)
        dout = X.diff(p)
        din = X.diff(p - 1)
        cache = {}
        for tau in idx.twist_classes():
            for k, A in slot_chunks(alg, idx, tau, D):
                keys = zip(idx.pattern_keys(A, tau), nxt.pattern_keys(A, tau), prev.pattern_keys(A, tau))
                for key in keys:
                    h = cache.get((key, tau))
                    if h is None:
                        cols = idx.present_from_key(key[0], tau)
                        rows_out = nxt.present_from_key(key[1], tau)
                        cols_in = prev.present_from_key(key[2], tau)
                        r_out = rank([[dout[i][j] for j in cols] for i in rows_out], len(cols)) if rows_out else 0
                        r_in = rank([[din[i][j] for j in cols_in] for i in cols], len(cols_in)) if cols_in else 0
                        h = len(cols) - r_out - r_in
                        cache[(key, tau)] = h
                    if h:
                        out[(p, k - X.shift)] += h
    return dict(sorted(out.items()))


@dataclass
class ResolutionReport:
    length: int
    betti: list  # per step 0, 1, ...: sorted list of (vertex, shift)
    expected_length: int
    final_shift_ok: bool
    final_is_one_minus_e: bool
    shifts_within_law: bool
    minimal: bool
    d_squared_zero: bool
    exact_in_window: bool
    truncation: int
    shift_law_violations: list = field(default_factory=list)

    @property
    def as_regular_shape(self):
        return self.length == self.expected_length and self.final_shift_ok

    def to_dict(self):
        return {
            "length": self.length,
            "expected_length": self.expected_length,
            "betti": [[[v, s] for v, s in step] for step in self.betti],
            "final_shift_ok": self.final_shift_ok,
            "final_is_one_minus_e": self.final_is_one_minus_e,
            "shifts_within_law": self.shifts_within_law,
            "shift_law_violations": self.shift_law_violations,
            "minimal": self.minimal,
            "d_squared_zero": self.d_squared_zero,
            "exact_in_window": self.exact_in_window,
            "as_regular_shape": self.as_regular_shape,
            "truncation": self.truncation,
        }


def resolution_report(P: ProjectiveComplex, D=None, check_exactness=True) -> ResolutionReport:
    """Shape checks for the resolution of ``(1-e) Lambda_0``."""
    alg = P.alg
    n = alg.n
    length = -P.lowest
    betti = []
    for k in range(length + 1):
        step = sorted(((v, P.shift - sum(g)) for v, g in P.term(-k)), key=lambda t: (t[1], t[0]))
        betti.append(step)
    final = betti[-1] if betti else []
    final_shift_ok = bool(final) and all(s == -n for _, s in final)
    others = sorted(v for v in range(alg.num_vertices) if v != alg.distinguished)
    final_is = sorted(v for v, _ in final) == others
    violations = []
    for k, step in enumerate(betti):
        for v, s in step:
            if k > 0 and s not in (-k, -k - 1):
                violations.append([k, v, s])
    exact = True
    if check_exactness:
        hom = homology_dims(P, D)
        # only the top (1-e)Lambda_0 in position 0, degree 0 survives
        expected = {(0, 0): len(P.term(0))}
        exact = hom == expected
    return ResolutionReport(
        length=length,
        betti=betti,
        expected_length=n - 1,
        final_shift_ok=final_shift_ok,
        final_is_one_minus_e=final_is,
        shifts_within_law=not violations,
        minimal=P.is_minimal(),
        d_squared_zero=P.check_d_squared(),
        exact_in_window=exact,
        truncation=alg.truncation if D is None else D,
        shift_law_violations=violations,
    )
