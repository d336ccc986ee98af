"""Restriction to the distinguished vertex and minimal left approximations.

For a graded ``Lambda``-module ``N`` the reflexivity of ``eLambda`` over
``eLambda e`` gives ``Hom_{eLe}(Ne, eLe) = Hom_Lambda(N, eLambda)``, so the
left approximation of ``Ne`` by graded free ``eLambda e``-modules is computed
at the ``Lambda`` level.  A map from ``N`` (generators ``(v_j, g_j)``,
relation matrix ``R``) to ``eLambda<h>`` is a row vector ``c`` supported on
the generators with ``g_j >= h`` in the twist class of ``(e, h)``, subject
to ``c R = 0``.  Post-composition with ``x^m`` in ``eLambda e`` moves the
same vector from ``h`` to ``h - m``, so generators are chosen by a sweep
over ``h`` in decreasing degree.

The approximating category is ``add{eLambda(j) : j <= 0}``; maps into
``eLambda(j)`` are searched for ``-window <= j <= 0``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import WindowExhaustedError
from ..linalg import EchelonSpan, nullspace
from ..monomials import _exponents_for, order_key
from ..nccr import NCCRAlgebra
from .core import GradedModule, ProjectiveComplex, twist, zero_matrix
from .homs import hom_complexes

__all__ = [
    "RestrictedModule",
    "RestrictedComplex",
    "apply_idempotent",
    "Approximation",
    "minimal_left_approximation",
    "approximation_complex",
    "free_e_complex",
    "check_condition_one",
    "check_condition_two",
]


@dataclass
class RestrictedModule:
    """``Me`` for a presented module ``M``: graded dimensions at vertex ``e``."""

    source: GradedModule
    graded_dims: dict


@dataclass
class RestrictedComplex:
    """``Xe`` for a complex of projectives: ``e_v Lambda(s)`` becomes ``e_v Lambda e(s)``."""

    source: ProjectiveComplex
    terms: dict  # position -> list of (vertex, shift)
    graded_dims: dict  # position -> {internal degree: dim}

    def to_dict(self):
        alg = self.source.alg
        return {
            "terms": {str(p): [[alg.vertex_label(v), s] for v, s in t] for p, t in sorted(self.terms.items())},
            "graded_dims": {str(p): {str(d): k for d, k in dims.items()} for p, dims in sorted(self.graded_dims.items())},
        }


def apply_idempotent(X, D=None):
    """Restrict a module or complex to the distinguished vertex."""
    if isinstance(X, GradedModule):
        D = X.alg.truncation if D is None else D
        return RestrictedModule(X, X.graded_dims(D, vertex=X.alg.distinguished))
    alg = X.alg
    D = alg.truncation if D is None else D
    e = alg.distinguished
    terms, dims = {}, {}
    for p in X.positions:
        terms[p] = [(v, X.shift - sum(g)) for v, g in X.terms[p]]
        cnt = Counter()
        for v, s in terms[p]:
            # e_v Lambda(s) in internal degree d is e_v Lambda_(s+d)
            for k in range(0, alg.truncation + 1):
                if k - s > D:
                    break
                dim = alg.piece_dim(e, v, k)
                if dim:
                    cnt[k - s] += dim
        dims[p] = dict(sorted(cnt.items()))
    return RestrictedComplex(X, terms, dims)


@dataclass
class Approximation:
    """Left approximation ``q: N -> F`` with ``F = sum_k eLambda<h_k>``."""

    module: GradedModule
    targets: list  # summands (e, h_k) of F
    matrix: list  # len(F) x len(generators of N)
    window: int
    hom_dims: dict = field(default_factory=dict)  # j -> dim Hom(N, eLambda(j))

    @property
    def rank(self):
        return len(self.targets)

    def target_shifts(self):
        return [self.module.shift - sum(h) for _, h in self.targets]


def _candidates(alg: NCCRAlgebra, N: GradedModule, window):
    w = alg.weights
    e = alg.distinguished
    sigma = N.shift
    out = set()
    for v, g in N.generators:
        cw = alg.hom_weight(v, e)
        dg = sum(g)
        # 0 <= |h| - sigma <= window with |h| = |g| - |c|
        for k in range(max(0, dg - sigma - window), dg - sigma + 1):
            for c in _exponents_for(w, k, cw):
                if all(x <= y for x, y in zip(c, g)):
                    out.add(tuple(y - x for x, y in zip(c, g)))
    return sorted(out, key=lambda h: (-sum(h), order_key(h)))


def _hom_space(alg, N: GradedModule, h):
    """``(present generators, basis of Hom(N, eLambda<h>))``."""
    tau = twist(alg, (alg.distinguished, h))
    present = [j for j, s in enumerate(N.generators) if twist(alg, s) == tau and all(x >= y for x, y in zip(s[1], h))]
    if not present:
        return present, []
    cols = [k for k in range(len(N.relations)) if any(N.relation_matrix[j][k] for j in present)]
    # c R = 0  <=>  R^T c^T = 0
    rows = [[N.relation_matrix[j][k] for j in present] for k in cols]
    return present, nullspace(rows, len(present))


def minimal_left_approximation(N: GradedModule, window=None, margin=1) -> Approximation:
    """Minimal left ``add{eLambda(j), j <= 0}``-approximation of ``N``.

    ``window`` defaults to ``2n``.  A generator within ``margin`` of the far
    end of the window raises ``WindowExhaustedError``.
    """
    alg = N.alg
    window = 2 * alg.n if window is None else window
    e = alg.distinguished
    chosen = []  # (h, {generator: coef})
    hom_dims = Counter()
    for h in _candidates(alg, N, window):
        present, basis = _hom_space(alg, N, h)
        if not basis:
            continue
        hom_dims[N.shift - sum(h)] += len(basis)
        pos = {j: t for t, j in enumerate(present)}
        tau = twist(alg, (e, h))
        span = EchelonSpan(len(present))
        for h2, vec in chosen:
            if twist(alg, (e, h2)) == tau and all(x >= y for x, y in zip(h2, h)):
                v = [Fraction(0)] * len(present)
                for j, c in vec.items():
                    v[pos[j]] = c
                span.add(v)
        if span.dimension >= len(basis):
            continue
        if sum(h) - N.shift > window - margin:
            raise WindowExhaustedError(
                f"approximation generator at degree {N.shift - sum(h)} near window end {-window}"
            )
        for vec in basis:
            if span.add(vec):
                chosen.append((h, {present[t]: c for t, c in enumerate(vec) if c}))
    targets = [(e, h) for h, _ in chosen]
    mat = zero_matrix(len(chosen), len(N.generators))
    for k, (_, vec) in enumerate(chosen):
        for j, c in vec.items():
            mat[k][j] = c
    return Approximation(N, targets, mat, window, dict(sorted(hom_dims.items())))


def approximation_complex(P: ProjectiveComplex, i: int, approx: Approximation, label=None) -> ProjectiveComplex:
    """``P~_{-i}(i)``: the tail ``P^(<= -i)(i)`` followed by ``q: P^(-i)(i) -> F``.

    ``P^(-k)(i)`` sits in position ``i - k`` and ``F`` in position ``1``;
    the homology is ``coker q`` in position ``1`` and ``Omega^i`` modulo the
    kernel of ``q`` in position ``0``.
    """
    terms, diffs = {}, {}
    for p in P.positions:
        if p <= -i:
            terms[p + i] = P.terms[p]
            if p + 1 <= -i and p in P.diffs:
                diffs[p + i] = P.diffs[p]
    if approx.targets:
        terms[1] = tuple(approx.targets)
        diffs[0] = approx.matrix
    X = ProjectiveComplex(P.alg, terms, diffs, P.shift + i, label or f"P~_-{i}({i})")
    X.validate()
    return X


def free_e_complex(alg: NCCRAlgebra, j: int) -> ProjectiveComplex:
    """``eLambda(j)`` as a complex concentrated in position ``0``."""
    zero = (0,) * alg.n
    return ProjectiveComplex(alg, {0: ((alg.distinguished, zero),)}, {}, j, f"eLambda({j})")


def check_condition_one(alg: NCCRAlgebra, Xt: ProjectiveComplex, window: int):
    """Condition (1): every map ``Omega -> eLambda(j)`` factors through ``q``.

    By the long exact sequence of the cone, ``Hom(F, eLambda(j)) ->
    Hom(Omega, eLambda(j))`` is onto iff ``H^0 Hom(P~, eLambda(j)) = 0``.
    Returns ``{j: dim of the cokernel}`` over the window.
    """
    return {j: hom_complexes(Xt, free_e_complex(alg, j), 0, 0, want_reps=False).dimension for j in range(-window, 1)}


def check_condition_two(alg: NCCRAlgebra, P: ProjectiveComplex, i: int, approx: Approximation):
    """Condition (2): dropping any summand of ``F`` breaks condition (1).

    For a graded-local base this is equivalent to every endomorphism ``g``
    of ``F`` with ``g q = q`` being invertible.  Returns one boolean per
    summand of ``F``.
    """
    out = []
    for k in range(approx.rank):
        keep = [t for t in range(approx.rank) if t != k]
        sub = Approximation(
            approx.module,
            [approx.targets[t] for t in keep],
            [approx.matrix[t] for t in keep],
            approx.window,
        )
        Xt = approximation_complex(P, i, sub)
        j = approx.target_shifts()[k]
        out.append(hom_complexes(Xt, free_e_complex(alg, j), 0, 0, want_reps=False).dimension > 0)
    return out
