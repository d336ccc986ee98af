"""Free modules, complexes and presented modules over ``Lambda``.

Everything here uses the fine ``Z^n``-grading by exponent vectors.  A free
summand ``e_v Lambda<g>`` is a pair ``(v, g)``: one generator sitting in
multidegree ``g``.  Its elements in multidegree ``a`` and target vertex
``w`` are multiples of ``x^(a-g)``, which exist iff ``a >= g`` and
``wt(a - g) = chi_w - chi_v``.  Writing ``tau = wt(g) - chi_v`` (the
*twist*), the summand contributes to slot ``(w, a)`` iff ``a >= g`` and
``wt(a) - chi_w = tau``.

A fine-degree-zero map between free modules is a scalar matrix ``c``; the
entry ``c[i][j]`` stands for ``c[i][j] * x^(g_j - h_i)`` from summand
``j = (v, g)`` to summand ``i = (u, h)``.  Composition is matrix
multiplication, so ``d^2 = 0`` checked on scalars is ``d^2 = 0`` over
``Lambda``.

A complex or module also carries an integer ``shift`` (written ``sigma``):
the generator of ``(v, g)`` sits in internal degree ``|g| - sigma``, i.e.
the summand is ``e_v Lambda(sigma - |g|)``.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction

import numpy as np

from ..errors import InconsistencyError, ValidationError
from ..linalg import mat_mul, rref
from ..monomials import _exponents_for, monomial_label, order_key
from ..nccr import Element, NCCRAlgebra

__all__ = [
    "twist",
    "TermIndex",
    "slot_chunks",
    "enumerate_slots",
    "slot_vertex",
    "cone",
    "ProjectiveComplex",
    "GradedModule",
    "zero_matrix",
]


def twist(alg: NCCRAlgebra, summand):
    v, g = summand
    return alg.weights.sub(alg.weights.weight(g), alg.chars[v])


def zero_matrix(rows, cols):
    return [[Fraction(0)] * cols for _ in range(rows)]


class TermIndex:
    """Fast presence queries for a list of summands."""

    def __init__(self, alg: NCCRAlgebra, summands):
        self.alg = alg
        self.summands = tuple(summands)
        self.twists = [twist(alg, s) for s in self.summands]
        self._by_twist = {}
        for j, t in enumerate(self.twists):
            self._by_twist.setdefault(t, []).append(j)
        self._arrays = {}
        for t, idx in self._by_twist.items():
            G = np.array([self.summands[j][1] for j in idx], dtype=np.int64).reshape(len(idx), alg.n)
            self._arrays[t] = (np.array(idx, dtype=np.int64), G)
        self._decoded = {}

    def present(self, a, tau):
        """Indices of summands contributing to slot ``(tau, a)``, ascending."""
        entry = self._arrays.get(tau)
        if entry is None:
            return ()
        idx, G = entry
        mask = (G <= np.asarray(a, dtype=np.int64)).all(axis=1)
        return tuple(int(i) for i in idx[mask])

    def pattern_keys(self, A, tau):
        """One hashable presence pattern per row of the slot array ``A``."""
        entry = self._arrays.get(tau)
        if entry is None or len(A) == 0:
            return [b""] * len(A)
        idx, G = entry
        mask = (A[:, None, :] >= G[None, :, :]).all(axis=2)
        packed = np.packbits(mask, axis=1)
        return [row.tobytes() for row in packed]

    def present_from_key(self, key, tau):
        hit = self._decoded.get((key, tau))
        if hit is None:
            entry = self._arrays.get(tau)
            if entry is None or not key:
                hit = ()
            else:
                idx, G = entry
                bits = np.unpackbits(np.frombuffer(key, dtype=np.uint8))[: len(idx)]
                hit = tuple(int(i) for i, b in zip(idx, bits) if b)
            self._decoded[(key, tau)] = hit
        return hit

    def twist_classes(self):
        return list(self._by_twist)

    def minimal_generators_of_class(self, tau):
        """Multidegrees of the class not dominated by another one."""
        gs = sorted({self.summands[j][1] for j in self._by_twist.get(tau, [])}, key=sum)
        out = []
        for g in gs:
            if not any(all(x >= y for x, y in zip(g, h)) for h in out):
                out.append(g)
        return out


_EXP_ARRAYS = {}


def exponent_array(w, k, weight):
    key = (w, k, weight)
    arr = _EXP_ARRAYS.get(key)
    if arr is None:
        arr = np.array(_exponents_for(w, k, weight), dtype=np.int64).reshape(-1, w.n)
        _EXP_ARRAYS[key] = arr
    return arr


def slot_chunks(alg: NCCRAlgebra, index: TermIndex, tau, D, vertex=None):
    """Slots of class ``tau`` with ``|a| <= D``, as ``(degree, array)`` chunks.

    A slot is kept when some summand of the class is present there.  The
    order inside a chunk is irrelevant to every caller: distinct slots of
    equal degree are incomparable.
    """
    w = alg.weights
    mins = index.minimal_generators_of_class(tau)
    if not mins:
        return []
    M = np.array(mins, dtype=np.int64)
    verts = range(alg.num_vertices) if vertex is None else [vertex]
    targets = [w.add(tau, alg.chars[u]) for u in verts]
    out = []
    for k in range(min(sum(g) for g in mins), D + 1):
        parts = [exponent_array(w, k, t) for t in targets]
        parts = [p for p in parts if len(p)]
        if not parts:
            continue
        A = np.concatenate(parts) if len(parts) > 1 else parts[0]
        keep = (A[:, None, :] >= M[None, :, :]).all(axis=2).any(axis=1)
        A = A[keep]
        if len(A):
            out.append((k, A))
    return out


def enumerate_slots(alg: NCCRAlgebra, index: TermIndex, tau, D, vertex=None):
    """Slot multidegrees as tuples, by degree then canonical order."""
    out = []
    for k, A in slot_chunks(alg, index, tau, D, vertex):
        out.extend(sorted((tuple(int(x) for x in row) for row in A), key=order_key))
    return out


def slot_vertex(alg: NCCRAlgebra, a, tau):
    return alg.index_of.get(alg.weights.sub(alg.weights.weight(a), tau))


class ProjectiveComplex:
    """Bounded complex of fine-graded free modules (cohomological indexing).

    ``terms[p]`` is a tuple of summands and ``diffs[p]`` the scalar matrix of
    ``d^p : X^p -> X^(p+1)`` with ``len(terms[p+1])`` rows.
    """

    def __init__(self, alg: NCCRAlgebra, terms, diffs=None, shift=0, label=""):
        self.alg = alg
        self.terms = {p: tuple(t) for p, t in terms.items() if len(t)}
        self.shift = shift
        self.label = label
        self.diffs = {}
        for p, m in (diffs or {}).items():
            if p in self.terms and (p + 1) in self.terms:
                self.diffs[p] = [[Fraction(x) for x in row] for row in m]

    # structure
    @property
    def positions(self):
        return sorted(self.terms)

    @property
    def lowest(self):
        return min(self.terms) if self.terms else 0

    @property
    def highest(self):
        return max(self.terms) if self.terms else 0

    def term(self, p):
        return self.terms.get(p, ())

    def diff(self, p):
        """Matrix of ``d^p``, zero matrix if absent."""
        m = self.diffs.get(p)
        if m is None:
            return zero_matrix(len(self.term(p + 1)), len(self.term(p)))
        return m

    def summand_shift(self, p, j):
        v, g = self.terms[p][j]
        return self.shift - sum(g)

    def total_rank(self):
        return sum(len(t) for t in self.terms.values())

    # checks
    def validate(self):
        """Every nonzero entry must be a genuine monomial map."""
        for p, m in self.diffs.items():
            src, tgt = self.terms[p], self.terms[p + 1]
            for i, row in enumerate(m):
                for j, c in enumerate(row):
                    if not c:
                        continue
                    g, h = src[j][1], tgt[i][1]
                    if any(x < y for x, y in zip(g, h)) or twist(self.alg, src[j]) != twist(self.alg, tgt[i]):
                        raise InconsistencyError(f"entry ({i},{j}) of d^{p} is not a monomial map")
        return True

    def check_d_squared(self):
        for p in self.positions:
            if p in self.diffs and (p + 1) in self.diffs:
                prod = mat_mul(self.diffs[p + 1], self.diffs[p])
                if any(x for row in prod for x in row):
                    return False
        return True

    def is_minimal(self):
        for p, m in self.diffs.items():
            src, tgt = self.terms[p], self.terms[p + 1]
            for i, row in enumerate(m):
                for j, c in enumerate(row):
                    if c and src[j][1] == tgt[i][1]:
                        return False
        return True

    def entry_element(self, p, i, j) -> Element:
        c = self.diff(p)[i][j]
        if not c:
            return Element()
        (v, g), (u, h) = self.terms[p][j], self.terms[p + 1][i]
        return Element({(v, u, tuple(x - y for x, y in zip(g, h))): c})

    # operations
    def shifted(self, k):
        """Internal grading shift ``X(k)``."""
        return ProjectiveComplex(self.alg, self.terms, self.diffs, self.shift + k, self.label)

    def moved(self, k):
        """Homological shift ``X[k]``: position ``p`` holds ``X^(p+k)``, differential negated for odd ``k``."""
        sign = -1 if k % 2 else 1
        terms = {p - k: t for p, t in self.terms.items()}
        diffs = {p - k: [[sign * x for x in row] for row in m] for p, m in self.diffs.items()}
        return ProjectiveComplex(self.alg, terms, diffs, self.shift, self.label)

    def normalized(self):
        """Cancel unit entries (fine degree zero) by Gaussian elimination.

        The result is homotopy equivalent to ``self`` and has no
        split-acyclic summand of the form ``P --1--> P``.
        """
        terms = {p: list(t) for p, t in self.terms.items()}
        diffs = {p: [list(r) for r in m] for p, m in self.diffs.items()}
        changed = True
        while changed:
            changed = False
            for p in sorted(diffs):
                m = diffs[p]
                src, tgt = terms[p], terms[p + 1]
                hit = None
                for i, row in enumerate(m):
                    for j, c in enumerate(row):
                        if c and src[j] == tgt[i]:
                            hit = (i, j)
                            break
                    if hit:
                        break
                if hit is None:
                    continue
                i, j = hit
                alpha = m[i][j]
                newm = []
                for k, row in enumerate(m):
                    if k == i:
                        continue
                    f = row[j] / alpha
                    newm.append([x - f * y for l, (x, y) in enumerate(zip(row, m[i])) if l != j])
                diffs[p] = newm
                if p - 1 in diffs:
                    diffs[p - 1] = [row for k, row in enumerate(diffs[p - 1]) if k != j]
                if p + 1 in diffs:
                    diffs[p + 1] = [[x for l, x in enumerate(row) if l != i] for row in diffs[p + 1]]
                del src[j]
                del tgt[i]
                changed = True
                break
        terms = {p: t for p, t in terms.items() if t}
        diffs = {p: m for p, m in diffs.items() if p in terms and p + 1 in terms}
        return ProjectiveComplex(self.alg, terms, diffs, self.shift, self.label)

    def betti(self):
        """``{p: Counter((vertex, shift))}``."""
        out = {}
        for p, t in self.terms.items():
            out[p] = Counter((v, self.shift - sum(g)) for v, g in t)
        return out

    def betti_table(self):
        """Sorted shift multisets, one per position, highest position first."""
        rows = []
        for p in sorted(self.terms, reverse=True):
            rows.append(sorted((self.shift - sum(g) for v, g in self.terms[p]), reverse=True))
        return rows

    def to_dict(self):
        alg = self.alg
        terms = {}
        diffs = {}
        for p in self.positions:
            terms[str(p)] = [
                {"vertex": alg.vertex_label(v), "shift": self.shift - sum(g), "multidegree": list(g)}
                for v, g in self.terms[p]
            ]
        for p, m in sorted(self.diffs.items()):
            src, tgt = self.terms[p], self.terms[p + 1]
            entries = []
            for i, row in enumerate(m):
                for j, c in enumerate(row):
                    if c:
                        mono = tuple(x - y for x, y in zip(src[j][1], tgt[i][1]))
                        entries.append([i, j, str(c), monomial_label(mono)])
            diffs[str(p)] = entries
        return {"shift": self.shift, "terms": terms, "differentials": diffs}


def cone(f, X: ProjectiveComplex, Y: ProjectiveComplex, label="cone"):
    """Mapping cone of a fine-degree-zero chain map ``f: X -> Y``.

    ``f[p]`` is the matrix ``X^p -> Y^p``.  The cone has
    ``C^p = X^(p+1) + Y^p`` and ``d = [[-dX, 0], [f, dY]]``.
    """
    if X.shift != Y.shift:
        raise ValidationError("cone needs a fine-degree-zero map")
    alg = X.alg
    positions = set(p - 1 for p in X.terms) | set(Y.terms)
    terms = {}
    for p in positions:
        terms[p] = tuple(X.term(p + 1)) + tuple(Y.term(p))
    diffs = {}
    for p in positions:
        if p + 1 not in positions:
            continue
        xs, ys = len(X.term(p + 1)), len(Y.term(p))
        xt, yt = len(X.term(p + 2)), len(Y.term(p + 1))
        m = zero_matrix(xt + yt, xs + ys)
        dx = X.diff(p + 1)
        for i in range(xt):
            for j in range(xs):
                m[i][j] = -dx[i][j]
        fp = f.get(p + 1)
        if fp is not None:
            for i in range(yt):
                for j in range(xs):
                    m[xt + i][j] = Fraction(fp[i][j])
        dy = Y.diff(p)
        for i in range(yt):
            for j in range(ys):
                m[xt + i][xs + j] = dy[i][j]
        diffs[p] = m
    return ProjectiveComplex(alg, terms, diffs, X.shift, label)


class GradedModule:
    """Finitely presented graded right module ``coker(F1 -> F0)``.

    ``generators`` and ``relations`` are summand lists sharing ``shift``;
    ``relation_matrix`` is the scalar matrix ``F1 -> F0``.  When
    ``radical_kernel`` is set the relations are the whole radical of
    ``F0``, so the module is the top ``F0 / F0 rad``.
    """

    def __init__(self, alg, generators, relations=(), relation_matrix=None, shift=0,
                 radical_kernel=False, label=""):
        self.alg = alg
        self.generators = tuple(generators)
        self.relations = tuple(relations)
        if relation_matrix is None:
            relation_matrix = zero_matrix(len(self.generators), len(self.relations))
        self.relation_matrix = [[Fraction(x) for x in row] for row in relation_matrix]
        self.shift = shift
        self.radical_kernel = radical_kernel
        self.label = label
        self._gen_index = TermIndex(alg, self.generators)
        self._rel_index = TermIndex(alg, self.relations)
        self._gen_set = {g for _, g in self.generators}

    @classmethod
    def tops(cls, alg, vertices, label=""):
        """``sum_v e_v Lambda_0``, the simple tops at the given vertices."""
        zero = (0,) * alg.n
        return cls(alg, [(v, zero) for v in vertices], radical_kernel=True, label=label)

    @classmethod
    def free(cls, alg, summands, shift=0, label=""):
        return cls(alg, summands, shift=shift, label=label)

    @property
    def generator_index(self):
        return self._gen_index

    # slot problem interface used by minimal_generators
    def slot_keys(self, A, tau):
        gk = self._gen_index.pattern_keys(A, tau)
        if self.radical_kernel:
            # the answer also depends on whether a is a generator degree
            tops = []
            for row in A:
                a = tuple(int(x) for x in row)
                tops.append(a if a in self._gen_set else None)
            return list(zip(gk, tops))
        return list(zip(gk, self._rel_index.pattern_keys(A, tau)))

    def slot_basis(self, key, a, tau):
        return self.kernel_slot(a, tau)

    def kernel_slot(self, a, tau):
        """``(present generators, basis of the relation submodule at the slot)``."""
        present = self._gen_index.present(a, tau)
        if not present:
            return present, []
        if self.radical_kernel:
            basis = []
            for k, j in enumerate(present):
                if self.generators[j][1] != tuple(a):
                    v = [Fraction(0)] * len(present)
                    v[k] = Fraction(1)
                    basis.append(v)
            return present, basis
        cols = self._rel_index.present(a, tau)
        vecs = [[self.relation_matrix[j][k] for j in present] for k in cols]
        if not vecs:
            return present, []
        red, piv = rref(vecs, len(present))
        return present, red

    def slot_dimension(self, a, tau):
        present, basis = self.kernel_slot(a, tau)
        return len(present) - len(basis)

    def is_minimal_presentation(self):
        for i, row in enumerate(self.relation_matrix):
            for k, c in enumerate(row):
                if c and self.relations[k][1] == self.generators[i][1]:
                    return False
        return True

    def graded_dims(self, D, vertex=None):
        """``{internal degree: dim}`` of the module, optionally at one vertex."""
        out = Counter()
        for tau in self._gen_index.twist_classes():
            for a in enumerate_slots(self.alg, self._gen_index, tau, D + self.shift, vertex):
                dim = self.slot_dimension(a, tau)
                if dim:
                    out[sum(a) - self.shift] += dim
        return dict(sorted(out.items()))
