"""The algebra ``Lambda = End(M)`` for ``M = sum_{chi in L} M(V_chi)``.

Vertices are characters: the integers of ``L`` for a pure torus, pairs
``(chi, psi)`` with ``psi`` a character of the finite group otherwise.  The
piece ``e_b Lambda_d e_a`` (maps from vertex ``a`` to vertex ``b`` of degree
``d``) has the monomials of degree ``d`` and weight ``chi_a - chi_b`` as basis.
Multiplication is composition, i.e. addition of exponent vectors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .covariants import HomSpace
from .errors import HypothesisError, ValidationError, WindowExhaustedError
from .linalg import EchelonSpan, nullspace
from .monomials import (
    Monomial,
    _exponents_for,
    monomial_label,
    order_key,
    weight_space_dim,
)
from .weights import (
    GroupSpec,
    WeightData,
    check_effectiveness,
    compute_L,
    is_generic,
    is_quasi_symmetric,
    is_unimodular,
)

__all__ = [
    "HypothesisReport",
    "NCCRAlgebra",
    "Element",
    "Arrow",
    "QuiverPresentation",
    "build_nccr",
    "extract_presentation",
    "path_from_labels",
    "relation_in_span",
    "quotient_dims_by_idempotent",
    "tensor_with_group_algebra",
]


@dataclass
class HypothesisReport:
    quasi_symmetric: bool
    unimodular: bool
    effective: bool
    generic_criterion: bool
    torus_generic: bool
    failed_effectiveness: list = field(default_factory=list)

    @property
    def gate(self):
        """Hypotheses used to admit the input into the tilting pipeline.

        For a pure torus this is unimodular, quasi-symmetric and generic.
        With a finite part the genericity requirement is placed on the
        torus part; the pairwise criterion for the full group is kept as a
        diagnostic.
        """
        return self.quasi_symmetric and self.unimodular and self.torus_generic

    def failed(self):
        out = []
        if not self.quasi_symmetric:
            out.append("quasi-symmetric")
        if not self.unimodular:
            out.append("unimodular")
        if not self.torus_generic:
            out.append("generic")
        return out

    def to_dict(self):
        return {
            "quasi_symmetric": self.quasi_symmetric,
            "unimodular": self.unimodular,
            "effective": self.effective,
            "generic_criterion": self.generic_criterion,
            "generic_basis": "criterion-based",
            "torus_generic": self.torus_generic,
            "gate": self.gate,
            "failed": self.failed(),
            "failed_effectiveness": list(self.failed_effectiveness),
        }


def hypothesis_report(w: WeightData) -> HypothesisReport:
    eff = check_effectiveness(w.torus_only())
    return HypothesisReport(
        quasi_symmetric=is_quasi_symmetric(w),
        unimodular=is_unimodular(w),
        effective=eff.effective,
        generic_criterion=is_generic(w),
        torus_generic=is_generic(w.torus_only()),
        failed_effectiveness=eff.failed_conditions(),
    )


class Element:
    """Finite linear combination of basis monomials of ``Lambda``.

    Keys are ``(source, target, exponents)``; ``x * y`` is the composite
    ``x o y`` (first ``y``, then ``x``), zero on non-matching vertices.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Element(out)

    def __neg__(self):
        return Element({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return Element({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for (s1, t1, e1), c1 in self.terms.items():
            for (s2, t2, e2), c2 in other.terms.items():
                if s1 != t2:
                    continue
                key = (s2, t1, tuple(a + b for a, b in zip(e1, e2)))
                out[key] = out.get(key, 0) + c1 * c2
        return Element(out)

    def __eq__(self, other):
        return isinstance(other, Element) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = [f"{c}*[{s}->{t}:{monomial_label(e)}]" for (s, t, e), c in sorted(self.terms.items())]
        return " + ".join(parts)


class NCCRAlgebra:
    """Degree-truncated monomial model of ``Lambda`` (or ``Lambda'``).

    Vertex ``0`` is always the distinguished vertex ``e``: the minimum of
    ``L``, paired with the trivial character of the finite group.
    """

    def __init__(self, weights: WeightData, L, truncation, hypotheses, epsilon="left-open"):
        self.weights = weights
        self.L = list(L)
        self.truncation = truncation
        self.hypotheses = hypotheses
        self.epsilon = epsilon
        chars = []
        for chi in self.L:
            for psi in weights.group.characters():
                chars.append((chi,) + tuple(psi))
        self.chars = chars
        self.index_of = {c: i for i, c in enumerate(chars)}
        self.distinguished = 0
        self._pieces = {}

    @property
    def vertices(self):
        return list(self.chars)

    @property
    def num_vertices(self):
        return len(self.chars)

    @property
    def n(self):
        return self.weights.n

    def vertex_label(self, v):
        c = self.chars[v]
        return c[0] if len(c) == 1 else list(c)

    def hom_weight(self, a, b):
        """Weight of monomials in ``e_b Lambda e_a`` (maps ``a -> b``)."""
        return self.weights.sub(self.chars[a], self.chars[b])

    def piece(self, a, b, d) -> HomSpace:
        if d > self.truncation:
            raise WindowExhaustedError(f"degree {d} beyond truncation {self.truncation}")
        key = (a, b, d)
        hs = self._pieces.get(key)
        if hs is None:
            basis = [Monomial(e) for e in _exponents_for(self.weights, d, self.hom_weight(a, b))]
            hs = HomSpace(self.chars[a], self.chars[b], d, basis)
            self._pieces[key] = hs
        return hs

    def piece_dim(self, a, b, d):
        return weight_space_dim(self.weights, d, self.hom_weight(a, b))

    def degree_dimension(self, d):
        V = range(self.num_vertices)
        return sum(self.piece_dim(a, b, d) for a in V for b in V)

    def graded_dims(self, D=None):
        D = self.truncation if D is None else D
        return [self.degree_dimension(d) for d in range(D + 1)]

    def identity(self, v):
        return Element({(v, v, (0,) * self.n): 1})

    def element(self, a, b, exps, coeff=1):
        if self.weights.weight(exps) != self.hom_weight(a, b):
            raise ValidationError(f"monomial {exps} is not a map {a} -> {b}")
        return Element({(a, b, tuple(exps)): coeff})

    def blocks(self):
        """Connected components of the vertex graph with an edge wherever a piece is nonzero."""
        V = self.num_vertices
        parent = list(range(V))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in range(V):
            for b in range(V):
                if a == b or find(a) == find(b):
                    continue
                if any(self.piece_dim(a, b, d) for d in range(1, self.truncation + 1)):
                    parent[find(a)] = find(b)
        groups = {}
        for v in range(V):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def dimension_table(self, D=None):
        D = self.truncation if D is None else D
        V = range(self.num_vertices)
        return [[[self.piece_dim(a, b, d) for d in range(D + 1)] for b in V] for a in V]

    def to_dict(self):
        return {
            "vertices": [self.vertex_label(v) for v in range(self.num_vertices)],
            "distinguished_vertex": self.distinguished,
            "truncation": self.truncation,
            "L": self.L,
            "epsilon": self.epsilon,
            "graded_dims": self.graded_dims(),
            "dimension_table": self.dimension_table(),
            "blocks": self.blocks(),
            "hypotheses": self.hypotheses.to_dict(),
        }


def build_nccr(w: WeightData, D=None, epsilon="left-open", strict=False) -> NCCRAlgebra:
    """Assemble the monomial model of ``Lambda`` to degree ``D`` (default ``3n``).

    The hypotheses are evaluated and attached as ``algebra.hypotheses``.
    With ``strict=True`` a failed hypothesis raises ``HypothesisError``;
    otherwise the algebra is still built (it is well defined as soon as the
    torus weights sum to zero) so that diagnostics can be run on it.
    """
    if D is None:
        D = 3 * w.n
    if D < 0:
        raise ValidationError("truncation must be non-negative")
    hyp = hypothesis_report(w)
    if strict and not hyp.gate:
        raise HypothesisError("hypotheses fail: " + ", ".join(hyp.failed()), failed=hyp.failed())
    L = compute_L(w, epsilon)
    return NCCRAlgebra(w, L, D, hyp, epsilon)


def tensor_with_group_algebra(lam: NCCRAlgebra, group: GroupSpec, finite_weights) -> NCCRAlgebra:
    """``kH (x) Lambda`` realised on the vertex set ``L x H^``."""
    if group.is_torus:
        return lam
    w = WeightData(lam.weights.torus_weights, finite_weights, group)
    if not is_unimodular(w):
        raise HypothesisError("combined weights are not unimodular", failed=("unimodular",))
    return build_nccr(w, lam.truncation, lam.epsilon)


# quiver presentation


@dataclass(frozen=True)
class Arrow:
    source: int
    target: int
    degree: int
    exponents: tuple

    @property
    def label(self):
        return monomial_label(self.exponents)

    def to_dict(self):
        return {"source": self.source, "target": self.target, "degree": self.degree, "label": self.label}


@dataclass
class QuiverPresentation:
    vertices: list
    arrows: list
    relations: dict  # (source, target, degree) -> list of {path: coefficient}
    minimal_relations: dict
    degree_bound: int

    def relation_dims(self):
        out = {}
        for (a, b, d), rels in self.relations.items():
            out[d] = out.get(d, 0) + len(rels)
        return out

    def minimal_relation_dims(self):
        out = {}
        for (a, b, d), rels in self.minimal_relations.items():
            out[d] = out.get(d, 0) + len(rels)
        return out

    def relations_in_degree(self, d):
        return [r for (a, b, dd), rels in sorted(self.relations.items()) if dd == d for r in rels]

    def path_label(self, path):
        return "".join(f"[{self.arrows[i].label}]" for i in path)

    def to_dict(self):
        def rel_json(rel):
            return [[list(p), str(c)] for p, c in sorted(rel.items())]

        return {
            "vertices": self.vertices,
            "degree_bound": self.degree_bound,
            "arrows": [a.to_dict() for a in self.arrows],
            "relation_dims": {str(k): v for k, v in sorted(self.relation_dims().items())},
            "minimal_relation_dims": {
                str(k): v for k, v in sorted(self.minimal_relation_dims().items())
            },
            "relations": [
                {"source": a, "target": b, "degree": d, "basis": [rel_json(r) for r in rels]}
                for (a, b, d), rels in sorted(self.relations.items())
                if rels
            ],
        }


def _factors_through_vertex(lam: NCCRAlgebra, a, exps):
    """Does the monomial ``exps: a -> b`` split as two maps of positive degree?"""
    total = sum(exps)
    w = lam.weights
    targets = {lam.hom_weight(a, c) for c in range(lam.num_vertices)}
    for q in product(*(range(k + 1) for k in exps)):
        dq = sum(q)
        if 0 < dq < total and w.weight(q) in targets:
            return True
    return False


def extract_presentation(lam: NCCRAlgebra, degree_bound: int, arrow_bound=None) -> QuiverPresentation:
    """Arrows (a basis of rad/rad^2) and relations (kernel of path evaluation).

    Arrows are searched up to ``arrow_bound`` (default ``degree_bound``),
    relations up to ``degree_bound``.  A path is a tuple of arrow indices
    read as a composite, leftmost applied last.
    """
    if arrow_bound is None:
        arrow_bound = degree_bound
    arrow_bound = max(arrow_bound, 0)
    if max(degree_bound, arrow_bound) > lam.truncation:
        raise WindowExhaustedError("presentation degree exceeds the truncation")
    V = range(lam.num_vertices)
    arrows = []
    for d in range(1, arrow_bound + 1):
        for a in V:
            for b in V:
                for m in lam.piece(a, b, d).basis:
                    if not _factors_through_vertex(lam, a, m.exponents):
                        arrows.append(Arrow(a, b, d, m.exponents))
    arrows.sort(key=lambda x: (x.degree, x.source, x.target, order_key(x.exponents)))

    # paths grouped by (source, target, degree); built by appending arrows on the left
    paths = {}
    by_source = {}
    for idx, ar in enumerate(arrows):
        by_source.setdefault(ar.source, []).append(idx)
        if ar.degree <= degree_bound:
            paths.setdefault((ar.source, ar.target, ar.degree), []).append((idx,))
    for d in range(2, degree_bound + 1):
        for a in V:
            for b in V:
                for d1 in range(1, d):
                    for p in paths.get((a, b, d1), []):
                        for idx in by_source.get(b, []):
                            ar = arrows[idx]
                            if d1 + ar.degree == d:
                                paths.setdefault((a, ar.target, d), []).append((idx,) + p)

    relations = {}
    minimal = {}
    for d in range(1, degree_bound + 1):
        for a in V:
            for b in V:
                plist = sorted(set(paths.get((a, b, d), [])))
                paths[(a, b, d)] = plist
                if not plist:
                    continue
                basis = lam.piece(a, b, d).basis
                pos = {m.exponents: k for k, m in enumerate(basis)}
                # evaluation matrix: rows monomials, columns paths
                rows = [[0] * len(plist) for _ in basis]
                for j, p in enumerate(plist):
                    ex = [0] * lam.n
                    for idx in p:
                        for t, x in enumerate(arrows[idx].exponents):
                            ex[t] += x
                    rows[pos[tuple(ex)]][j] += 1
                ker = nullspace(rows, len(plist))
                rels = [{plist[j]: c for j, c in enumerate(v) if c} for v in ker]
                relations[(a, b, d)] = rels
    # minimal relations: complement of arrow multiples of lower relations
    for (a, b, d), rels in sorted(relations.items()):
        if not rels:
            minimal[(a, b, d)] = []
            continue
        plist = paths[(a, b, d)]
        pidx = {p: j for j, p in enumerate(plist)}
        span = EchelonSpan(len(plist))
        for idx, ar in enumerate(arrows):
            dl = d - ar.degree
            if dl < 1:
                continue
            # arrow applied last: relation a -> ar.source
            if ar.target == b:
                for r in relations.get((a, ar.source, dl), []):
                    vec = [Fraction(0)] * len(plist)
                    for p, c in r.items():
                        vec[pidx[(idx,) + p]] += c
                    span.add(vec)
            # arrow applied first: relation ar.target -> b
            if ar.source == a:
                for r in relations.get((ar.target, b, dl), []):
                    vec = [Fraction(0)] * len(plist)
                    for p, c in r.items():
                        vec[pidx[p + (idx,)]] += c
                    span.add(vec)
        new = []
        for r in rels:
            vec = [Fraction(0)] * len(plist)
            for p, c in r.items():
                vec[pidx[p]] += c
            if span.add(vec):
                new.append(r)
        minimal[(a, b, d)] = new
    return QuiverPresentation(
        vertices=[lam.vertex_label(v) for v in V],
        arrows=arrows,
        relations=relations,
        minimal_relations=minimal,
        degree_bound=degree_bound,
    )


def evaluate_path_combination(lam: NCCRAlgebra, pres: QuiverPresentation, rel) -> Element:
    """Image of a linear combination of paths in ``Lambda``."""
    out = Element()
    for p, c in rel.items():
        el = None
        for idx in p:
            ar = pres.arrows[idx]
            x = lam.element(ar.source, ar.target, ar.exponents)
            el = x if el is None else el * x
        out = out + el.scale(c)
    return out


def path_from_labels(pres: QuiverPresentation, labels):
    """Path for a word of arrow labels such as ``["x1", "x3", "x2"]`` (leftmost applied last).

    Raises ``ValueError`` on unknown labels or non-composable words.
    """
    lookup = {ar.label: k for k, ar in enumerate(pres.arrows)}
    try:
        path = tuple(lookup[x] for x in labels)
    except KeyError as exc:
        raise ValueError(f"unknown arrow {exc.args[0]}") from None
    for left, right in zip(path, path[1:]):
        if pres.arrows[right].target != pres.arrows[left].source:
            raise ValueError("arrows do not compose")
    return path


def relation_in_span(pres: QuiverPresentation, rel) -> bool:
    """Is the path combination ``rel`` in the computed relation space?"""
    if not rel:
        return True
    first = pres.arrows[next(iter(rel))[-1]].source
    last = pres.arrows[next(iter(rel))[0]].target
    deg = sum(pres.arrows[k].degree for k in next(iter(rel)))
    rels = pres.relations.get((first, last, deg), [])
    plist = sorted({p for r in rels for p in r} | set(rel))
    pidx = {p: j for j, p in enumerate(plist)}
    span = EchelonSpan(len(plist))
    for r in rels:
        vec = [Fraction(0)] * len(plist)
        for p, c in r.items():
            vec[pidx[p]] += c
        span.add(vec)
    vec = [Fraction(0)] * len(plist)
    for p, c in rel.items():
        vec[pidx[p]] += Fraction(c)
    return span.contains(vec)


def all_exponents(n, d):
    """Every exponent vector of length ``n`` and total degree ``d``."""
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in all_exponents(n - 1, d - a):
            yield (a,) + rest


def quotient_dims_by_idempotent(lam: NCCRAlgebra, D=None) -> list:
    """``dim (Lambda / Lambda e Lambda)_d`` for ``d = 0 .. D - 2``.

    A monomial ``m: a -> b`` lies in the ideal iff it factors as
    ``m = p q`` with ``q: a -> e`` and ``p: e -> b``, i.e. iff some
    ``q <= m`` has weight ``chi_a - chi_e``.
    """
    D = lam.truncation if D is None else D
    if D > lam.truncation:
        raise WindowExhaustedError("requested window exceeds truncation")
    w = lam.weights
    V = lam.num_vertices
    e = lam.distinguished
    char_index = lam.index_of
    vw = w.variable_weights
    n = w.n
    out = []
    # prefix sub-weight sets, memoised on the exponent prefix
    memo = {(): frozenset([w.zero])}

    def subweights(exps):
        k = len(exps)
        key = exps
        s = memo.get(key)
        if s is not None:
            return s
        prev = subweights(exps[:-1])
        step = vw[k - 1]
        acc = set()
        cur = w.zero
        for _ in range(exps[-1] + 1):
            for q in prev:
                acc.add(w.add(q, cur))
            cur = w.add(cur, step)
        s = frozenset(acc)
        memo[key] = s
        return s

    for d in range(0, D - 1):
        total = 0
        in_ideal = 0
        for m in all_exponents(n, d):
            wt = w.weight(m)
            sub = None
            for a in range(V):
                bchar = w.sub(lam.chars[a], wt)
                b = char_index.get(bchar)
                if b is None:
                    continue
                total += 1
                if sub is None:
                    sub = subweights(m)
                if lam.hom_weight(a, e) in sub:
                    in_ideal += 1
        out.append(total - in_ideal)
    return out
