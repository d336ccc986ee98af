"""Modules of covariants and their hom-spaces as monomial spans.

An element ``v (x) m`` of ``V_chi (x) R`` is invariant iff ``wt(m) + chi = 0``,
so ``M(V_chi)`` is spanned by monomials of weight ``-chi`` and
``Hom(M(V_a), M(V_b))`` by monomials of weight ``a - b``.  Composition is
multiplication of monomials.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .monomials import Monomial, WeightSpace, enumerate_monomials
from .weights import WeightData

__all__ = [
    "CovariantModule",
    "HomSpace",
    "HomMonomial",
    "covariant_module",
    "hom_basis",
    "hom_monomial",
    "compose",
]


@dataclass
class CovariantModule:
    character: tuple
    bases: list  # WeightSpace per degree

    def dimension(self, d):
        return self.bases[d].dimension


@dataclass
class HomSpace:
    source: tuple
    target: tuple
    degree: int
    basis: list

    @property
    def dimension(self):
        return len(self.basis)


@dataclass(frozen=True)
class HomMonomial:
    """A monomial viewed as a morphism ``M(V_source) -> M(V_target)``."""

    source: tuple
    target: tuple
    monomial: Monomial

    @property
    def degree(self):
        return self.monomial.degree


def covariant_module(w: WeightData, chi, D: int) -> CovariantModule:
    chi = w.character(chi)
    minus = w.neg(chi)
    return CovariantModule(chi, [enumerate_monomials(w, d, minus) for d in range(D + 1)])


def hom_basis(w: WeightData, a, b, d: int) -> HomSpace:
    """Monomials of degree ``d`` and weight ``a - b``."""
    a, b = w.character(a), w.character(b)
    ws: WeightSpace = enumerate_monomials(w, d, w.sub(a, b))
    return HomSpace(a, b, d, ws.basis)


def compose(f: HomMonomial, g: HomMonomial) -> HomMonomial:
    """``f o g`` for ``g: a -> b`` and ``f: b -> c``."""
    if g.target != f.source:
        raise ValidationError(
            f"cannot compose: {g.source}->{g.target} then {f.source}->{f.target}"
        )
    return HomMonomial(g.source, f.target, f.monomial * g.monomial)


def hom_monomial(w: WeightData, a, b, exps) -> HomMonomial:
    """Wrap ``exps`` as a morphism ``a -> b`` after checking its weight."""
    a, b = w.character(a), w.character(b)
    if w.weight(exps) != w.sub(a, b):
        raise ValidationError(f"monomial {exps} does not have weight a - b")
    return HomMonomial(a, b, Monomial(tuple(exps)))
