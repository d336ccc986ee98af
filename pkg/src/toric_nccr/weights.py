"""Weight data for a rank one torus, optionally times a finite abelian group.

A variable ``x_i`` carries an integer torus weight ``chi_i`` and, when a
finite group ``Z/m_1 x ... x Z/m_k`` is present, a residue vector ``c_i``.
Combined weights are stored as tuples ``(t, r_1, ..., r_k)`` with the
residues reduced into ``[0, m_j)``.  Characters of the whole group use the
same tuple format, so weight arithmetic and character arithmetic coincide.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, prod

from .errors import HypothesisError, TorusRankError, ValidationError

__all__ = [
    "GroupSpec",
    "WeightData",
    "EffectivenessReport",
    "check_effectiveness",
    "is_quasi_symmetric",
    "is_unimodular",
    "is_generic",
    "generic_pair",
    "compute_L",
    "parse_weights",
]


@dataclass(frozen=True)
class GroupSpec:
    """``G = (k^*)^r x Z/m_1 x ... x Z/m_k``.  Only ``r = 1`` is supported."""

    torus_rank: int = 1
    invariant_factors: tuple = ()

    def __post_init__(self):
        if self.torus_rank != 1:
            raise TorusRankError(
                f"torus rank {self.torus_rank} is not supported; only rank 1 is"
            )
        facs = tuple(int(m) for m in self.invariant_factors)
        if any(m < 2 for m in facs):
            raise ValidationError("invariant factors must be >= 2")
        object.__setattr__(self, "invariant_factors", facs)

    @property
    def order(self):
        return prod(self.invariant_factors)

    @property
    def is_torus(self):
        return not self.invariant_factors

    def characters(self):
        """Characters of the finite part as residue tuples, lexicographic."""
        return [tuple(c) for c in product(*(range(m) for m in self.invariant_factors))]


@dataclass(frozen=True)
class WeightData:
    torus_weights: tuple
    finite_weights: tuple = ()
    group: GroupSpec = field(default_factory=GroupSpec)

    def __post_init__(self):
        tw = tuple(int(x) for x in self.torus_weights)
        if len(tw) < 2:
            raise ValidationError("need at least two variables")
        object.__setattr__(self, "torus_weights", tw)
        facs = self.group.invariant_factors
        if facs:
            fw = tuple(tuple(int(c) for c in row) for row in self.finite_weights)
            if len(fw) != len(tw):
                raise ValidationError(
                    f"{len(fw)} residue vectors for {len(tw)} variables"
                )
            if any(len(row) != len(facs) for row in fw):
                raise ValidationError("residue vector length differs from group rank")
            fw = tuple(tuple(c % m for c, m in zip(row, facs)) for row in fw)
            object.__setattr__(self, "finite_weights", fw)
        elif self.finite_weights and any(len(r) for r in self.finite_weights):
            raise ValidationError("residues given but the finite group is trivial")
        else:
            object.__setattr__(self, "finite_weights", ())

    # basic data
    @property
    def n(self):
        return len(self.torus_weights)

    @property
    def has_finite_part(self):
        return bool(self.group.invariant_factors)

    @property
    def moduli(self):
        return self.group.invariant_factors

    def torus_only(self):
        return WeightData(self.torus_weights)

    @property
    def variable_weights(self):
        """Combined weight of each variable."""
        if not self.has_finite_part:
            return tuple((c,) for c in self.torus_weights)
        return tuple((c,) + r for c, r in zip(self.torus_weights, self.finite_weights))

    # character arithmetic
    def character(self, value):
        """Normalise an int or tuple into a combined character tuple."""
        k = len(self.moduli)
        if isinstance(value, int):
            return (value,) + (0,) * k
        value = tuple(int(x) for x in value)
        if len(value) == 1 and k:
            value = value + (0,) * k
        if len(value) != k + 1:
            raise ValidationError(f"character {value} has wrong length")
        return (value[0],) + tuple(r % m for r, m in zip(value[1:], self.moduli))

    def add(self, a, b):
        return (a[0] + b[0],) + tuple((x + y) % m for x, y, m in zip(a[1:], b[1:], self.moduli))

    def sub(self, a, b):
        return (a[0] - b[0],) + tuple((x - y) % m for x, y, m in zip(a[1:], b[1:], self.moduli))

    def neg(self, a):
        return (-a[0],) + tuple((-x) % m for x, m in zip(a[1:], self.moduli))

    @property
    def zero(self):
        return (0,) + (0,) * len(self.moduli)

    def weight(self, exps):
        """Combined weight of the monomial with exponent vector ``exps``."""
        t = sum(a * c for a, c in zip(exps, self.torus_weights))
        if not self.has_finite_part:
            return (t,)
        res = []
        for j, m in enumerate(self.moduli):
            res.append(sum(a * row[j] for a, row in zip(exps, self.finite_weights)) % m)
        return (t,) + tuple(res)

    def to_dict(self):
        d = {"torus_weights": list(self.torus_weights)}
        if self.has_finite_part:
            d["invariant_factors"] = list(self.moduli)
            d["finite_weights"] = [list(r) for r in self.finite_weights]
        return d


def parse_weights(weights, finite=None):
    """Build ``WeightData`` from command line style strings.

    ``weights`` is a comma separated list of integers.  ``finite`` has the
    form ``"m:c1,c2,...,cn"`` for a single cyclic factor, or several such
    blocks separated by ``;``.
    """
    try:
        tw = tuple(int(x) for x in str(weights).split(",") if x.strip())
    except ValueError as exc:
        raise ValidationError(f"cannot parse weights {weights!r}") from exc
    if not finite:
        return WeightData(tw)
    mods, cols = [], []
    for block in str(finite).split(";"):
        block = block.strip()
        if not block:
            continue
        try:
            m, cs = block.split(":")
            mods.append(int(m))
            cols.append([int(c) for c in cs.split(",")])
        except ValueError as exc:
            raise ValidationError(f"cannot parse finite data {block!r}") from exc
    if any(len(c) != len(tw) for c in cols):
        raise ValidationError("each residue list needs one entry per variable")
    rows = tuple(tuple(col[i] for col in cols) for i in range(len(tw)))
    return WeightData(tw, rows, GroupSpec(1, tuple(mods)))


@dataclass
class EffectivenessReport:
    cond_two_sided: bool
    cond_sum_zero: bool
    cond_pairwise_gcd: bool
    positive_count: int
    negative_count: int
    bad_pairs: list
    faithful: bool

    @property
    def effective(self):
        return self.cond_two_sided and self.cond_sum_zero and self.cond_pairwise_gcd

    def failed_conditions(self):
        out = []
        if not self.cond_two_sided:
            out.append("(1) at least two positive and two negative weights")
        if not self.cond_sum_zero:
            out.append("(2) weights sum to zero")
        if not self.cond_pairwise_gcd:
            out.append("(3) coprime mixed-sign pairs")
        return out

    def to_dict(self):
        return {
            "effective": self.effective,
            "cond_two_sided": self.cond_two_sided,
            "cond_sum_zero": self.cond_sum_zero,
            "cond_pairwise_gcd": self.cond_pairwise_gcd,
            "positive_count": self.positive_count,
            "negative_count": self.negative_count,
            "bad_pairs": [list(p) for p in self.bad_pairs],
            "faithful": self.faithful,
            "failed": self.failed_conditions(),
        }


def check_effectiveness(w: WeightData) -> EffectivenessReport:
    """Effectiveness of the torus action, one flag per condition.

    Two-sidedness asks for at least two strictly positive and two strictly
    negative weights.  The gcd condition asks ``gcd(chi_i, chi_j) = 1``
    whenever ``chi_i chi_j < 0``.  Faithfulness (gcd of all weights is 1)
    is reported for information only.
    """
    chi = w.torus_weights
    pos = sum(1 for c in chi if c > 0)
    neg = sum(1 for c in chi if c < 0)
    bad = []
    for i in range(len(chi)):
        for j in range(i + 1, len(chi)):
            if chi[i] * chi[j] < 0 and gcd(chi[i], chi[j]) != 1:
                bad.append((i, j))
    g = 0
    for c in chi:
        g = gcd(g, c)
    return EffectivenessReport(
        cond_two_sided=pos >= 2 and neg >= 2,
        cond_sum_zero=sum(chi) == 0,
        cond_pairwise_gcd=not bad,
        positive_count=pos,
        negative_count=neg,
        bad_pairs=bad,
        faithful=g == 1,
    )


def is_quasi_symmetric(w: WeightData) -> bool:
    """For a rank one torus this is just ``sum(chi) == 0``."""
    return sum(w.torus_weights) == 0


def is_unimodular(w: WeightData) -> bool:
    """Determinant of the representation is trivial on the whole group."""
    if sum(w.torus_weights) != 0:
        return False
    for j, m in enumerate(w.moduli):
        if sum(row[j] for row in w.finite_weights) % m:
            return False
    return True


def _element_order(z, moduli):
    order = 1
    for r, m in zip(z, moduli):
        k = m // gcd(r % m, m)
        order = order * k // gcd(order, k)
    return order


def generic_pair(w: WeightData, i: int, j: int) -> bool:
    """Do the combined weights of ``x_i`` and ``x_j`` generate ``Z x H``?

    The torus parts must be coprime.  When they are, the subgroup meets
    ``{0} x H`` in the cyclic group generated by
    ``chi_j c_i - chi_i c_j``, so that element has to generate ``H``.
    """
    a, b = w.torus_weights[i], w.torus_weights[j]
    if gcd(a, b) != 1:
        return False
    if not w.has_finite_part:
        return True
    ci, cj = w.finite_weights[i], w.finite_weights[j]
    z = tuple(b * x - a * y for x, y in zip(ci, cj))
    return _element_order(z, w.moduli) == w.group.order


def is_generic(w: WeightData) -> bool:
    """Criterion-based genericity test.

    Requires two-sidedness and, for every pair of weights of opposite sign,
    that the pair generates the character group.  For a pure torus this is
    the same as effectiveness.
    """
    chi = w.torus_weights
    if not check_effectiveness(w).cond_two_sided:
        return False
    for i in range(len(chi)):
        for j in range(i + 1, len(chi)):
            if chi[i] * chi[j] < 0 and not generic_pair(w, i, j):
                return False
    return True


def compute_L(w: WeightData, epsilon: str = "left-open") -> list:
    """Integer characters in ``(-P/2, P/2]`` where ``P`` is the sum of positive weights.

    ``epsilon="right-open"`` uses ``[-P/2, P/2)`` instead.  The torus part
    of the weights must sum to zero.
    """
    if not is_quasi_symmetric(w):
        raise HypothesisError(
            f"torus weights sum to {sum(w.torus_weights)}, not 0", failed=("quasi-symmetric",)
        )
    p = sum(c for c in w.torus_weights if c > 0)
    half = Fraction(p, 2)
    lo, hi = -half, half
    if epsilon == "left-open":
        vals = [k for k in range(int(lo) - 1, int(hi) + 2) if lo < k <= hi]
    elif epsilon == "right-open":
        vals = [k for k in range(int(lo) - 1, int(hi) + 2) if lo <= k < hi]
    else:
        raise ValidationError(f"unknown epsilon convention {epsilon!r}")
    return vals
