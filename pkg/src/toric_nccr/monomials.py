"""Weight spaces of the polynomial ring, Hilbert series and Hilbert bases.

Monomials are exponent tuples.  The fixed monomial order is graded
lexicographic with ``x1 > x2 > ... > xn``; bases are listed from the largest
monomial down.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from .errors import WindowExhaustedError
from .weights import WeightData

__all__ = [
    "Monomial",
    "WeightSpace",
    "TruncatedSeries",
    "GorensteinReport",
    "enumerate_monomials",
    "iter_exponents",
    "weight_space_dim",
    "invariant_hilbert_basis",
    "hilbert_series",
    "gorenstein_symmetry_check",
    "monomial_label",
    "order_key",
]


def order_key(exps):
    """Sort key so that ``sorted(..., key=order_key)`` lists largest first."""
    return (-sum(exps), tuple(-a for a in exps))


def monomial_label(exps):
    parts = []
    for i, a in enumerate(exps, start=1):
        if a == 1:
            parts.append(f"x{i}")
        elif a > 1:
            parts.append(f"x{i}^{a}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True, order=False)
class Monomial:
    exponents: tuple

    @property
    def degree(self):
        return sum(self.exponents)

    def weight_in(self, w: WeightData):
        return w.weight(self.exponents)

    def __mul__(self, other):
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def divides(self, other):
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __str__(self):
        return monomial_label(self.exponents)


@dataclass
class WeightSpace:
    degree: int
    weight: tuple
    basis: list

    @property
    def dimension(self):
        return len(self.basis)


def iter_exponents(chi, degree, target):
    """Yield exponent tuples of total degree ``degree`` and torus weight ``target``.

    The output order is descending lexicographic, which within one degree
    is the canonical order.
    """
    n = len(chi)
    if degree < 0 or n == 0:
        return
    # bounds on the torus weight reachable by the tail x_i, ..., x_n
    tail_min = [min(chi[i:]) for i in range(n)]
    tail_max = [max(chi[i:]) for i in range(n)]
    out = [0] * n

    def rec(i, rem, t):
        if i == n - 1:
            if chi[i] * rem == t:
                out[i] = rem
                yield tuple(out)
            return
        if not (tail_min[i] * rem <= t <= tail_max[i] * rem):
            return
        for a in range(rem, -1, -1):
            out[i] = a
            yield from rec(i + 1, rem - a, t - a * chi[i])
        out[i] = 0

    yield from rec(0, degree, target)


def _exponents_for(w: WeightData, degree, weight):
    weight = w.character(weight)
    chi = w.torus_weights
    if not w.has_finite_part:
        return list(_torus_exponents(chi, degree, weight[0]))
    res = weight[1:]
    out = []
    for exps in _torus_exponents(chi, degree, weight[0]):
        if w.weight(exps)[1:] == res:
            out.append(exps)
    return out


@lru_cache(maxsize=200000)
def _torus_exponents(chi, degree, target):
    return tuple(iter_exponents(chi, degree, target))


def enumerate_monomials(w: WeightData, degree: int, weight, truncation=None) -> WeightSpace:
    """Basis of ``R_{d, chi}`` sorted by the canonical order."""
    if truncation is not None and degree > truncation:
        raise WindowExhaustedError(f"degree {degree} exceeds truncation {truncation}")
    weight = w.character(weight)
    basis = [Monomial(e) for e in _exponents_for(w, degree, weight)]
    return WeightSpace(degree, weight, basis)


@lru_cache(maxsize=4096)
def _count_table(w: WeightData, degree: int):
    """``table[d][weight] = #monomials`` for ``d <= degree``, by dynamic programming."""
    table = [dict() for _ in range(degree + 1)]
    table[0][w.zero] = 1
    for vw in w.variable_weights:
        # unbounded knapsack over one more variable
        for d in range(1, degree + 1):
            cur = table[d]
            prev = table[d - 1]
            for wt, cnt in list(prev.items()):
                key = w.add(wt, vw)
                cur[key] = cur.get(key, 0) + cnt
    return table


def weight_space_dim(w: WeightData, degree: int, weight) -> int:
    """Dimension of ``R_{d, chi}`` without listing monomials.

    Counts are Python integers, so they never overflow.
    """
    if degree < 0:
        return 0
    weight = w.character(weight)
    return _count_table(w, degree)[degree].get(weight, 0)


def invariant_hilbert_basis(w: WeightData, bound=None):
    """Minimal generators of the monoid of invariant exponent vectors.

    An invariant monomial of degree ``d`` is a generator iff it is not
    divisible by a generator of smaller degree.  Generators have degree at
    most ``n * max|chi| * |H|``; the search is rerun two degrees further to
    certify that nothing new appears.
    """
    n = w.n
    if bound is None:
        bound = n * max(abs(c) for c in w.torus_weights) * w.group.order
    gens = []
    for d in range(1, bound + 3):
        for exps in _exponents_for(w, d, w.zero):
            if not any(all(a >= b for a, b in zip(exps, g)) for g in gens):
                if d > bound:
                    raise WindowExhaustedError(
                        f"Hilbert basis element {exps} beyond bound {bound}"
                    )
                gens.append(exps)
    gens.sort(key=order_key)
    return [Monomial(g) for g in gens]


@dataclass
class TruncatedSeries:
    coefficients: list
    truncation: int

    def __getitem__(self, d):
        return self.coefficients[d]

    def to_list(self):
        return list(self.coefficients)


def hilbert_series(w: WeightData, truncation: int) -> TruncatedSeries:
    """Hilbert function ``d -> dim R^G_d`` for ``d <= truncation``."""
    return TruncatedSeries(
        [weight_space_dim(w, d, w.zero) for d in range(truncation + 1)], truncation
    )


@dataclass
class GorensteinReport:
    status: str  # "confirmed", "violated" or "inconclusive"
    numerator: list = field(default_factory=list)
    a: int | None = None
    symmetry_sign: int | None = None
    reason: str = ""

    def to_dict(self):
        return {
            "status": self.status,
            "numerator": self.numerator,
            "a": self.a,
            "symmetry_sign": self.symmetry_sign,
            "reason": self.reason,
        }


def gorenstein_symmetry_check(series: TruncatedSeries, generator_degrees, n: int) -> GorensteinReport:
    """Stanley's symmetry test on a truncated Hilbert series.

    Writes ``H(t) = N(t) / prod(1 - t^d)`` over the degrees of a generating
    set.  ``N`` is a polynomial of degree below ``sum(d)``, so it is known
    exactly once the window reaches ``sum(d) + n``.  The ring is Gorenstein
    (it is a Cohen-Macaulay domain here) iff ``N`` is palindromic up to a
    sign, with sign matching the Krull dimension ``n - 1``.
    """
    degs = [int(d) for d in generator_degrees]
    total = sum(degs)
    D = series.truncation
    if D < total + n:
        return GorensteinReport(
            "inconclusive", reason=f"window {D} below required {total + n}"
        )
    num = list(series.coefficients[: D + 1])
    for d in degs:
        nxt = num[:]
        for k in range(d, D + 1):
            nxt[k] -= num[k - d]
        num = nxt
    # the numerator must vanish between sum(degs) and D
    if any(num[k] for k in range(total, D + 1)):
        return GorensteinReport(
            "inconclusive", numerator=num, reason="numerator did not stabilise in window"
        )
    while num and num[-1] == 0:
        num.pop()
    s = len(num) - 1
    rev = num[::-1]
    if rev == num:
        eps = 1
    elif rev == [-c for c in num]:
        eps = -1
    else:
        return GorensteinReport("violated", numerator=num, reason="numerator not palindromic")
    # H(1/t) = (-1)^{g} eps t^{sum d - s} H(t); Gorenstein domains of
    # dimension n-1 have (-1)^{n-1} here
    g = len(degs)
    sign = (-1) ** g * eps
    a = total - s
    if sign != (-1) ** (n - 1):
        return GorensteinReport(
            "violated", numerator=num, a=a, symmetry_sign=sign,
            reason="symmetry sign does not match the dimension",
        )
    return GorensteinReport("confirmed", numerator=num, a=a, symmetry_sign=sign)
