from math import comb

import pytest

from oracles import brute_hilbert_basis, brute_weight_space, generates
from toric_nccr.monomials import (
    enumerate_monomials,
    gorenstein_symmetry_check,
    hilbert_series,
    invariant_hilbert_basis,
    weight_space_dim,
)
from toric_nccr.weights import WeightData, parse_weights


def W(*chi):
    return WeightData(tuple(chi))


def labels(ws):
    return [str(m) for m in ws.basis]


def test_enumerate_examples():
    w = W(1, 1, -1, -1)
    assert labels(enumerate_monomials(w, 1, -1)) == ["x3", "x4"]
    assert labels(enumerate_monomials(w, 0, 0)) == ["1"]
    assert [m.exponents for m in enumerate_monomials(w, 2, 0).basis] == [
        (1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1)
    ]


def test_weight_space_dim_examples():
    w = W(1, 1, -1, -1)
    assert weight_space_dim(w, 2, 0) == 4
    assert weight_space_dim(w, 0, 0) == 1
    assert weight_space_dim(w, 1, 1) == 2
    assert weight_space_dim(w, -1, 0) == 0


@pytest.mark.parametrize("chi", [(1, 1, -1, -1), (3, 1, -2, -2), (1, 1, 1, -1, -2), (1, 1, 1, -1, -1, -1)])
def test_total_count_is_binomial(chi):
    w = W(*chi)
    n = len(chi)
    bound = max(abs(c) for c in chi)
    for d in range(7):
        total = sum(weight_space_dim(w, d, t) for t in range(-bound * d, bound * d + 1))
        assert total == comb(n - 1 + d, d)


def test_group_weight_space_matches_brute_force():
    w = parse_weights("1,1,-1,-1", "2:1,1,1,1")
    for d in range(6):
        for t in range(-d, d + 1):
            for r in range(2):
                expect = brute_weight_space((1, 1, -1, -1), ((1,), (1,), (1,), (1,)), (2,), d, (t, r))
                assert sorted(m.exponents for m in enumerate_monomials(w, d, (t, r)).basis) == expect


@pytest.mark.parametrize("chi,expected", [
    ((1, 1, -1, -1), ["x1*x3", "x1*x4", "x2*x3", "x2*x4"]),
    ((1, -1), ["x1*x2"]),
    ((2, -1, -1), ["x1*x2^2", "x1*x2*x3", "x1*x3^2"]),
])
def test_hilbert_basis_examples(chi, expected):
    assert sorted(str(m) for m in invariant_hilbert_basis(W(*chi))) == sorted(expected)


def test_gorenstein_examples():
    w = W(1, 1, -1, -1)
    rep = gorenstein_symmetry_check(hilbert_series(w, 16), [2, 2, 2, 2], 4)
    assert rep.status == "confirmed" and rep.a == 4
    assert rep.numerator[:5] == [1, 0, 0, 0, -1]
    rep = gorenstein_symmetry_check(hilbert_series(W(1, -1), 8), [2], 2)
    assert rep.status == "confirmed" and rep.a == 2 and rep.numerator[:1] == [1]
    w = W(1, 1, 1, -1, -1, -1)
    degs = [m.degree for m in invariant_hilbert_basis(w)]
    rep = gorenstein_symmetry_check(hilbert_series(w, sum(degs) + 6), degs, 6)
    assert rep.status == "confirmed" and rep.a == 6


def test_gorenstein_small_window_is_inconclusive():
    rep = gorenstein_symmetry_check(hilbert_series(W(1, 1, -1, -1), 6), [2, 2, 2, 2], 4)
    assert rep.status == "inconclusive"


def test_hilbert_series_is_weight_zero_count():
    w = W(3, 1, -2, -2)
    s = hilbert_series(w, 8)
    for d in range(9):
        assert s[d] == len(brute_weight_space((3, 1, -2, -2), (), (), d, (0,)))


def test_hilbert_basis_generates_and_is_primitive():
    chi = (3, 1, -2, -2)
    basis = [m.exponents for m in invariant_hilbert_basis(W(*chi))]
    top = 2 * max(sum(b) for b in basis)
    assert sorted(basis) == brute_hilbert_basis(chi, (), (), top)
    assert generates(basis, chi, (), (), top)
