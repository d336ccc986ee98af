import pytest

from toric_nccr.errors import HypothesisError
from toric_nccr.homological import hom_complexes
from toric_nccr.nccr import build_nccr
from toric_nccr.tilting import (
    build_group_tilting,
    build_tilting_object,
    endomorphism_algebra,
    verify_ext_vanishing,
)
from toric_nccr.weights import WeightData, parse_weights


@pytest.fixture(scope="module")
def conifold():
    lam = build_nccr(WeightData((1, 1, -1, -1)), 12)
    return build_tilting_object(lam)


def test_components(conifold):
    E = conifold
    assert len(E.components) == 4
    assert [c.m for c in E.components] == [0, 0, 0, 2]
    assert all(c.conditions_hold for c in E.components[1:])
    assert E.tail_check["ok"]
    assert [label for label, _ in E.ext_representatives] == [
        "(1-e)Lambda", "(1-e)Lambda(1)", "P~_-2(2)", "P~_-3(3)"
    ]
    last = E.components[3].normalized
    assert last.betti_table() == [[0, 0], [-1]]
    for c in E.components:
        assert c.raw.check_d_squared() and c.normalized.check_d_squared()
    # (1-e)Lambda e is the module of covariants M(V_1): x3, x4 in degree 1
    assert E.components[0].restricted.graded_dims[0][1] == 2


def test_ext_table(conifold):
    ext = verify_ext_vanishing(conifold, range(-3, 4))
    assert ext.totals == {-3: 0, -2: 0, -1: 0, 0: 4, 1: 0, 2: 0, 3: 0}
    assert ext.vanishes_off_zero
    assert ext.pairs[0] == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    assert verify_ext_vanishing(conifold, [9, -9]).totals == {9: 0, -9: 0}


def test_end_algebra(conifold):
    end = endomorphism_algebra(conifold)
    assert end.dimension == 4 and end.is_diagonal
    assert end.associative and end.unital
    assert end.split.count == 4 and end.split.radical_dimension == 0
    assert end.blocks == [[0], [1], [2], [3]]


def test_rejects_bad_input():
    with pytest.raises(HypothesisError):
        build_tilting_object(build_nccr(WeightData((2, 2, -2, -2)), 8))
    with pytest.raises(HypothesisError):
        build_tilting_object(build_nccr(WeightData((1, -1)), 8))


def test_group_trivial_matches(conifold):
    lam = build_nccr(WeightData((1, 1, -1, -1)), 12)
    G = build_group_tilting(lam)
    assert [c.normalized.betti_table() for c in G.components] == [
        c.normalized.betti_table() for c in conifold.components
    ]


def test_group_case():
    w = parse_weights("1,1,-1,-1", "2:1,1,1,1")
    G = build_group_tilting(build_nccr(w))
    assert len(G.components) == 4
    assert all(c.conditions_hold for c in G.components[1:])
    ext = verify_ext_vanishing(G)
    assert ext.vanishes_off_zero
    end_g = endomorphism_algebra(G, check_associativity=False)
    end = endomorphism_algebra(build_tilting_object(build_nccr(WeightData((1, 1, -1, -1)))))
    assert end_g.dimension >= end.dimension
    assert end_g.unital and end_g.split.status == "split"


@pytest.mark.parametrize("chi", [(3, 1, -2, -2), (1, 1, 1, -1, -2)])
def test_end_properties(chi):
    E = build_tilting_object(build_nccr(WeightData(chi)))
    end = endomorphism_algebra(E)
    assert end.associative and end.unital
    assert end.dimension >= len(E.components)
    for a, row in enumerate(end.block_dims):
        assert row[a] >= 1
        for b, d in enumerate(row):
            assert d == hom_complexes(E.ext_representatives[a][1], E.ext_representatives[b][1], 0).dimension
    assert end.split.status == "split" and end.split.count >= len(E.components)


def test_faithful_group_case():
    w = parse_weights("1,1,-1,-1", "3:1,2,0,0")
    lam = build_nccr(w)
    assert lam.num_vertices == 6 and lam.blocks() == [[0, 1, 2, 3, 4, 5]]
    G = build_group_tilting(lam)
    assert [c.m for c in G.components] == [0, 0, 0, 2]
    assert verify_ext_vanishing(G).vanishes_off_zero
    end = endomorphism_algebra(G, check_associativity=False)
    assert end.unital and end.split.status == "split"
