from fractions import Fraction

from toric_nccr.fdalgebra import StructureConstants


def matrix_algebra(k):
    """Structure constants of ``M_k(Q)`` on the basis ``E_ij``."""
    idx = {(i, j): t for t, (i, j) in enumerate((i, j) for i in range(k) for j in range(k))}
    N = k * k
    table = {}
    for (i, j), s in idx.items():
        for (a, b), t in idx.items():
            if j == a:
                v = [0] * N
                v[idx[(i, b)]] = 1
                table[(s, t)] = v
    unit = [0] * N
    for i in range(k):
        unit[idx[(i, i)]] = 1
    return StructureConstants(N, table, unit)


def diagonal(k):
    table = {}
    for i in range(k):
        v = [0] * k
        v[i] = 1
        table[(i, i)] = v
    return StructureConstants(k, table, [1] * k)


def test_diagonal():
    A = diagonal(4)
    assert A.is_associative() and A.is_unital()
    assert A.radical() == []
    s = A.split()
    assert (s.count, s.status, s.radical_dimension) == (4, "split", 0)


def test_upper_triangular():
    # basis e11, e12, e22
    table = {(0, 0): [1, 0, 0], (0, 1): [0, 1, 0], (1, 2): [0, 1, 0], (2, 2): [0, 0, 1]}
    A = StructureConstants(3, table, [1, 0, 1])
    assert A.is_associative() and A.is_unital()
    assert len(A.radical()) == 1
    assert A.split().count == 2


def test_matrix_algebra_has_two_primitives():
    A = matrix_algebra(2)
    assert A.is_associative() and A.is_unital()
    assert A.split().count == 2
    assert matrix_algebra(3).split().count == 3


def test_field_extension_is_undecided():
    # Q(i): 1, i with i^2 = -1 has no idempotents but is not split over Q
    table = {(0, 0): [1, 0], (0, 1): [0, 1], (1, 0): [0, 1], (1, 1): [-1, 0]}
    A = StructureConstants(2, table, [1, 0])
    s = A.split()
    assert s.status == "undecided" and s.count is None


def test_nonassociative_detected():
    table = {(0, 0): [0, 1], (1, 0): [1, 0]}
    A = StructureConstants(2, table, [0, 0])
    assert not A.is_associative()
    assert not A.is_unital()


def test_mul_matches_table():
    A = matrix_algebra(2)
    x = [Fraction(1), Fraction(2), 0, 0]
    y = [0, 0, Fraction(3), 0]
    assert A.mul(x, y) == [6, 0, 0, 0]
