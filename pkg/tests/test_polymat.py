"""Determinants, minors, ranks, solving and nullspaces."""

import random
from fractions import Fraction

import pytest

from locspan import (
    QQ,
    PolyMatrix,
    Polynomial,
    PrimeField,
    ScalarMatrix,
    local_only_example,
    fraction_span_only_example,
    nullspace_over_field,
    rank,
    solve_over_field,
)

from support import cofactor_det, random_polynomial, variables


def test_det_2x2_formula():
    y1, y2, y3, y4 = variables(4)
    m = PolyMatrix([[y1, y2], [y3, y4]])
    assert m.det() == y1 * y4 - y2 * y3


def test_det_identity():
    one = Polynomial.one(3, QQ)
    zero = Polynomial.zero(3, QQ)
    m = PolyMatrix([[one if i == j else zero for j in range(3)]
                    for i in range(3)])
    assert m.det().is_one()


def test_det_golden_lower_triangular_minor():
    # rows {1,3,4} of the n=4 family basis matrix: diagonal y1, y1, y1
    q = local_only_example(4, 3).basis_matrix
    sub = q.submatrix((0, 2, 3), range(3))
    y1 = Polynomial.variable(0, 4, QQ)
    assert sub.det() == y1 ** 3
    assert cofactor_det(sub) == y1 ** 3


def test_minors_1x1():
    y1, y2, _ = variables(3)
    zero = Polynomial.zero(3, QQ)
    m = PolyMatrix([[y1, zero], [zero, y2]])
    got = m.minors(1)
    assert [(r, c) for r, c, _ in got] == [
        ((0,), (0,)), ((0,), (1,)), ((1,), (0,)), ((1,), (1,))]
    assert [p for _, _, p in got] == [y1, zero, zero, y2]


def test_minors_range_check():
    y1, y2, _ = variables(3)
    column = PolyMatrix([[y1], [y2]])
    with pytest.raises(ValueError):
        column.minors(2)


def test_minors_golden_maximal_of_family_matrix():
    q = local_only_example(4, 3).basis_matrix
    y1 = Polynomial.variable(0, 4, QQ)
    y2 = Polynomial.variable(1, 4, QQ)
    values = {rows: det for rows, _, det in q.minors(3)}
    assert values[(0, 1, 2)].is_zero()
    assert values[(0, 1, 3)].is_zero()
    assert values[(0, 2, 3)] == y1 ** 3
    assert values[(1, 2, 3)] == y1 ** 2 * y2
    for rows, _, det in q.minors(3):
        assert det == cofactor_det(q.submatrix(rows, range(3)))


def test_rank_over_fractions():
    q = local_only_example(4, 3).basis_matrix
    assert q.rank_over_fractions() == 3
    zero = Polynomial.zero(3, QQ)
    assert PolyMatrix([[zero, zero], [zero, zero]]).rank_over_fractions() == 0
    y1, y2, y3 = variables(3)
    proportional = PolyMatrix.from_columns(
        [(y1, y2, y3), (y1.scale(2), y2.scale(2), y3.scale(2))])
    assert proportional.rank_over_fractions() == 1


def test_solve_identity_and_inconsistent():
    identity = ScalarMatrix.identity(3, QQ)
    assert solve_over_field(identity, (1, 2, 3)) == (1, 2, 3)
    inconsistent = ScalarMatrix([[1, 0], [1, 0]], QQ)
    assert solve_over_field(inconsistent, (1, 2)) is None


def test_solve_free_variable_convention():
    wide = ScalarMatrix([[1, 1]], QQ)
    assert solve_over_field(wide, (3,)) == (3, 0)


def test_nullspace():
    zero2 = ScalarMatrix.zeros(2, 2, QQ)
    assert nullspace_over_field(zero2) == [(1, 0), (0, 1)]
    assert nullspace_over_field(ScalarMatrix.identity(2, QQ)) == []
    assert nullspace_over_field(ScalarMatrix([[1, 1]], QQ)) == [(-1, 1)]


def test_evaluate_matrix():
    counterexample = fraction_span_only_example(3)
    evaluated = counterexample.basis_matrix.evaluate((0, 1, 1))
    assert evaluated == ScalarMatrix([[0, 0], [0, 0], [1, 0]], QQ)

    y1, y2, _ = variables(3)
    m = PolyMatrix([[y1 + 1, y2]])
    assert m.evaluate((0, 0, 0)) == ScalarMatrix([[1, 0]], QQ)


def test_det_matches_cofactor_oracle_random():
    rng = random.Random(11)
    for _ in range(60):
        size = rng.randint(1, 4)
        m = PolyMatrix([[random_polynomial(rng, 3, max_degree=1, max_terms=2)
                         for _ in range(size)] for _ in range(size)])
        assert m.det() == cofactor_det(m)


def test_evaluation_commutes_with_det():
    rng = random.Random(12)
    for _ in range(30):
        size = rng.randint(1, 3)
        m = PolyMatrix([[random_polynomial(rng, 3, max_degree=2, max_terms=2)
                         for _ in range(size)] for _ in range(size)])
        point = tuple(Fraction(rng.randint(-3, 3)) for _ in range(3))
        direct = m.det().evaluate(point)
        via_matrix = m.evaluate(point)
        scalar_det = PolyMatrix(
            [[Polynomial.constant(via_matrix[i, j], 3, QQ)
              for j in range(size)] for i in range(size)]).det()
        assert scalar_det.constant_value() == direct


def test_rank_equals_largest_nonzero_minor():
    rng = random.Random(13)
    for _ in range(25):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 3)
        m = PolyMatrix([[random_polynomial(rng, 3, max_degree=1, max_terms=2)
                         for _ in range(cols)] for _ in range(rows)])
        largest = 0
        for s in range(1, min(rows, cols) + 1):
            if any(not det.is_zero() for _, _, det in m.minors(s)):
                largest = s
        assert m.rank_over_fractions() == largest


def test_solutions_solve_the_system():
    rng = random.Random(14)
    F5 = PrimeField(5)
    for field in (QQ, F5):
        for _ in range(25):
            rows = rng.randint(1, 4)
            cols = rng.randint(1, 4)
            a = ScalarMatrix([[rng.randint(-3, 3) for _ in range(cols)]
                              for _ in range(rows)], field)
            b = [rng.randint(-3, 3) for _ in range(rows)]
            x = solve_over_field(a, b)
            if x is not None:
                assert a.matvec(x) == tuple(field.normalize(v) for v in b)
            for v in nullspace_over_field(a):
                assert a.matvec(v) == tuple(field.zero for _ in range(rows))
            assert len(nullspace_over_field(a)) == cols - rank(a)
