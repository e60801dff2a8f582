import random
from fractions import Fraction

import pytest

from helpers import cofactor_det, random_int_matrix
from toricfutaki.exact import (
    NoSolutionError,
    UnderdeterminedError,
    det,
    dot,
    format_rat,
    in_cone,
    in_convex_hull,
    kernel_basis,
    kernel_vector,
    parse_rat,
    primitive,
    rank,
    solve,
)


def test_det_identity():
    assert det([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1


def test_det_known_cone_matrices():
    # hand cofactor expansion: 2 and 1
    assert det([(-1, -1, -1), (0, 1, 0), (2, 1, 0)]) == 2
    assert det([(1, 0, 0), (0, 1, 0), (0, 1, 1)]) == 1


def test_det_non_square():
    with pytest.raises(ValueError):
        det([[1, 2, 3], [4, 5, 6]])


def test_det_matches_cofactor_expansion():
    rng = random.Random(101)
    for _ in range(200):
        n = rng.randint(1, 4)
        m = random_int_matrix(rng, n)
        assert det(m) == cofactor_det(m)


def test_det_rational_entries():
    rng = random.Random(202)
    for _ in range(60):
        n = rng.randint(1, 3)
        m = [[Fraction(rng.randint(-6, 6), rng.randint(1, 4))
              for _ in range(n)] for _ in range(n)]
        assert det(m) == cofactor_det(m)


def test_solve_identity():
    assert solve([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [1, 1, 1]) == (1, 1, 1)


def test_solve_published_vertex_system():
    # rows e0, e1, e1+e2 with all-ones right side -> (1, 0, -2)
    rows = [(-1, -1, -1), (1, 0, 0), (1, 1, 0)]
    assert solve(rows, [1, 1, 1]) == (1, 0, -2)


def test_solve_inconsistent():
    # e1, e2, e1+e2: third equation forces 2 = 1
    with pytest.raises(NoSolutionError):
        solve([(1, 0, 0), (0, 1, 0), (1, 1, 0)], [1, 1, 1])


def test_solve_underdetermined():
    with pytest.raises(UnderdeterminedError):
        solve([(1, 0, 0), (0, 1, 0)], [1, 1])


def test_solve_returns_exact_solutions():
    rng = random.Random(303)
    checked = 0
    while checked < 100:
        n = rng.randint(1, 4)
        a = random_int_matrix(rng, n)
        if det(a) == 0:
            continue
        x = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)]
        b = [dot(row, x) for row in a]
        assert solve(a, b) == tuple(x)
        checked += 1


def test_solve_overdetermined_consistent():
    rows = [(1, 0), (0, 1), (1, 1)]
    assert solve(rows, [2, 3, 5]) == (2, 3)
    with pytest.raises(NoSolutionError):
        solve(rows, [2, 3, 6])


@pytest.mark.parametrize("vec,expected", [
    ((2, 4, -6), (1, 2, -3)),
    ((0, 0, 5), (0, 0, 1)),
    ((1, -2, 1), (1, -2, 1)),
])
def test_primitive(vec, expected):
    assert primitive(vec) == expected


def test_primitive_idempotent_and_odd():
    rng = random.Random(404)
    for _ in range(100):
        v = [rng.randint(-9, 9) for _ in range(3)]
        if all(c == 0 for c in v):
            continue
        p = primitive(v)
        assert primitive(p) == p
        assert primitive([-c for c in v]) == tuple(-c for c in p)


def test_primitive_errors():
    with pytest.raises(ValueError):
        primitive((0, 0, 0))
    with pytest.raises(ValueError):
        primitive((Fraction(1, 2), 1))


def test_kernel_vector():
    assert kernel_vector([(1, 0, 0), (0, 1, 0)], 3) == (0, 0, 1)
    assert kernel_vector([(1, 0, 0)], 3) is None  # kernel is 2-dimensional
    assert kernel_basis([], 2) == [(1, 0), (0, 1)]


def test_rank():
    assert rank([(1, 0), (0, 1)], 2) == 2
    assert rank([(1, 1), (2, 2)], 2) == 1
    assert rank([], 2) == 0


def test_rat_round_trip():
    assert format_rat(Fraction(-3, 7)) == "-3/7"
    assert format_rat(Fraction(5)) == "5"
    assert parse_rat("-3/7") == Fraction(-3, 7)
    assert parse_rat("12") == 12
    for bad in ("1.5", "3e2", "1/0", "a/b", "1/-2"):
        with pytest.raises(ValueError):
            parse_rat(bad)


def test_in_convex_hull():
    square = [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert in_convex_hull((Fraction(1, 2), Fraction(1, 2)), square)
    assert in_convex_hull((0, 0), square)
    assert not in_convex_hull((2, 0), square)
    assert not in_convex_hull((Fraction(1, 2), -Fraction(1, 1000)), square)


def test_in_cone():
    gens = [(1, 0), (1, 2)]
    assert in_cone((2, 2), gens)
    assert in_cone((0, 0), gens)
    assert not in_cone((0, 1), gens)
    assert not in_cone((-1, 0), gens)
