from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from whitneymod.exact_linalg import (
    IntMatrix,
    RationalMatrix,
    RowSpace,
    integer_echelon,
    nullspace,
    rank_rational,
    rref,
    smith_normal_form,
    smith_normal_form_sparse,
    solve_in_span,
)


def determinantal_factors(rows):
    """Invariant factors from gcds of k x k minors (sympy determinants)."""
    if not rows or not rows[0]:
        return ()
    m = sympy.Matrix(rows)
    divisors = [1]
    for k in range(1, min(m.shape) + 1):
        g = 0
        for r in combinations(range(m.rows), k):
            for c in combinations(range(m.cols), k):
                g = gcd(g, int(m.extract(list(r), list(c)).det()))
        if g == 0:
            break
        divisors.append(g)
    return tuple(divisors[i] // divisors[i - 1] for i in range(1, len(divisors)))


def test_rank_examples():
    assert rank_rational(RationalMatrix.identity(2)) == 2
    assert rank_rational(RationalMatrix.from_rows([[0] * 4] * 3)) == 0
    assert rank_rational(RationalMatrix.from_rows([[1, 2], [2, 4]])) == 1


def test_solve_examples():
    assert solve_in_span(RationalMatrix.identity(2), [3, 5]) == [3, 5]
    assert solve_in_span(RationalMatrix.from_rows([[1, 1]]), [2, 2]) == [2]
    assert solve_in_span(RationalMatrix.from_rows([[1, 0]]), [0, 1]) is None
    with pytest.raises(ValueError):
        solve_in_span(RationalMatrix.identity(2), [1, 2, 3])


def test_snf_examples():
    assert smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 4]])).invariant_factors == (2, 4)
    assert smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]])).invariant_factors == (1, 6)
    zero = smith_normal_form(IntMatrix.from_rows([[0, 0], [0, 0]]))
    assert zero.invariant_factors == () and zero.rank == 0 and zero.torsion == ()


def test_snf_torsion_is_the_factors_above_one():
    res = smith_normal_form(IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]))
    assert res.invariant_factors == determinantal_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert res.torsion == tuple(d for d in res.invariant_factors if d > 1)


def test_matrix_types_validate():
    with pytest.raises(ValueError):
        IntMatrix(2, 2, (1, 2, 3))
    m = RationalMatrix.from_rows([["1/2", 3]])
    assert m.entries == (Fraction(1, 2), Fraction(3))
    assert m.transpose().to_rows() == [[Fraction(1, 2)], [Fraction(3)]]


def test_nullspace_and_rref():
    m = RationalMatrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    rows, pivots = rref(m)
    assert pivots == [0, 1]
    assert sympy.Matrix(m.to_rows()).rref()[1] == tuple(pivots)
    for v in nullspace(m):
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in m.to_rows())
    assert len(nullspace(m)) == 3 - rank_rational(m)


def test_rowspace_solve_tracks_inserted_vectors():
    space = RowSpace(track=True)
    vecs = [{"a": 1, "b": 1}, {"b": 1, "c": 2}, {"a": 1, "b": 2, "c": 2}]
    added = [space.add(v) for v in vecs]
    assert added == [True, True, False]
    target = {"a": 2, "b": 5, "c": 6}
    sol = space.solve(target)
    combo = {}
    for i, c in sol.items():
        for k, x in vecs[i].items():
            combo[k] = combo.get(k, 0) + c * x
    assert {k: v for k, v in combo.items() if v} == target
    assert space.solve({"d": 1}) is None


small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def int_matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(small_ints) for _ in range(c)] for _ in range(r)]


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_snf_matches_determinantal_divisors(rows):
    res = smith_normal_form(IntMatrix.from_rows(rows))
    assert res.invariant_factors == determinantal_factors(rows)
    assert smith_normal_form_sparse(
        [{j: x for j, x in enumerate(r) if x} for r in rows]
    ).invariant_factors == res.invariant_factors


@settings(max_examples=40, deadline=None)
@given(int_matrices(max_rows=12, max_cols=12))
def test_snf_chain_and_rank(rows):
    res = smith_normal_form(IntMatrix.from_rows(rows))
    f = res.invariant_factors
    assert all(f[i + 1] % f[i] == 0 for i in range(len(f) - 1))
    assert res.rank == rank_rational(RationalMatrix.from_rows(rows)) == sympy.Matrix(rows).rank()


def test_snf_large_random_chain():
    import random

    rng = random.Random(11)
    rows = [[rng.randint(-3, 3) * rng.randint(0, 1) for _ in range(60)] for _ in range(60)]
    res = smith_normal_form(IntMatrix.from_rows(rows))
    f = res.invariant_factors
    assert all(f[i + 1] % f[i] == 0 for i in range(len(f) - 1))
    assert res.rank == rank_rational(RationalMatrix.from_rows(rows))


@settings(max_examples=60, deadline=None)
@given(int_matrices(), st.randoms(use_true_random=False))
def test_rank_invariant_under_permutation_and_transpose(rows, rnd):
    m = RationalMatrix.from_rows(rows)
    shuffled = rows[:]
    rnd.shuffle(shuffled)
    assert rank_rational(m) == rank_rational(RationalMatrix.from_rows(shuffled)) == rank_rational(m.transpose())


@settings(max_examples=60, deadline=None)
@given(int_matrices(), st.lists(small_ints, min_size=5, max_size=5))
def test_solve_reproduces_target(rows, coeffs):
    m = RationalMatrix.from_rows(rows)
    target = [sum(c * r[j] for c, r in zip(coeffs, rows)) for j in range(m.cols)]
    sol = solve_in_span(m, target)
    assert sol is not None
    assert [sum(c * r[j] for c, r in zip(sol, m.to_rows())) for j in range(m.cols)] == target


def test_integer_echelon_spans_same_lattice():
    rows = [{0: 2, 1: 4}, {0: 3, 1: 1}]
    ech = integer_echelon(rows)
    # determinant of the lattice is preserved up to sign
    dense = [[r.get(j, 0) for j in range(2)] for r in ech.values()]
    assert abs(sympy.Matrix(dense).det()) == abs(2 * 1 - 4 * 3)
