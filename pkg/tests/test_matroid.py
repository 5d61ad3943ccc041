import json
import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from corpus import full_corpus, loop, example_matroid, EXAMPLE_ROWS
from whitneymod import matroid as mat
from whitneymod.tableaux import partitions


def circuits_by_sympy(rows):
    """Minimal dependent column sets, ranks from sympy."""
    m = sympy.Matrix(rows)
    n = m.cols
    circuits = []
    for k in range(1, n + 1):
        for s in combinations(range(n), k):
            if any(set(c) <= set(s) for c in circuits):
                continue
            if m.extract(list(range(m.rows)), list(s)).rank() < k:
                circuits.append(s)
    return {frozenset(i + 1 for i in c) for c in circuits}


def set_partitions_into(ground, sizes):
    """Every way to split ground into blocks with the given sizes (oracle)."""
    if not sizes:
        yield []
        return
    first, rest = sizes[0], sizes[1:]
    for block in combinations(sorted(ground), first):
        for tail in set_partitions_into(set(ground) - set(block), rest):
            yield [set(block)] + tail


def test_from_circuits_examples():
    u12 = mat.from_circuits(2, [{1, 2}])
    assert u12 == mat.uniform(1, 2)
    assert mat.from_circuits(3, []) == mat.boolean(3)
    with pytest.raises(mat.MatroidAxiomError):
        mat.from_circuits(3, [{1, 2}, {1, 2, 3}])


def test_listed_circuit_family_fails_elimination():
    # the four circuits 124, 136, 235, 456 do not form a matroid:
    # eliminating 1 from 124 and 136 leaves 2346, which holds none of them
    with pytest.raises(mat.MatroidAxiomError):
        mat.from_circuits(6, [{1, 2, 4}, {1, 3, 6}, {2, 3, 5}, {4, 5, 6}])


def test_example_matrix_circuits():
    m = example_matroid()
    assert m.circuits[:3] == (frozenset({1, 2, 4}), frozenset({1, 3, 5}), frozenset({2, 3, 6}))
    assert set(m.circuits) == circuits_by_sympy(EXAMPLE_ROWS)
    assert not m.is_independent({1, 2, 4}) and m.is_independent({1, 2, 3})
    assert m.rank() == 3
    assert mat.from_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == mat.boolean(3)


def test_rank_and_independence():
    u24 = mat.uniform(2, 4)
    assert u24.rank({1, 2, 3}) == 2
    assert u24.is_independent({1, 4}) and not u24.is_independent({1, 2, 3})
    assert mat.boolean(3).rank() == 3


def test_direct_sum_examples():
    s = mat.direct_sum(mat.uniform(1, 2), mat.boolean(1))
    assert s.n == 3 and s.circuits == (frozenset({1, 2}),)
    s5 = mat.direct_sum(example_matroid(), mat.boolean(1))
    assert s5.n == 7 and s5.circuits == example_matroid().circuits


def test_truncation_examples():
    t = mat.truncation(mat.uniform(1, 2))
    assert t.rank() == 0 and set(t.circuits) == {frozenset({1}), frozenset({2})}
    assert mat.truncation(mat.boolean(3)) == mat.uniform(2, 3)
    with pytest.raises(ValueError):
        mat.truncation(t)


def test_principal_extension_and_freedom():
    assert mat.principal_extension(mat.boolean(2)) == mat.uniform(2, 3)
    m = mat.freedom("101010")
    assert m.n == 6 and m.rank() == 3
    assert m.circuits[0] == frozenset({1, 2})
    assert mat.freedom("0") == loop()
    assert mat.freedom("111") == mat.boolean(3)


def test_freedom_matches_generic_realization():
    # a 1 adds a new coordinate axis, a 0 a generic vector in the span so far
    rng = random.Random(5)
    bits = "101010"
    cols = []
    rank = 0
    for b in bits:
        if b == "1":
            cols.append([int(r == rank) for r in range(3)])
            rank += 1
        else:
            coeffs = [Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6)) for _ in cols]
            cols.append([sum((c * col[r] for c, col in zip(coeffs, cols)), Fraction(0)) for r in range(3)])
    rows = [[col[r] for col in cols] for r in range(3)]
    assert mat.from_matrix(rows) == mat.freedom(bits)


def test_freedom_is_shifted():
    # replacing an element of an independent set by a larger one keeps it independent
    for bits in ["101010", "110100", "1001101"]:
        m = mat.freedom(bits)
        for s in m.independent_sets():
            for x in s:
                for y in range(x + 1, m.n + 1):
                    if y not in s:
                        assert m.is_independent((s - {x}) | {y})


def test_parallel_extension_examples():
    m = mat.parallel_extension(mat.boolean(2), [2, 1])
    assert m.n == 3 and m.circuits == (frozenset({1, 2}),)
    assert mat.parallel_extension(mat.boolean(2), [1, 0]) == mat.boolean(1)


def test_rank_partition_examples():
    assert mat.rank_partition(mat.uniform(2, 4)) == (2, 2)
    assert mat.rank_partition(mat.boolean(3)) == (3,)
    assert mat.rank_partition(mat.uniform(1, 3)) == (1, 1, 1)
    assert mat.rank_partition(loop()) == ()


def test_partition_examples():
    assert mat.independent_set_partition_exists(mat.uniform(2, 4), (2, 2))
    assert not mat.independent_set_partition_exists(mat.uniform(2, 4), (3, 1))
    assert mat.independent_set_partition_exists(mat.boolean(3), (3,))


def test_broken_circuits_and_nbc():
    m = example_matroid()
    three = [b for b in mat.broken_circuits(m) if len(b) == 2]
    assert set(three) == {frozenset({2, 4}), frozenset({3, 6}), frozenset({3, 5})}
    nbc = {"".join(map(str, sorted(s))) for s in mat.nbc_sets(m, 3, True)}
    assert nbc == {"123", "125", "126", "134", "145", "146", "156"}
    assert mat.broken_circuits(mat.uniform(1, 2)) == [frozenset({2})]
    assert mat.broken_circuits(mat.boolean(3)) == []
    assert mat.nbc_sets(mat.uniform(1, 2), 1, True) == [frozenset({1})]
    assert len(mat.nbc_sets(mat.boolean(3), 2)) == 3


def test_external_activity():
    assert mat.external_activity(mat.uniform(1, 2), {2}) == (1, frozenset({1}))
    assert mat.external_activity(mat.boolean(3), {1, 2})[0] == 0
    assert 1 in mat.external_activity(example_matroid(), {2, 4})[1]
    with pytest.raises(ValueError):
        mat.external_activity(mat.uniform(1, 2), {1, 2})


def test_json_round_trip(tmp_path):
    m = example_matroid()
    path = tmp_path / "m.json"
    path.write_text(json.dumps(m.to_json()))
    assert mat.load(path) == m
    assert mat.from_json({"matrix": {"rows": [["1/2", "1"], ["0", "0"]]}}) == mat.uniform(1, 2)


CORPUS = full_corpus(6)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_rank_partition_against_union_formula(name):
    m = CORPUS[name]
    rho = mat.rank_partition(m)
    assert all(rho[i] >= rho[i + 1] for i in range(len(rho) - 1))
    for k in range(1, len(rho) + 2):
        assert sum(rho[:k]) == mat.union_rank_formula(m, k)


@pytest.mark.parametrize("name", [n for n in sorted(CORPUS) if CORPUS[n].n <= 5])
def test_partition_search_against_oracle(name):
    m = CORPUS[name]
    for lam in partitions(m.n):
        expected = any(
            all(m.is_independent(b) for b in blocks) for blocks in set_partitions_into(range(1, m.n + 1), list(lam))
        )
        assert mat.independent_set_partition_exists(m, lam) == expected


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(2, 5), st.integers(0, 10**6))
def test_direct_sum_circuits_are_union(k, n, seed):
    a = mat.uniform(min(k, n), n)
    b = mat.freedom("10" if seed % 2 else "110")
    s = mat.direct_sum(a, b)
    shifted = {frozenset(e + a.n for e in c) for c in b.circuits}
    assert set(s.circuits) == set(a.circuits) | shifted
