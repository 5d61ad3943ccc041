"""Matroids and realizations shared by the test modules."""

import random
from fractions import Fraction
from itertools import product

from whitneymod import matroid as mat
from whitneymod.exact_linalg import RationalMatrix

# columns 1..6 of the rank-3 example matrix
EXAMPLE_ROWS = [
    [1, 0, 0, 1, 1, 0],
    [0, 1, 0, 1, 0, 1],
    [0, 0, 1, 0, 1, 1],
]


def example_matrix() -> RationalMatrix:
    return RationalMatrix.from_rows(EXAMPLE_ROWS)


def example_matroid() -> mat.Matroid:
    return mat.from_matrix(EXAMPLE_ROWS)


def generic_matrix(rows: int, cols: int, seed: int) -> RationalMatrix:
    rng = random.Random(seed)
    return RationalMatrix.from_rows(
        [[Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6)) for _ in range(cols)] for _ in range(rows)]
    )


def identity_rows(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def loop() -> mat.Matroid:
    return mat.Matroid(1, (frozenset({1}),))


def uniform_matroids(max_n: int = 6):
    for n in range(1, max_n + 1):
        for k in range(n + 1):
            yield f"U{k},{n}", mat.uniform(k, n)


def freedom_sequences(max_len: int):
    for length in range(1, max_len + 1):
        for bits in product("01", repeat=length):
            yield "".join(bits)


def matroids_with_loops():
    yield "loop", loop()
    yield "U1,2+loop", mat.direct_sum(mat.uniform(1, 2), loop())
    yield "loop+B2", mat.direct_sum(loop(), mat.boolean(2))
    yield "3x6 example + loop", mat.direct_sum(example_matroid(), loop())
    yield "U2,4 with a zero column", mat.from_matrix([[1, 0, 1, 2, 0], [0, 1, 1, 3, 0]])


def fano() -> mat.Matroid:
    lines = [{1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 7}, {5, 6, 1}, {6, 7, 2}, {7, 1, 3}]
    return mat._from_independence(7, lambda m: not _fano_dependent(m, lines))


def _fano_dependent(mask: int, lines) -> bool:
    s = {i + 1 for i in range(7) if mask >> i & 1}
    return len(s) > 3 or any(line <= s for line in lines)


# realizable matroids given by explicit matrices (n <= 6)
REALIZATIONS = {
    "3x6 example": EXAMPLE_ROWS,
    "identity3": identity_rows(3),
    "U1,2": [[1, 1]],
    "U1,3": [[1, 2, 3]],
    "U2,3": [[1, 0, 1], [0, 1, 1]],
    "U2,4": [[1, 0, 1, 1], [0, 1, 1, 2]],
    "U2,5": [[1, 0, 1, 1, 1], [0, 1, 1, 2, 3]],
    "U3,5": [[1, 0, 0, 1, 1], [0, 1, 0, 1, 2], [0, 0, 1, 1, 3]],
    "K4": [[1, 1, 1, 0, 0, 0], [-1, 0, 0, 1, 1, 0], [0, -1, 0, -1, 0, 1], [0, 0, -1, 0, -1, -1]],
    "parallel pair + coloop": [[1, 1, 0], [0, 0, 1]],
    "loop + coloop": [[0, 1]],
    "two parallel classes": [[1, 2, 0, 0, 1], [0, 0, 1, 3, 1]],
    "rank2 on 6": [[1, 0, 1, 1, 2, 1], [0, 1, 1, 2, 1, 3]],
}


def realizable_corpus():
    for name, rows in REALIZATIONS.items():
        yield name, mat.from_matrix(rows)


def full_corpus(max_n: int = 7):
    """Every corpus matroid with at most max_n elements."""
    out = dict(uniform_matroids(min(max_n, 6)))
    for bits in freedom_sequences(min(max_n, 6)):
        out[f"M_{bits}"] = mat.freedom(bits)
    out.update(matroids_with_loops())
    out.update(realizable_corpus())
    if max_n >= 7:
        out["Fano"] = fano()
        out["3x6 example + coloop"] = mat.direct_sum(example_matroid(), mat.boolean(1))
    return {k: v for k, v in out.items() if v.n <= max_n}
