"""Matroids on the ordered ground set {1, ..., n}, stored by their circuits.

Everything is brute force over subsets, which is exact and fast enough at
desk scale (n <= 12).  Subsets are frozensets of 1-based elements in the
public API and bitmasks (bit i-1 for element i) internally.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from .exact_linalg import RationalMatrix, rank_rational
from .tableaux import dominance_leq

MAX_VALIDATED_N = 12


class MatroidAxiomError(ValueError):
    """Raised when a circuit family violates the circuit axioms."""


def _mask(s: Iterable[int]) -> int:
    m = 0
    for e in s:
        m |= 1 << (e - 1)
    return m


def _unmask(m: int) -> frozenset[int]:
    out = []
    i = 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return frozenset(out)


def _popcount(m: int) -> int:
    return bin(m).count("1")


@dataclass(frozen=True)
class Matroid:
    n: int
    circuits: tuple[frozenset[int], ...]
    _masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        circs = tuple(sorted((frozenset(c) for c in self.circuits), key=lambda c: (len(c), sorted(c))))
        object.__setattr__(self, "circuits", circs)
        object.__setattr__(self, "_masks", tuple(_mask(c) for c in circs))

    def __repr__(self) -> str:
        cs = ", ".join("{" + ",".join(map(str, sorted(c))) + "}" for c in self.circuits)
        return f"Matroid(n={self.n}, circuits=[{cs}])"

    @property
    def ground_set(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1))

    def _indep_mask(self, m: int) -> bool:
        return not any(c & m == c for c in self._masks)

    def is_independent(self, s: Iterable[int]) -> bool:
        return self._indep_mask(_mask(s))

    def is_dependent(self, s: Iterable[int]) -> bool:
        return not self.is_independent(s)

    def rank(self, s: Iterable[int] | None = None) -> int:
        """Size of a maximal independent subset (greedy)."""
        s = self.ground_set if s is None else s
        cur = 0
        for e in sorted(s):
            trial = cur | (1 << (e - 1))
            if self._indep_mask(trial):
                cur = trial
        return _popcount(cur)

    def closure(self, s: Iterable[int]) -> frozenset[int]:
        s = frozenset(s)
        r = self.rank(s)
        return frozenset(e for e in self.ground_set if e in s or self.rank(s | {e}) == r)

    def independent_sets(self) -> list[frozenset[int]]:
        return [_unmask(m) for m in self._independent_masks()]

    def _independent_masks(self) -> list[int]:
        return [m for m in range(1 << self.n) if self._indep_mask(m)]

    def bases(self) -> list[frozenset[int]]:
        r = self.rank()
        return [s for s in self.independent_sets() if len(s) == r]

    @property
    def loops(self) -> frozenset[int]:
        return frozenset(next(iter(c)) for c in self.circuits if len(c) == 1)

    def to_json(self) -> dict:
        return {"n": self.n, "circuits": [sorted(c) for c in self.circuits]}


# --- construction ----------------------------------------------------------

def _check_circuit_axioms(n: int, circuits: Sequence[frozenset[int]]) -> None:
    masks = [_mask(c) for c in circuits]
    for c in circuits:
        if not c:
            raise MatroidAxiomError("the empty set is not a circuit")
        if not c <= frozenset(range(1, n + 1)):
            raise MatroidAxiomError(f"circuit {sorted(c)} is not a subset of [{n}]")
    for i, a in enumerate(masks):
        for j, b in enumerate(masks):
            if i != j and a & b == a:
                raise MatroidAxiomError(
                    f"circuit {sorted(circuits[i])} is contained in {sorted(circuits[j])}"
                )
    if n > MAX_VALIDATED_N:
        return
    for i, j in combinations(range(len(masks)), 2):
        a, b = masks[i], masks[j]
        common = a & b
        while common:
            low = common & -common
            union = (a | b) & ~low
            if not any(c & union == c for c in masks):
                raise MatroidAxiomError(
                    f"circuit elimination fails for {sorted(circuits[i])}, "
                    f"{sorted(circuits[j])} at {_popcount(low - 1) + 1}"
                )
            common &= common - 1


def from_circuits(n: int, circuits: Iterable[Iterable[int]]) -> Matroid:
    """Matroid with the given circuits; axioms are checked exhaustively for n <= 12."""
    circs = sorted({frozenset(c) for c in circuits}, key=lambda c: (len(c), sorted(c)))
    _check_circuit_axioms(n, circs)
    return Matroid(n, tuple(circs))


def _from_independence(n: int, is_indep) -> Matroid:
    """Minimal dependent sets of an independence predicate on bitmasks."""
    circuits: list[int] = []
    for size in range(1, n + 1):
        for comb in combinations(range(n), size):
            m = 0
            for i in comb:
                m |= 1 << i
            if any(c & m == c for c in circuits):
                continue
            if not is_indep(m):
                circuits.append(m)
    return Matroid(n, tuple(_unmask(c) for c in circuits))


def boolean(n: int) -> Matroid:
    return Matroid(n, ())


def uniform(k: int, n: int) -> Matroid:
    """U_{k,n}: every (k+1)-subset is a circuit."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    if k == n:
        return boolean(n)
    return Matroid(n, tuple(frozenset(c) for c in combinations(range(1, n + 1), k + 1)))


def from_matrix(m: RationalMatrix | Sequence[Sequence]) -> Matroid:
    """Column matroid: circuits are the minimal linearly dependent column sets."""
    if not isinstance(m, RationalMatrix):
        m = RationalMatrix.from_rows(m)
    cols = [m.column(j) for j in range(m.cols)]

    def indep(mask: int) -> bool:
        chosen = [cols[j] for j in range(m.cols) if mask >> j & 1]
        return rank_rational(chosen) == len(chosen)

    return _from_independence(m.cols, indep)


def direct_sum(a: Matroid, b: Matroid) -> Matroid:
    shifted = [frozenset(e + a.n for e in c) for c in b.circuits]
    return Matroid(a.n + b.n, tuple(a.circuits) + tuple(shifted))


def truncation(m: Matroid) -> Matroid:
    """T(M): the bases are the independent sets of M of size r(M) - 1."""
    r = m.rank()
    if r < 1:
        raise ValueError("cannot truncate a rank-0 matroid")
    return _from_independence(m.n, lambda s: m._indep_mask(s) and _popcount(s) < r)


def principal_extension(m: Matroid) -> Matroid:
    """M + e = T(M (+) e): a new element added generically without raising the rank."""
    return truncation(direct_sum(m, boolean(1)))


def freedom(bits: Sequence[int] | str) -> Matroid:
    """The freedom matroid M_s: coloop for a 1, generic element for a 0."""
    bits = [int(b) for b in bits]
    if not bits or any(b not in (0, 1) for b in bits):
        raise ValueError("need a nonempty binary sequence")
    m = boolean(1) if bits[0] else Matroid(1, (frozenset({1}),))
    for b in bits[1:]:
        m = direct_sum(m, boolean(1)) if b else principal_extension(m)
    return m


def parallel_extension(m: Matroid, mu: Sequence[int]) -> Matroid:
    """M_mu: element i replaced by mu_i parallel copies (0 copies deletes it).

    Copies are numbered consecutively: those of element 1 first, and so on.
    """
    mu = list(mu)
    if len(mu) != m.n or any(x < 0 for x in mu):
        raise ValueError(f"need a composition with {m.n} nonnegative parts")
    origin = [i + 1 for i, k in enumerate(mu) for _ in range(k)]
    size = len(origin)

    def indep(mask: int) -> bool:
        src = [origin[j] for j in range(size) if mask >> j & 1]
        return len(set(src)) == len(src) and m.is_independent(src)

    return _from_independence(size, indep)


# --- rank partition and independent-set partitions ----------------------

def _maximal(masks: Iterable[int]) -> list[int]:
    ms = sorted(set(masks), key=_popcount, reverse=True)
    out: list[int] = []
    for x in ms:
        if not any(x & y == x for y in out):
            out.append(x)
    return out


def rank_partition(m: Matroid) -> tuple[int, ...]:
    """rho(M): rho_1 + ... + rho_k is the largest size of a union of k independent sets.

    Brute force over unions of bases, keeping only inclusion-maximal unions.
    """
    bases = _maximal(m._independent_masks())
    if bases == [0]:
        return ()
    unions = [0]
    parts: list[int] = []
    prev = 0
    while True:
        unions = _maximal(u | b for u in unions for b in bases)
        best = max(_popcount(u) for u in unions)
        if best == prev:
            break
        parts.append(best - prev)
        prev = best
    return tuple(parts)


def union_rank_formula(m: Matroid, k: int) -> int:
    """Largest union of k independent sets via min_A k r(A) + |E - A|."""
    best = None
    for mask in range(1 << m.n):
        a = _unmask(mask)
        v = k * m.rank(a) + m.n - len(a)
        best = v if best is None else min(best, v)
    return best


def independent_set_partition_exists(m: Matroid, lam: Sequence[int]) -> bool:
    """Is there a set partition of the ground set into independent blocks of sizes lam?"""
    sizes = sorted((x for x in lam if x), reverse=True)
    if sum(sizes) != m.n:
        return False
    blocks = [0] * len(sizes)

    def place(e: int) -> bool:
        if e > m.n:
            return True
        bit = 1 << (e - 1)
        tried_empty = set()
        for i, size in enumerate(sizes):
            cur = blocks[i]
            if _popcount(cur) >= size:
                continue
            if cur == 0:
                # empty blocks of equal size are interchangeable
                if size in tried_empty:
                    continue
                tried_empty.add(size)
            if m._indep_mask(cur | bit):
                blocks[i] = cur | bit
                if place(e + 1):
                    return True
                blocks[i] = cur
        return False

    return place(1)


# --- broken circuits ---------------------------------------------------------

def broken_circuits(m: Matroid) -> list[frozenset[int]]:
    return sorted({c - {min(c)} for c in m.circuits}, key=lambda s: (len(s), sorted(s)))


def nbc_sets(m: Matroid, k: int, must_contain_1: bool = False) -> list[frozenset[int]]:
    """All k-subsets of the ground set containing no broken circuit."""
    bcs = [_mask(b) for b in broken_circuits(m)]
    out = []
    for comb in combinations(range(1, m.n + 1), k):
        if must_contain_1 and 1 not in comb:
            continue
        s = _mask(comb)
        if not any(b & s == b for b in bcs):
            out.append(frozenset(comb))
    return out


def external_activity(m: Matroid, indep: Iterable[int]) -> tuple[int, frozenset[int]]:
    """(ex(I), Ex(I)): elements e outside I that are the minimum of the circuit in I + e."""
    i = frozenset(indep)
    if not m.is_independent(i):
        raise ValueError(f"{sorted(i)} is not independent")
    active = set()
    for e in m.ground_set - i:
        circs = [c for c in m.circuits if e in c and c <= i | {e}]
        # I independent, so I + e holds at most one circuit
        if len(circs) == 1 and min(circs[0]) == e:
            active.add(e)
    return len(active), frozenset(active)


# --- IO --------------------------------------------------------------------

def from_json(data: dict) -> Matroid:
    """Parse ``{"n", "circuits"}`` or ``{"matrix": {"rows": [...]}}`` (rationals as "p/q")."""
    if "matrix" in data:
        rows = data["matrix"]["rows"] if isinstance(data["matrix"], dict) else data["matrix"]
        return from_matrix(RationalMatrix.from_rows([[Fraction(x) for x in r] for r in rows]))
    return from_circuits(int(data["n"]), data.get("circuits", []))


def load(path: str | Path) -> Matroid:
    return from_json(json.loads(Path(path).read_text()))
