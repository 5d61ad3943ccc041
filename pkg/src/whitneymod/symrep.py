"""The group algebra of S_n and the doubly multilinear module U(M).

Permutations are tuples in one-line notation over {1, ..., n}, composed
right to left: ``compose(s, t)(i) = s(t(i))``.  U(M) is computed as the
quotient of the right regular module by the right ideal generated by the
antisymmetrizers of dependent sets; its character is the regular
character minus the trace of right multiplication on the ideal.

Irreducibles are labelled the conjugate way round from the usual one, so
``(n)`` is the sign representation and ``(1^n)`` the trivial one.  Every
function taking a shape here expects that labelling and converts
internally before calling :func:`mn_character`, which uses the standard
labelling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial
from typing import Iterable, Mapping, Sequence

from .exact_linalg import RowSpace
from .matroid import Matroid, nbc_sets, rank_partition
from .tableaux import conjugate, dominance_leq, hook, partitions

Permutation = tuple[int, ...]

DEFAULT_N_CAP = 7


# --- permutations ------------------------------------------------------------

def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def compose(s: Permutation, t: Permutation) -> Permutation:
    """s after t."""
    return tuple(s[i - 1] for i in t)


def inverse(s: Permutation) -> Permutation:
    out = [0] * len(s)
    for i, v in enumerate(s, 1):
        out[v - 1] = i
    return tuple(out)


def transposition(a: int, b: int, n: int) -> Permutation:
    p = list(range(1, n + 1))
    p[a - 1], p[b - 1] = b, a
    return tuple(p)


def sign(s: Permutation) -> int:
    seen = [False] * len(s)
    parity = 0
    for i in range(len(s)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = s[j] - 1
            length += 1
        parity += length - 1
    return -1 if parity % 2 else 1


def cycle_type(s: Permutation) -> tuple[int, ...]:
    seen = [False] * len(s)
    lengths = []
    for i in range(len(s)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = s[j] - 1
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def class_representative(mu: Sequence[int]) -> Permutation:
    """A permutation with cycles (1..mu_1)(mu_1+1..) and so on."""
    out = []
    start = 1
    for k in mu:
        out.extend(range(start + 1, start + k))
        out.append(start)
        start += k
    return tuple(out)


def class_size(mu: Sequence[int]) -> int:
    n = sum(mu)
    z = 1
    counts: dict[int, int] = {}
    for k in mu:
        counts[k] = counts.get(k, 0) + 1
    for k, m in counts.items():
        z *= k ** m * factorial(m)
    return factorial(n) // z


def _subgroup(elements: Sequence[int], n: int) -> list[Permutation]:
    """All permutations of ``elements`` fixing the rest of [n]."""
    elements = sorted(elements)
    out = []
    for image in permutations(elements):
        p = list(range(1, n + 1))
        for a, b in zip(elements, image):
            p[a - 1] = b
        out.append(tuple(p))
    return out


# --- group algebra -------------------------------------------------------------

class GroupAlgebraElement:
    """A finite rational combination of permutations of [n]."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Permutation, object] | None = None):
        self.n = n
        self.terms: dict[Permutation, Fraction] = {}
        for p, c in (terms or {}).items():
            if len(p) != n:
                raise ValueError(f"{p} is not a permutation of [{n}]")
            if c:
                self.terms[tuple(p)] = Fraction(c)

    @classmethod
    def identity(cls, n: int) -> "GroupAlgebraElement":
        return cls(n, {identity(n): 1})

    @classmethod
    def of(cls, p: Sequence[int]) -> "GroupAlgebraElement":
        return cls(len(p), {tuple(p): 1})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, 0) + c
        return GroupAlgebraElement(self.n, out)

    def __neg__(self) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.n, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            return ga_mul(self, other)
        return GroupAlgebraElement(self.n, {p: c * other for p, c in self.terms.items()})

    def __rmul__(self, other):
        return GroupAlgebraElement(self.n, {p: other * c for p, c in self.terms.items()})

    def right_translate(self, s: Permutation) -> "GroupAlgebraElement":
        """self * s."""
        return GroupAlgebraElement(self.n, {compose(p, s): c for p, c in self.terms.items()})

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{p}" for p, c in sorted(self.terms.items()))


def ga_mul(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    if a.n != b.n:
        raise ValueError("elements of different group algebras")
    out: dict[Permutation, Fraction] = {}
    for s, x in a.terms.items():
        for t, y in b.terms.items():
            p = compose(s, t)
            out[p] = out.get(p, 0) + x * y
    return GroupAlgebraElement(a.n, out)


def antisymmetrizer(d: Iterable[int], n: int) -> GroupAlgebraElement:
    """b_D: the signed sum over permutations of D."""
    return GroupAlgebraElement(n, {p: sign(p) for p in _subgroup(list(d), n)})


def symmetrizer(d: Iterable[int], n: int) -> GroupAlgebraElement:
    return GroupAlgebraElement(n, {p: 1 for p in _subgroup(list(d), n)})


def _group_sum(blocks: Sequence[Sequence[int]], n: int, signed: bool) -> GroupAlgebraElement:
    out = GroupAlgebraElement.identity(n)
    for block in blocks:
        if len(block) > 1:
            out = out * (antisymmetrizer(block, n) if signed else symmetrizer(block, n))
    return out


def young_symmetrizer(rows: Sequence[Sequence[int]], n: int) -> GroupAlgebraElement:
    """c_T = (signed sum over the row group)(sum over the column group)."""
    rows = [list(r) for r in rows]
    entries = sorted(x for r in rows for x in r)
    if entries != list(range(1, n + 1)):
        raise ValueError("tableau must contain each of 1..n once")
    cols = [[r[j] for r in rows if len(r) > j] for j in range(len(rows[0]))] if rows else []
    return _group_sum(rows, n, True) * _group_sum(cols, n, False)


def hook_tableau(b: Iterable[int], n: int) -> list[list[int]]:
    """First row B sorted; the rest of [n], sorted, in the first column below min B."""
    b = sorted(set(b))
    if not b or not set(b) <= set(range(1, n + 1)):
        raise ValueError(f"need a nonempty subset of [{n}]")
    return [b] + [[x] for x in range(1, n + 1) if x not in b]


def young_symmetrizer_hook(b: Iterable[int], n: int) -> GroupAlgebraElement:
    """c_B for the hook tableau of :func:`hook_tableau`."""
    return young_symmetrizer(hook_tableau(b, n), n)


def substituted_hook_symmetrizer(s: Iterable[int], e: int, f: int, n: int) -> GroupAlgebraElement:
    """Symmetrizer of the hook tableau of S with f replaced by e in its cell (and e by f)."""
    swap = {e: f, f: e}
    rows = [[swap.get(x, x) for x in r] for r in hook_tableau(s, n)]
    return young_symmetrizer(rows, n)


def hook_exchange_sum(s: Iterable[int], e: int, n: int) -> GroupAlgebraElement:
    """Sum over f in S of c_{S+e-f} (ef), where c_{S+e-f} is the substituted hook symmetrizer."""
    s = sorted(set(s))
    if e in s:
        raise ValueError("e must lie outside S")
    out = GroupAlgebraElement(n)
    for f in s:
        out = out + substituted_hook_symmetrizer(s, e, f, n) * GroupAlgebraElement.of(transposition(e, f, n))
    return out


# --- right ideals ----------------------------------------------------------------

def _right_ideal(gens: Iterable[GroupAlgebraElement], n: int) -> RowSpace:
    space = RowSpace()
    for g in gens:
        for s in permutations(range(1, n + 1)):
            space.add(g.right_translate(s).terms)
            if space.rank == factorial(n):
                return space
    return space


def right_ideal_dim(gens: Sequence[GroupAlgebraElement], n: int) -> tuple[int, list[GroupAlgebraElement]]:
    """Dimension of the right ideal generated by ``gens``, with an echelon basis."""
    space = _right_ideal(gens, n)
    return space.rank, [GroupAlgebraElement(n, row) for _, row in space.basis()]


def in_right_ideal(x: GroupAlgebraElement, gens: Sequence[GroupAlgebraElement], n: int) -> bool:
    return x.terms in _right_ideal(gens, n)


def right_ideal_contains(sub: Sequence[GroupAlgebraElement], sup: Sequence[GroupAlgebraElement], n: int) -> bool:
    """<sub> is contained in <sup> (as right ideals)."""
    space = _right_ideal(sup, n)
    return all(x.terms in space for x in sub)


def _coset_reps(c: Sequence[int], n: int) -> Iterable[Permutation]:
    """Representatives s of the cosets S_C s: the values from C appear in increasing order."""
    cset = set(c)
    for s in permutations(range(1, n + 1)):
        vals = [v for v in s if v in cset]
        if all(vals[i] < vals[i + 1] for i in range(len(vals) - 1)):
            yield s


def dependent_ideal(m: Matroid) -> RowSpace:
    """Right ideal generated by b_D over dependent D; circuits suffice since b_C divides b_D on the left."""
    n = m.n
    space = RowSpace()
    full = factorial(n)
    for c in m.circuits:
        b = antisymmetrizer(c, n)
        for s in _coset_reps(sorted(c), n):
            space.add(b.right_translate(s).terms)
            if space.rank == full:
                return space
    return space


# --- characters ---------------------------------------------------------------------

@dataclass(frozen=True)
class ClassFunction:
    n: int
    values: dict[tuple[int, ...], Fraction]

    def __call__(self, mu: Sequence[int]) -> Fraction:
        return self.values[tuple(mu)]

    def inner(self, other: "ClassFunction") -> Fraction:
        total = Fraction(0)
        for mu in partitions(self.n):
            total += class_size(mu) * self.values[mu] * other.values[mu]
        return total / factorial(self.n)

    @property
    def degree(self) -> Fraction:
        return self.values[(1,) * self.n] if self.n else Fraction(1)


def irreducible_character(lam_standard: Sequence[int]) -> ClassFunction:
    n = sum(lam_standard)
    return ClassFunction(n, {mu: Fraction(mn_character(lam_standard, mu)) for mu in partitions(n)})


def regular_character(n: int) -> ClassFunction:
    return ClassFunction(n, {mu: Fraction(factorial(n) if mu == (1,) * n else 0) for mu in partitions(n)})


def _check_n(n: int, n_cap: int) -> None:
    if n > n_cap:
        raise ValueError(f"n = {n} exceeds the cap {n_cap}; raise n_cap to proceed")


def ideal_character(m: Matroid, n_cap: int = DEFAULT_N_CAP) -> ClassFunction:
    """Trace of right multiplication on the dependent-set ideal.

    In the reduced echelon basis a vector's coordinates are its values at
    the pivots, so the trace of right multiplication by g is
    sum_i r_i[pivot_i g^-1].
    """
    _check_n(m.n, n_cap)
    space = dependent_ideal(m)
    values = {}
    for mu in partitions(m.n):
        ginv = inverse(class_representative(mu))
        values[mu] = sum((row.get(compose(p, ginv), 0) for p, row in space.basis()), Fraction(0))
    return ClassFunction(m.n, values)


@lru_cache(maxsize=256)
def u_module_character(m: Matroid, n_cap: int = DEFAULT_N_CAP) -> ClassFunction:
    """Character of U(M): regular character minus the ideal's character."""
    reg = regular_character(m.n)
    ideal = ideal_character(m, n_cap)
    return ClassFunction(m.n, {mu: reg.values[mu] - ideal.values[mu] for mu in reg.values})


@lru_cache(maxsize=None)
def _mn(beta: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1
    k, rest = mu[0], mu[1:]
    bset = set(beta)
    total = 0
    for b in beta:
        if b - k >= 0 and b - k not in bset:
            # removing a rim hook of length k moves one bead down k places
            height = sum(1 for x in beta if b - k < x < b)
            new = tuple(sorted((bset - {b}) | {b - k}, reverse=True))
            total += (-1) ** height * _mn(new, rest)
    return total


def mn_character(lam: Sequence[int], mu: Sequence[int]) -> int:
    """Murnaghan-Nakayama value chi^lam(mu), standard labelling."""
    lam = tuple(x for x in lam if x)
    mu = tuple(sorted((x for x in mu if x), reverse=True))
    if sum(lam) != sum(mu):
        raise ValueError("lam and mu must partition the same n")
    length = len(lam)
    beta = tuple(lam[i] + length - 1 - i for i in range(length))
    return _mn(beta, mu)


def multiplicity(m: Matroid, lam: Sequence[int], n_cap: int = DEFAULT_N_CAP) -> int:
    """Multiplicity in U(M) of the irreducible for ``lam``, labelled so that the hook for k is (k, 1, ..., 1)."""
    lam = tuple(x for x in lam if x)
    if sum(lam) != m.n:
        raise ValueError(f"{lam} is not a partition of {m.n}")
    chi = u_module_character(m, n_cap)
    value = chi.inner(irreducible_character(conjugate(lam)))
    if value.denominator != 1 or value < 0:
        raise ArithmeticError(f"non-integral multiplicity {value}")
    return int(value)


def multiplicity_table(m: Matroid, n_cap: int = DEFAULT_N_CAP) -> list[dict]:
    rho = rank_partition(m)
    rows = []
    for lam in partitions(m.n):
        mult = multiplicity(m, lam, n_cap)
        is_hook = len(lam) <= 1 or lam[1] <= 1
        nbc = hook_multiplicity_nbc(m, lam[0]) if is_hook else None
        rows.append({
            "lambda": list(lam),
            "character": mult,
            "nbc": nbc,
            "match": None if nbc is None else nbc == mult,
            "dominated_by_rank_partition": dominance_leq(lam, rho),
        })
    return rows


def hook_multiplicity_nbc(m: Matroid, k: int) -> int:
    return len(nbc_sets(m, k, must_contain_1=True))


def appears(m: Matroid, lam: Sequence[int], n_cap: int = DEFAULT_N_CAP) -> bool:
    return multiplicity(m, lam, n_cap) > 0


def hook_multiplicity(m: Matroid, k: int, n_cap: int = DEFAULT_N_CAP) -> int:
    return multiplicity(m, hook(k, m.n), n_cap)


# --- ideal probes --------------------------------------------------------------------

def killed_in_quotient(d: Iterable[int], rows: Sequence[Sequence[int]], n: int) -> bool:
    """Does c_T lie in the right ideal generated by b_D?"""
    return in_right_ideal(young_symmetrizer(rows, n), [antisymmetrizer(d, n)], n)


def _dependent_sets(m: Matroid, k: int) -> list[frozenset[int]]:
    return [frozenset(s) for s in combinations(range(1, m.n + 1), k) if m.is_dependent(s)]


def _circuits_in(m: Matroid, s: frozenset[int]) -> int:
    return sum(1 for c in m.circuits if c <= s)


def two_circuit_probe(m: Matroid, k: int) -> bool:
    """<c_D : |D| = k contains two circuits> is inside <c_D : |D| = k dependent, 1 in D>."""
    n = m.n
    deps = _dependent_sets(m, k)
    sub = [young_symmetrizer_hook(d, n) for d in deps if _circuits_in(m, d) >= 2]
    sup = [young_symmetrizer_hook(d, n) for d in deps if 1 in d]
    return right_ideal_contains(sub, sup, n)


def unicyclic_closure_probe(m: Matroid, k: int) -> bool:
    """<c_D : D unicyclic, 1 in cl(D)> is inside <c_D : D dependent, 1 in D> (sizes k)."""
    n = m.n
    deps = _dependent_sets(m, k)
    sub = [young_symmetrizer_hook(d, n) for d in deps
           if _circuits_in(m, d) == 1 and 1 in m.closure(d)]
    sup = [young_symmetrizer_hook(d, n) for d in deps if 1 in d]
    return right_ideal_contains(sub, sup, n)
