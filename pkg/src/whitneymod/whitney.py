"""Graded pieces of the Whitney module W(M).

W(M) is Super(L-|P+) modulo the ideal generated by the pairings
``(w | p^(alpha))`` of circuit words ``w``.  Because the ideal is
homogeneous, each bidegree (letter content, place content) is a finitely
generated abelian group that we compute exactly: the monomials of the
bidegree give Z^N, the ideal elements landing there give a relation
lattice, and its Smith normal form gives free rank and torsion.

Super(L-|P+) is graded commutative, so the two-sided ideal is spanned by
generator-times-monomial products; no left multiples are needed.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import gcd
from typing import Iterable, Iterator, Sequence

from .exact_linalg import IntMatrix, RationalMatrix, RowSpace, smith_normal_form_sparse
from .matroid import Matroid, from_matrix
from .superalgebra import Element, Monomial, ext_mul, laplace_pair, place_monomial, place_word
from .tableaux import (
    TabPair,
    Tableau,
    content,
    dominance_leq,
    enumerate_standard_pairs,
    is_column_strict,
    is_row_strict,
    packed_column_strict,
    partitions,
    tab_element,
)


class NotInSpanError(ValueError):
    """The input does not lie in the span of the offered basis."""


class StraighteningError(ValueError):
    """The independent-row standard pairs are not a basis of this graded piece."""


def _trim(comp: Iterable[int]) -> tuple[int, ...]:
    comp = list(comp)
    while comp and comp[-1] == 0:
        comp.pop()
    return tuple(comp)


@dataclass(frozen=True)
class Bidegree:
    """Multiplicity of each letter and of each place (trailing zeros dropped)."""

    letters: tuple[int, ...]
    places: tuple[int, ...]

    def __post_init__(self):
        letters = _trim(int(x) for x in self.letters)
        places = _trim(int(x) for x in self.places)
        if any(x < 0 for x in letters + places):
            raise ValueError("multiplicities must be nonnegative")
        if sum(letters) != sum(places):
            raise ValueError(f"letter total {sum(letters)} != place total {sum(places)}")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "places", places)

    @property
    def degree(self) -> int:
        return sum(self.letters)

    def to_json(self) -> dict:
        return {"letters": list(self.letters), "places": list(self.places)}

    @classmethod
    def from_json(cls, data) -> "Bidegree":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(data["letters"]), tuple(data["places"]))

    @classmethod
    def of(cls, pair: TabPair) -> "Bidegree":
        return cls(content(pair.row_tableau), content(pair.col_tableau))


@dataclass(frozen=True)
class GradedPieceReport:
    bidegree: Bidegree
    monomial_count: int
    relation_rank: int
    free_rank: int
    torsion_invariants: tuple[int, ...]
    standard_pair_count: int

    @property
    def is_free_with_standard_basis(self) -> bool:
        return not self.torsion_invariants and self.free_rank == self.standard_pair_count

    def to_json(self) -> dict:
        return {
            "bidegree": self.bidegree.to_json(),
            "monomials": self.monomial_count,
            "relation_rank": self.relation_rank,
            "free_rank": self.free_rank,
            "torsion": list(self.torsion_invariants),
            "standard_pairs": self.standard_pair_count,
        }


# --- monomials and relations ----------------------------------------------

@lru_cache(maxsize=None)
def _monomials(letters: tuple[int, ...], places: tuple[int, ...]) -> tuple[Monomial, ...]:
    if sum(letters) != sum(places):
        return ()
    out: list[Monomial] = []
    cap = list(places)

    def rec(i: int, acc: list) -> None:
        if i == len(letters):
            if not any(cap):
                out.append(tuple(acc))
            return
        free = [j for j in range(len(cap)) if cap[j]]
        for chosen in combinations(free, letters[i]):
            for j in chosen:
                cap[j] -= 1
            rec(i + 1, acc + [(i + 1, j + 1) for j in chosen])
            for j in chosen:
                cap[j] += 1

    rec(0, [])
    return tuple(sorted(out))


def monomial_basis(d: Bidegree) -> list[Monomial]:
    """All sets of distinct pairs with the prescribed multiplicities."""
    return list(_monomials(d.letters, d.places))


def _index(d: Bidegree) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(_monomials(d.letters, d.places))}


def _bounded_compositions(total: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    if not caps:
        if total == 0:
            yield ()
        return
    for first in range(min(total, caps[0]), -1, -1):
        for rest in _bounded_compositions(total - first, caps[1:]):
            yield (first,) + rest


def _alpha_monomial(alpha: Sequence[int]):
    return place_monomial({j + 1: a for j, a in enumerate(alpha)})


def _vector(elem: Element, index: dict[Monomial, int]) -> dict[int, int]:
    out = {}
    for m, c in elem.terms.items():
        if m not in index:
            raise ValueError(f"monomial {m} lies outside the bidegree")
        out[index[m]] = c
    return out


def _generators(m: Matroid, d: Bidegree) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], Element]]:
    """(circuit word, alpha, (w | p^(alpha))) for generators that fit in d."""
    for c in m.circuits:
        w = tuple(sorted(c))
        if any(l > len(d.letters) or d.letters[l - 1] == 0 for l in w):
            continue
        for alpha in _bounded_compositions(len(w), d.places):
            gen = laplace_pair(w, _alpha_monomial(alpha))
            if gen:
                yield w, alpha, gen


def _relation_rows(m: Matroid, d: Bidegree) -> list[dict[int, int]]:
    index = _index(d)
    seen = set()
    rows = []
    for w, alpha, gen in _generators(m, d):
        rest_letters = list(d.letters)
        for l in w:
            rest_letters[l - 1] -= 1
        rest_places = [a - b for a, b in zip(d.places, alpha)]
        for mono in _monomials(_trim(rest_letters), _trim(rest_places)):
            prod = ext_mul(gen, Element({mono: 1}))
            if not prod:
                continue
            row = _vector(prod, index)
            # rows equal up to sign span the same lattice
            key = tuple(sorted(row.items()))
            neg = tuple((k, -v) for k, v in key)
            if key in seen or neg in seen:
                continue
            seen.add(key)
            rows.append(row)
    return rows


def ideal_relations(m: Matroid, d: Bidegree) -> IntMatrix:
    """Coordinate rows (over :func:`monomial_basis`) of the ideal elements in bidegree d."""
    width = len(_monomials(d.letters, d.places))
    rows = _relation_rows(m, d)
    return IntMatrix.from_rows([[r.get(j, 0) for j in range(width)] for r in rows], width)


def standard_pairs(m: Matroid | None, d: Bidegree) -> list[TabPair]:
    """Standard pairs of bidegree d, restricted to independent rows when m is given."""
    pred = None if m is None else m.is_independent
    return enumerate_standard_pairs(d.letters, d.places, pred)


def graded_piece(m: Matroid, d: Bidegree) -> GradedPieceReport:
    width = len(_monomials(d.letters, d.places))
    snf = smith_normal_form_sparse(_relation_rows(m, d))
    return GradedPieceReport(
        bidegree=d,
        monomial_count=width,
        relation_rank=snf.rank,
        free_rank=width - snf.rank,
        torsion_invariants=snf.torsion,
        standard_pair_count=len(standard_pairs(m, d)),
    )


def standard_pairs_span_rank(m: Matroid, d: Bidegree) -> int:
    """Rank of the independent-row standard pairs modulo the relations."""
    index = _index(d)
    space = RowSpace()
    space.extend(_relation_rows(m, d))
    base = space.rank
    for pair in standard_pairs(m, d):
        space.add(_vector(tab_element(pair), index))
    return space.rank - base


def bidegrees(n_letters: int, max_places: int, max_degree: int | None = None,
              min_degree: int = 1) -> Iterator[Bidegree]:
    """Every bidegree of W(M)_{<= m}: letters in [n_letters], places in [max_places].

    A letter meets at most ``max_places`` distinct places and a place at most
    ``n_letters`` distinct letters.
    """
    top = n_letters * max_places if max_degree is None else max_degree
    for total in range(min_degree, top + 1):
        letter_comps = list(_bounded_compositions(total, [max_places] * n_letters))
        place_comps = list(_bounded_compositions(total, [n_letters] * max_places))
        for mu in letter_comps:
            for nu in place_comps:
                yield Bidegree(mu, nu)


@dataclass
class FreedomCheckReport:
    bits: str
    max_places: int
    max_degree: int | None
    checked: int = 0
    counterexample: GradedPieceReport | None = None
    reports: list[GradedPieceReport] = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def to_json(self) -> dict:
        return {
            "freedom": self.bits,
            "max_places": self.max_places,
            "max_degree": self.max_degree,
            "checked": self.checked,
            "ok": self.ok,
            "counterexample": None if self.ok else self.counterexample.to_json(),
        }


def _freedom_piece(job: tuple[str, Bidegree]) -> GradedPieceReport:
    from .matroid import freedom

    bits, d = job
    return graded_piece(freedom(bits), d)


def freedom_basis_check(bits: Sequence[int] | str, max_places: int,
                        max_degree: int | None = None, keep_reports: bool = False,
                        workers: int = 1) -> FreedomCheckReport:
    """For every bidegree in range: W(M_s) is free there and its rank is the
    number of standard pairs whose rows are independent.

    With ``workers > 1`` the pieces are computed in a process pool; results are
    consumed in bidegree order, so the report does not depend on scheduling.
    """
    from .matroid import freedom

    bits_s = "".join(str(int(b)) for b in bits)
    m = freedom(bits_s)
    report = FreedomCheckReport(bits_s, max_places, max_degree)
    jobs = [(bits_s, d) for d in bidegrees(m.n, max_places, max_degree)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pieces = list(pool.map(_freedom_piece, jobs, chunksize=8))
    else:
        pieces = (graded_piece(m, d) for _, d in jobs)
    for piece in pieces:
        report.checked += 1
        if keep_reports:
            report.reports.append(piece)
        if not piece.is_free_with_standard_basis:
            report.counterexample = piece
            break
    return report


# --- straightening ------------------------------------------------------------

@dataclass
class StraighteningResult:
    bidegree: Bidegree
    input_shape: tuple[int, ...] | None
    coefficients: dict[TabPair, Fraction]
    dominance_ok: bool
    content_ok: bool

    def to_json(self) -> dict:
        return {
            "bidegree": self.bidegree.to_json(),
            "input_shape": None if self.input_shape is None else list(self.input_shape),
            "terms": [
                {"coeff": str(c), **pair.to_json()} for pair, c in self.coefficients.items()
            ],
            "dominance_ok": self.dominance_ok,
            "content_ok": self.content_ok,
        }


def straighten(m: Matroid | None, t: TabPair | Element, d: Bidegree | None = None) -> StraighteningResult:
    """Expand ``t`` over the standard pairs of its bidegree by an exact solve.

    With ``m`` given the expansion is taken in W(M) over the standard pairs
    whose rows are independent; this is refused unless those pairs are
    linearly independent modulo the relations.
    """
    if isinstance(t, TabPair):
        shape = t.shape
        elem = tab_element(t)
        if d is None:
            d = Bidegree.of(t)
    else:
        shape = None
        elem = t
        if d is None:
            raise ValueError("a bidegree is required for Element input")
    index = _index(d)
    target = _vector(elem, index)
    basis = standard_pairs(m, d)
    space = RowSpace(track=True)
    for pair in basis:
        space.add(_vector(tab_element(pair), index))
    if space.rank != len(basis):
        raise StraighteningError(f"standard pairs of {d} are linearly dependent")
    if m is not None:
        relations = _relation_rows(m, d)
        space.extend(relations)
        if space.rank - len(basis) != RowSpace().extend(relations):
            raise StraighteningError(
                f"independent-row standard pairs of {d} are dependent modulo the relations"
            )
    sol = space.solve(target)
    if sol is None:
        raise NotInSpanError(f"input does not lie in the span of the standard pairs of {d}")
    coeffs = {basis[i]: c for i, c in sorted(sol.items()) if i < len(basis) and c}
    mu, nu = d.letters, d.places
    content_ok = all(
        _trim(content(p.row_tableau)) == mu and _trim(content(p.col_tableau)) == nu
        and is_row_strict(p.row_tableau) and is_column_strict(p.col_tableau)
        for p in coeffs
    )
    if isinstance(t, TabPair):
        content_ok = content_ok and Bidegree.of(t) == d
    dominance_ok = shape is None or all(dominance_leq(shape, p.shape) for p in coeffs)
    return StraighteningResult(d, shape, coeffs, dominance_ok, content_ok)


def dependent_slice_vanishes(m: Matroid, word: Sequence[int], alpha: Sequence[int],
                             d: Bidegree | None = None) -> bool:
    """Does ``(w | p^(alpha))`` lie in the rational span of the relations of its bidegree?"""
    word = tuple(word)
    elem = laplace_pair(word, _alpha_monomial(alpha))
    if d is None:
        letters = [0] * max(word)
        for l in word:
            letters[l - 1] += 1
        d = Bidegree(tuple(letters), tuple(alpha))
    vec = _vector(elem, _index(d))
    space = RowSpace()
    space.extend(_relation_rows(m, d))
    return vec in space


# --- realizations -------------------------------------------------------------

def _det(rows: list[list[Fraction]]) -> Fraction:
    a = [r[:] for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] * inv
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


def wedge_image(f: RationalMatrix, word: Sequence[int]) -> dict[tuple[int, ...], Fraction]:
    """f(e_{i_1}) ... f(e_{i_k}) expanded over increasing words in the row indices."""
    rows = f.to_rows()
    cols = [c - 1 for c in word]
    out = {}
    for r in combinations(range(f.rows), len(cols)):
        det = _det([[rows[i][j] for j in cols] for i in r])
        if det:
            out[tuple(i + 1 for i in r)] = det
    return out


def realization_image(f: RationalMatrix, pair: TabPair) -> Element:
    """Image of tab(T|S) under (e|p) -> (f(e)|p), letters of the result being row indices of f."""
    t, s = pair
    out = Element.one()
    for w, srow in zip(t.rows, s.rows):
        q = place_word(srow)
        factor = Element()
        for word, coeff in wedge_image(f, w).items():
            factor = factor + coeff * laplace_pair(word, q)
        out = ext_mul(out, factor)
        if not out:
            break
    return out


def _integral_columns(f: RationalMatrix) -> RationalMatrix:
    """Scale each column to a primitive integer vector (images only change by nonzero scalars)."""
    rows = f.to_rows()
    cols = []
    for j in range(f.cols):
        col = [rows[i][j] for i in range(f.rows)]
        den = 1
        for x in col:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in col]
        g = 0
        for x in ints:
            g = gcd(g, x)
        cols.append([x // g if g else 0 for x in ints])
    return RationalMatrix.from_rows([[cols[j][i] for j in range(f.cols)] for i in range(f.rows)], f.cols)


@dataclass
class GamasReport:
    ok: bool
    checked: int
    nonzero: int
    counterexample: TabPair | None = None
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checked": self.checked,
            "nonzero": self.nonzero,
            "counterexample": None if self.counterexample is None else self.counterexample.to_json(),
            "reason": self.reason,
        }


def gamas_check(f: RationalMatrix | Sequence[Sequence], max_boxes: int) -> GamasReport:
    """Check that realization images of standard pairs vanish exactly when a row of T is dependent.

    Covers every shape with at most ``max_boxes`` boxes, every row strict T
    with entries in the columns of f, and every column strict S whose
    entries are {1, ..., k}.  Any other column strict S is an order
    preserving relabelling of one of these, which renames pair generators
    and cannot change whether the image vanishes.
    """
    if not isinstance(f, RationalMatrix):
        f = RationalMatrix.from_rows(f)
    matroid = from_matrix(f)
    g = _integral_columns(f)
    n = f.cols
    checked = nonzero = 0

    @lru_cache(maxsize=None)
    def factor(w: tuple[int, ...], srow: tuple[int, ...]) -> Element:
        return realization_image(g, TabPair(Tableau((w,)), Tableau((srow,))))

    @lru_cache(maxsize=None)
    def independent(w: tuple[int, ...]) -> bool:
        return matroid.is_independent(w)

    for size in range(1, max_boxes + 1):
        for lam in partitions(size):
            for s in packed_column_strict(lam):
                found = _gamas_search(lam, s, n, factor, independent)
                checked += found[0]
                nonzero += found[1]
                if found[2] is not None:
                    pair, reason = found[2]
                    return GamasReport(False, checked, nonzero, pair, reason)
    return GamasReport(True, checked, nonzero)


def _gamas_search(lam, s: Tableau, n: int, factor, independent):
    """DFS over row strict T of shape lam, sharing prefix products."""
    checked = nonzero = 0
    rows_t: list[tuple[int, ...]] = []

    def candidates(i: int) -> Iterator[tuple[int, ...]]:
        length = lam[i]
        above = rows_t[i - 1] if i else None
        for comb in combinations(range(1, n + 1), length):
            if above is None or all(comb[j] >= above[j] for j in range(length)):
                yield comb

    def rec(i: int, prefix: Element, all_indep: bool):
        nonlocal checked, nonzero
        if i == len(lam):
            checked += 1
            if bool(prefix) != all_indep:
                why = "independent rows but zero image" if all_indep else "dependent row but nonzero image"
                return TabPair(Tableau(tuple(rows_t)), s), why
            nonzero += bool(prefix)
            return None
        for w in candidates(i):
            fac = factor(w, s.rows[i])
            ind = independent(w)
            if not ind and fac:
                single = TabPair(Tableau((w,)), Tableau((s.rows[i],)))
                return single, "dependent row but nonzero image"
            nxt = ext_mul(prefix, fac) if prefix and fac else Element()
            rows_t.append(w)
            bad = rec(i + 1, nxt, all_indep and ind)
            rows_t.pop()
            if bad is not None:
                return bad
        return None

    bad = rec(0, Element.one(), True)
    return checked, nonzero, bad


def nonzero_tableau_exists(f: RationalMatrix | Sequence[Sequence], letter_content: Sequence[int],
                           shape: Sequence[int]) -> bool:
    """Is some tab(T|S) with T of content ``letter_content`` and shape ``shape`` nonzero
    after realization?  S is the column strict tableau whose row i is all i's."""
    if not isinstance(f, RationalMatrix):
        f = RationalMatrix.from_rows(f)
    shape = tuple(x for x in shape if x)
    s = Tableau(tuple((i + 1,) * k for i, k in enumerate(shape)))
    remaining = list(letter_content)
    rows: list[tuple[int, ...]] = []

    def rec(i: int) -> bool:
        if i == len(shape):
            return bool(realization_image(f, TabPair(Tableau(tuple(rows)), s)))
        avail = [l + 1 for l, k in enumerate(remaining) if k]
        for comb in combinations(avail, shape[i]):
            for l in comb:
                remaining[l - 1] -= 1
            rows.append(comb)
            hit = rec(i + 1)
            rows.pop()
            for l in comb:
                remaining[l - 1] += 1
            if hit:
                return True
        return False

    if sum(letter_content) != sum(shape):
        return False
    return rec(0)
