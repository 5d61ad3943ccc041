"""Partitions, tableaux and the standard tableau pairs of the letter-place algebra.

Tableaux are stored row-major (English convention) with positive entries.
A *row strict* tableau has strictly increasing rows and weakly increasing
columns; a *column strict* one is the transpose notion (weakly increasing
rows, strictly increasing columns).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

from .superalgebra import Element, ext_mul, laplace_pair, place_word


# --- partitions ------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts if x)
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"{parts} is not weakly decreasing")
        if any(x < 0 for x in parts):
            raise ValueError("parts must be nonnegative")
        object.__setattr__(self, "parts", parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        return Partition(conjugate(self.parts))

    def is_hook(self) -> bool:
        return len(self.parts) <= 1 or self.parts[1] <= 1


def conjugate(parts: Sequence[int]) -> tuple[int, ...]:
    parts = [p for p in parts if p]
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > i) for i in range(parts[0]))


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def hook(k: int, n: int) -> tuple[int, ...]:
    """The hook (k, 1^(n-k))."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    return (k,) + (1,) * (n - k)


def dominance_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """Every prefix sum of a is at most the matching prefix sum of b.

    Shorter sequences are padded with zeros, so a partition of a larger
    number is never below one of a smaller number.
    """
    a = list(a)
    b = list(b)
    size = max(len(a), len(b))
    a += [0] * (size - len(a))
    b += [0] * (size - len(b))
    sa = sb = 0
    for x, y in zip(a, b):
        sa += x
        sb += y
        if sa > sb:
            return False
    return True


dominance_leq_shapes = dominance_leq


# --- tableaux --------------------------------------------------------------

@dataclass(frozen=True)
class Tableau:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        Partition(tuple(len(r) for r in rows))

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]]) -> "Tableau":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(self.shape)

    def columns(self) -> list[tuple[int, ...]]:
        shape = self.shape
        if not shape:
            return []
        return [tuple(r[j] for r in self.rows if len(r) > j) for j in range(shape[0])]

    def transpose(self) -> "Tableau":
        return Tableau(tuple(self.columns()))

    def entries(self) -> list[int]:
        return [x for r in self.rows for x in r]

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __str__(self) -> str:
        return "/".join(" ".join(map(str, r)) for r in self.rows)


def _strict(seq: Sequence[int]) -> bool:
    return all(seq[i] < seq[i + 1] for i in range(len(seq) - 1))


def _weak(seq: Sequence[int]) -> bool:
    return all(seq[i] <= seq[i + 1] for i in range(len(seq) - 1))


def is_row_strict(t: Tableau) -> bool:
    return all(_strict(r) for r in t.rows) and all(_weak(c) for c in t.columns())


def is_column_strict(t: Tableau) -> bool:
    return all(_weak(r) for r in t.rows) and all(_strict(c) for c in t.columns())


def content(t: Tableau) -> tuple[int, ...]:
    """Composition whose i-th part counts the i's (trailing zeros dropped)."""
    entries = t.entries()
    if not entries:
        return ()
    out = [0] * max(entries)
    for x in entries:
        out[x - 1] += 1
    return tuple(out)


def _trim(comp: Sequence[int]) -> tuple[int, ...]:
    comp = list(comp)
    while comp and comp[-1] == 0:
        comp.pop()
    return tuple(comp)


def column_strict_tableaux(shape: Sequence[int], content_: Sequence[int]) -> Iterator[Tableau]:
    """Semistandard tableaux of the given shape and content.

    Value i fills a horizontal strip of size content_[i-1] on top of the
    shape filled so far.
    """
    shape = tuple(x for x in shape if x)
    content_ = tuple(content_)
    if sum(shape) != sum(content_):
        return
    rows: list[list[int]] = [[] for _ in shape]

    def strips(value_idx: int) -> Iterator[None]:
        if value_idx == len(content_):
            if all(len(r) == s for r, s in zip(rows, shape)):
                yield None
            return
        need = content_[value_idx]
        value = value_idx + 1
        old = [len(r) for r in rows]

        def choose(i: int, left: int) -> Iterator[None]:
            if i == len(shape):
                if left == 0:
                    yield from strips(value_idx + 1)
                return
            cap = shape[i] - old[i]
            if i > 0:
                # horizontal strip: no new cell below another new cell
                cap = min(cap, old[i - 1] - old[i])
            for k in range(min(cap, left), -1, -1):
                rows[i].extend([value] * k)
                yield from choose(i + 1, left - k)
                del rows[i][len(rows[i]) - k:]

        yield from choose(0, need)

    for _ in strips(0):
        yield Tableau(tuple(tuple(r) for r in rows))


def row_strict_tableaux(shape: Sequence[int], content_: Sequence[int]) -> Iterator[Tableau]:
    """Row strict tableaux: transposes of column strict tableaux of the conjugate shape."""
    for t in column_strict_tableaux(conjugate(shape), content_):
        yield t.transpose()


def column_strict_bounded(shape: Sequence[int], max_entry: int) -> Iterator[Tableau]:
    """Column strict tableaux of the given shape with entries in [max_entry]."""
    shape = tuple(x for x in shape if x)
    cells = [(r, c) for r in range(len(shape)) for c in range(shape[r])]
    fill: dict[tuple[int, int], int] = {}

    def rec(i: int) -> Iterator[Tableau]:
        if i == len(cells):
            yield Tableau(tuple(tuple(fill[(r, c)] for c in range(shape[r])) for r in range(len(shape))))
            return
        r, c = cells[i]
        lo = 1
        if c > 0:
            lo = max(lo, fill[(r, c - 1)])
        if r > 0:
            lo = max(lo, fill[(r - 1, c)] + 1)
        for v in range(lo, max_entry + 1):
            fill[(r, c)] = v
            yield from rec(i + 1)
        fill.pop((r, c), None)

    yield from rec(0)


def row_strict_bounded(shape: Sequence[int], max_entry: int) -> Iterator[Tableau]:
    for t in column_strict_bounded(conjugate(shape), max_entry):
        yield t.transpose()


def packed_column_strict(shape: Sequence[int]) -> Iterator[Tableau]:
    """Column strict tableaux whose entries are exactly {1, ..., k} for some k."""
    size = sum(shape)
    for t in column_strict_bounded(shape, size):
        vals = set(t.entries())
        if vals == set(range(1, len(vals) + 1)):
            yield t


class TabPair(NamedTuple):
    row_tableau: Tableau
    col_tableau: Tableau

    @property
    def shape(self) -> tuple[int, ...]:
        return self.row_tableau.shape

    def to_json(self) -> dict:
        return {"T": self.row_tableau.to_json(), "S": self.col_tableau.to_json()}


def enumerate_standard_pairs(
    letter_content: Sequence[int],
    place_content: Sequence[int],
    row_predicate: Callable[[frozenset[int]], bool] | None = None,
) -> list[TabPair]:
    """All standard pairs (T_r, T_c) with the given contents.

    T_r is row strict with letter content ``letter_content``, T_c is column
    strict with place content ``place_content``, and every row of T_r (as a
    set) satisfies ``row_predicate`` when one is given.
    """
    if sum(letter_content) != sum(place_content):
        raise ValueError(
            f"letter total {sum(letter_content)} != place total {sum(place_content)}"
        )
    total = sum(letter_content)
    n_letters = sum(1 for x in letter_content if x)
    n_places = sum(1 for x in place_content if x)
    out = []
    for lam in partitions(total):
        # rows of T_r are sets of distinct letters; columns of T_c strictly increase
        if lam and (lam[0] > n_letters or len(lam) > n_places):
            continue
        rts = list(row_strict_tableaux(lam, letter_content))
        if row_predicate is not None:
            rts = [t for t in rts if all(row_predicate(frozenset(r)) for r in t.rows)]
        if not rts:
            continue
        cts = list(column_strict_tableaux(lam, place_content))
        out.extend(TabPair(t, s) for t in rts for s in cts)
    return out


def tab_element(pair: TabPair) -> Element:
    """tab(T|S): the product over rows of the Laplace pairings (w_i | q_i).

    q_i multiplies the places of row i of S in Super(P+), maximal runs of
    equal entries becoming divided powers.
    """
    t, s = pair
    if t.shape != s.shape:
        raise ValueError(f"shapes differ: {t.shape} vs {s.shape}")
    out = Element.one()
    for w, q in zip(t.rows, s.rows):
        if len(set(w)) != len(w):
            raise ValueError(f"row {w} of T repeats a letter")
        out = ext_mul(out, laplace_pair(w, place_word(q)))
        if not out:
            break
    return out


def rsk_row_insert(t: Tableau, value: int) -> tuple[Tableau, tuple[int, int]]:
    """Robinson-Schensted row insertion into a column strict tableau.

    Returns the new tableau and the (row, column) of the added box, 0-based.
    """
    rows = [list(r) for r in t.rows]
    x = value
    for i, row in enumerate(rows):
        # bump the leftmost entry strictly larger than x
        for j, y in enumerate(row):
            if y > x:
                row[j], x = x, y
                break
        else:
            row.append(x)
            return Tableau.of(rows), (i, len(row) - 1)
    rows.append([x])
    return Tableau.of(rows), (len(rows) - 1, 0)
