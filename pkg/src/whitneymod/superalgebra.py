"""The letter-place superalgebra Super(L-|P+).

Letters are negatively signed, places positively signed, so every
letter-place pair ``(e|p)`` is an odd generator and Super(L-|P+) is the
exterior algebra on the pairs.  Letters and places are positive integers;
the pair ``(e_i|p_j)`` is the tuple ``(i, j)``.

Conventions
-----------
* A monomial is a tuple of distinct pairs in lexicographic order.  The sign
  of the sort that brings a product into that order is absorbed into the
  coefficient.
* The letter coproduct is an algebra map into the super tensor square,
  ``(a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd``, so the slice
  ``delta^(alpha)(w)`` carries the Koszul sign of the shuffle that splits
  ``w`` into its blocks.
* Place monomials ``p_1^(a_1) p_2^(a_2) ...`` are tuples of ``(place, exponent)``
  with positive exponents sorted by place.  Linear combinations of them
  ("place sums") are dicts ``monomial -> int``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

Pair = tuple[int, int]
Monomial = tuple[Pair, ...]
Word = tuple[int, ...]
PlaceMonomial = tuple[tuple[int, int], ...]


def canonical_sign(pairs: Sequence[Pair]) -> tuple[int, Monomial]:
    """Sort a product of odd generators; returns (sign, monomial), sign 0 on a repeat."""
    pairs = list(pairs)
    inversions = 0
    for i in range(1, len(pairs)):
        x = pairs[i]
        j = i
        while j > 0 and pairs[j - 1] > x:
            pairs[j] = pairs[j - 1]
            j -= 1
        inversions += i - j
        pairs[j] = x
        if j > 0 and pairs[j - 1] == x:
            return 0, ()
    return (-1 if inversions % 2 else 1), tuple(pairs)


def _merge_sign(a: Monomial, b: Monomial) -> tuple[int, Monomial]:
    """Product of two canonical monomials a*b."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    out = []
    i = j = 0
    parity = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        x, y = a[i], b[j]
        if x < y:
            out.append(x)
            i += 1
        elif y < x:
            # y jumps over the la - i remaining letters of a
            parity += la - i
            out.append(y)
            j += 1
        else:
            return 0, ()
    out.extend(a[i:])
    out.extend(b[j:])
    return (-1 if parity % 2 else 1), tuple(out)


class Element:
    """A finite linear combination of letter-place monomials.

    Coefficients are ints in Super(L-|P+) itself; realization images over Q
    use Fractions.  Instances are treated as immutable.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        self.terms: dict[Monomial, object] = {
            m: c for m, c in (terms or {}).items() if c
        }

    @classmethod
    def one(cls) -> "Element":
        return cls({(): 1})

    @classmethod
    def zero(cls) -> "Element":
        return cls()

    @classmethod
    def pair(cls, letter: int, place: int) -> "Element":
        return cls({((letter, place),): 1})

    @classmethod
    def from_pairs(cls, pairs: Sequence[Pair], coeff=1) -> "Element":
        """The product of the given pairs in the given order."""
        sign, mono = canonical_sign(pairs)
        return cls({mono: sign * coeff}) if sign else cls()

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, object]]:
        return iter(sorted(self.terms.items()))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Element({(): other})
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, mono: Sequence[Pair]):
        sign, m = canonical_sign(mono)
        return sign * self.terms.get(m, 0) if sign else 0

    def __add__(self, other: "Element") -> "Element":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Element(out)

    def __neg__(self) -> "Element":
        return Element({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Element):
            return ext_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return Element({m: c * other for m, c in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self:
            body = "".join(f"(e{l}|p{p})" for l, p in m) or "1"
            parts.append(f"{c}*{body}")
        return " + ".join(parts)

    def degrees(self) -> set[int]:
        return {len(m) for m in self.terms}

    def letter_contents(self) -> set[tuple[int, ...]]:
        return {_content(l for l, _ in m) for m in self.terms}

    def place_contents(self) -> set[tuple[int, ...]]:
        return {_content(p for _, p in m) for m in self.terms}

    def to_json(self) -> list[dict]:
        out = []
        for m, c in self:
            if isinstance(c, Fraction) and c.denominator != 1:
                cj = f"{c.numerator}/{c.denominator}"
            else:
                cj = int(c)
            out.append({"coeff": cj, "pairs": [list(p) for p in m]})
        return out

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "Element":
        out = Element()
        for term in data:
            c = term["coeff"]
            c = Fraction(c) if isinstance(c, str) else int(c)
            if isinstance(c, Fraction) and c.denominator == 1:
                c = int(c)
            out = out + Element.from_pairs([tuple(p) for p in term["pairs"]], c)
        return out


def _content(values: Iterable[int]) -> tuple[int, ...]:
    values = list(values)
    if not values:
        return ()
    out = [0] * max(values)
    for v in values:
        out[v - 1] += 1
    return tuple(out)


def ext_mul(a: Element, b: Element) -> Element:
    """Exterior product with the Koszul sign of the odd pair generators."""
    out: dict[Monomial, object] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            sign, m = _merge_sign(ma, mb)
            if sign:
                out[m] = out.get(m, 0) + sign * ca * cb
    return Element(out)


def ext_product(factors: Iterable[Element]) -> Element:
    out = Element.one()
    for f in factors:
        out = ext_mul(out, f)
        if not out:
            break
    return out


# --- divided powers --------------------------------------------------------

def place_monomial(exponents: Mapping[int, int] | Iterable[tuple[int, int]]) -> PlaceMonomial:
    items = exponents.items() if isinstance(exponents, Mapping) else exponents
    merged: dict[int, int] = {}
    for p, k in items:
        if k < 0:
            raise ValueError("negative divided-power exponent")
        if k:
            if p in merged:
                raise ValueError(f"place {p} given twice; use dp_mul to combine")
            merged[p] = k
    return tuple(sorted(merged.items()))


def divided_power(place: int, k: int) -> dict[PlaceMonomial, int]:
    """``p^(k)`` as a place sum; ``p^(0)`` is 1."""
    return {place_monomial({place: k}): 1}


def place_degree(q: PlaceMonomial) -> int:
    return sum(k for _, k in q)


def dp_mul(q: Mapping[PlaceMonomial, int], r: Mapping[PlaceMonomial, int]) -> dict[PlaceMonomial, int]:
    """Product in Super(P+): commutative, ``p^(j) p^(k) = C(j+k, k) p^(j+k)``."""
    out: dict[PlaceMonomial, int] = {}
    for m1, c1 in q.items():
        for m2, c2 in r.items():
            e = dict(m1)
            c = c1 * c2
            for p, k in m2:
                j = e.get(p, 0)
                c *= comb(j + k, k)
                e[p] = j + k
            key = tuple(sorted(e.items()))
            out[key] = out.get(key, 0) + c
    return {m: c for m, c in out.items() if c}


def place_word(places: Sequence[int]) -> dict[PlaceMonomial, int]:
    """The product ``p_{s_1} p_{s_2} ...`` in Super(P+), grouping maximal runs
    of equal entries into divided powers first."""
    out = {(): 1}
    i = 0
    while i < len(places):
        j = i
        while j < len(places) and places[j] == places[i]:
            j += 1
        out = dp_mul(out, divided_power(places[i], j - i))
        i = j
    return out


# --- coproducts ------------------------------------------------------------

def _weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def coproduct_slice_letters(word: Sequence[int], alpha: Sequence[int]) -> list[tuple[int, tuple[Word, ...]]]:
    """The slice ``delta^(alpha)(w)`` as a list of ``(sign, (w_1, ..., w_k))``.

    Each term splits the positions of ``w`` into blocks of sizes ``alpha``
    (letters keep their order inside a block); the sign is that of the
    shuffle taking ``w`` to the concatenation of the blocks.
    """
    word = tuple(word)
    alpha = tuple(alpha)
    if any(a < 0 for a in alpha):
        raise ValueError("composition parts must be nonnegative")
    if sum(alpha) != len(word):
        raise ValueError(f"|w| = {len(word)} but |alpha| = {sum(alpha)}")
    if len(set(word)) != len(word):
        raise ValueError(f"word {word} repeats a letter")
    return [(s, blocks) for s, blocks in _slices(word, alpha)]


@lru_cache(maxsize=None)
def _slices(word: Word, alpha: tuple[int, ...]) -> tuple[tuple[int, tuple[Word, ...]], ...]:
    if not alpha:
        return ((1, ()),) if not word else ()
    k = len(word)
    out = []
    first = alpha[0]
    for chosen in combinations(range(k), first):
        rest = [i for i in range(k) if i not in chosen]
        # inversions of the shuffle: a chosen position after a rest position
        inv = sum(1 for c in chosen for r in rest if r < c)
        head = tuple(word[i] for i in chosen)
        tail = tuple(word[i] for i in rest)
        s0 = -1 if inv % 2 else 1
        for s1, blocks in _slices(tail, alpha[1:]):
            out.append((s0 * s1, (head,) + blocks))
    return tuple(out)


def coproduct_letters(word: Sequence[int]) -> list[tuple[int, tuple[Word, Word]]]:
    """The full coproduct ``delta(w)`` as ``(sign, (w_(1), w_(2)))`` terms."""
    word = tuple(word)
    out = []
    for i in range(len(word) + 1):
        out.extend(coproduct_slice_letters(word, (i, len(word) - i)))
    return out


def coproduct_places(place: int, power: int, parts: int) -> list[tuple[PlaceMonomial, ...]]:
    """Iterated coproduct of ``p^(j)``: every weak composition of ``j`` into
    ``parts`` parts, as tuples of divided powers (all coefficients +1)."""
    return [
        tuple(place_monomial({place: k}) for k in comp)
        for comp in _weak_compositions(power, parts)
    ]


def coproduct_place_monomial(q: PlaceMonomial) -> list[tuple[PlaceMonomial, PlaceMonomial]]:
    """``delta(q)`` for a monomial, multiplying the coproducts of its factors
    (places are even, so no signs)."""
    per_place = [coproduct_places(p, k, 2) for p, k in q]
    out = []
    for choice in product(*per_place):
        left = place_monomial([pm[0] for pm, _ in choice if pm])
        right = place_monomial([pm[0] for _, pm in choice if pm])
        out.append((left, right))
    return out


# --- Laplace pairing -------------------------------------------------------

def _as_place_sum(q) -> dict[PlaceMonomial, int]:
    # a dict keyed by place monomials is a place sum; keyed by ints, a monomial
    if isinstance(q, Mapping) and all(isinstance(k, tuple) for k in q):
        return dict(q)
    return {place_monomial(q): 1}


def _check_word(word: Sequence[int]) -> Word:
    word = tuple(word)
    if len(set(word)) != len(word):
        raise ValueError(f"word {word} repeats a letter")
    if any(l < 1 for l in word):
        raise ValueError("letters are positive integers")
    return word


def laplace_pair(word: Sequence[int], q) -> Element:
    """The Laplace pairing ``(w|q)``.

    ``q`` is a place monomial (tuple or mapping place -> exponent) or a place
    sum.  The expansion splits the place side one divided power at a time
    and the word by the matching coproduct slice; a single divided power is
    peeled letter by letter.
    """
    word = _check_word(word)
    total = Element()
    for mono, c in _as_place_sum(q).items():
        total = total + c * _pair_split_letters(word, mono)
    return total


@lru_cache(maxsize=None)
def _pair_split_letters(word: Word, q: PlaceMonomial) -> Element:
    if len(word) != place_degree(q):
        return Element()
    if not q:
        return Element.one()
    if len(q) == 1:
        return _pair_single_place(word, q[0][0])
    (p, a), rest = q[0], q[1:]
    out = Element()
    for sign, (w1, w2) in _slices(word, (a, len(word) - a)):
        out = out + sign * ext_mul(_pair_single_place(w1, p), _pair_split_letters(w2, rest))
    return out


@lru_cache(maxsize=None)
def _pair_single_place(word: Word, place: int) -> Element:
    # Omega(e w', p^(k)) = (e|p) Omega(w', p^(k-1)): the letter-side rule
    # where every other split of the coproduct dies for degree reasons
    if not word:
        return Element.one()
    return ext_mul(Element.pair(word[0], place), _pair_single_place(word[1:], place))


def laplace_pair_by_places(word: Sequence[int], q) -> Element:
    """Same pairing, expanded by splitting the place side with its coproduct.

    Independent of :func:`laplace_pair`; the two agreeing is the consistency
    of the two expansion rules.
    """
    word = _check_word(word)
    total = Element()
    for mono, c in _as_place_sum(q).items():
        total = total + c * _pair_split_places(word, mono)
    return total


@lru_cache(maxsize=None)
def _pair_split_places(word: Word, q: PlaceMonomial) -> Element:
    if len(word) != place_degree(q):
        return Element()
    if not word:
        return Element.one()
    head, tail = word[0], word[1:]
    out = Element()
    for q1, q2 in coproduct_place_monomial(q):
        if place_degree(q1) != 1:
            continue
        ((p, _),) = q1
        out = out + ext_mul(Element.pair(head, p), _pair_split_places(tail, q2))
    return out


def tensor_to_letterplace(tensor: Sequence[Sequence[int]]) -> Element:
    """Image of ``w_1 (x) ... (x) w_n``: the product of ``(w_i | p_i^(|w_i|))``."""
    out = Element.one()
    for i, w in enumerate(tensor, start=1):
        if not w:
            continue
        if len(set(w)) != len(w):
            # a repeated letter makes the word itself zero
            return Element()
        out = ext_mul(out, laplace_pair(w, place_monomial({i: len(w)})))
    return out
