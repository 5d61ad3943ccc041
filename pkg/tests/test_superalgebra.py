import random
from itertools import permutations, product
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from whitneymod.superalgebra import (
    Element,
    canonical_sign,
    coproduct_letters,
    coproduct_places,
    coproduct_slice_letters,
    divided_power,
    dp_mul,
    ext_mul,
    ext_product,
    laplace_pair,
    laplace_pair_by_places,
    place_monomial,
    place_word,
    tensor_to_letterplace,
)

E, F, G = 1, 2, 3
P1, P2 = 1, 2


def pair(l, p):
    return Element.pair(l, p)


def perm_sign(seq):
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def pairing_oracle(word, q):
    """Sum over assignments of places to letters, place j used q_j times,
    of the product (w_1|s_1)(w_2|s_2)... taken in word order."""
    slots = [p for p, k in q for _ in range(k)]
    if len(slots) != len(word):
        return Element()
    out = Element()
    for assignment in set(permutations(slots)):
        out = out + Element.from_pairs(list(zip(word, assignment)))
    return out


def slice_oracle(word, alpha):
    """Blocks from position sets; sign of the permutation listing positions block by block."""
    out = {}

    def rec(remaining, parts, acc):
        if not parts:
            positions = [i for block in acc for i in block]
            blocks = tuple(tuple(word[i] for i in block) for block in acc)
            out[blocks] = out.get(blocks, 0) + perm_sign(positions)
            return
        from itertools import combinations

        for chosen in combinations(remaining, parts[0]):
            rest = [i for i in remaining if i not in chosen]
            rec(rest, parts[1:], acc + [list(chosen)])

    rec(list(range(len(word))), list(alpha), [])
    return out


# --- examples ------------------------------------------------------------------

def test_ext_mul_examples():
    ep1, fp2 = pair(E, P1), pair(F, P2)
    assert ext_mul(ep1, fp2) == Element({((E, P1), (F, P2)): 1})
    assert ext_mul(fp2, ep1) == Element({((E, P1), (F, P2)): -1})
    assert not ext_mul(ep1, ep1)
    ef = ext_mul(pair(E, P1), pair(F, P1))
    assert ext_mul(ef, pair(G, P2)) == Element({((E, P1), (F, P1), (G, P2)): 1})


def test_canonical_sign():
    assert canonical_sign([(2, 1), (1, 1)]) == (-1, ((1, 1), (2, 1)))
    assert canonical_sign([(1, 1), (1, 1)])[0] == 0


def test_dp_mul_examples():
    p1 = divided_power(P1, 1)
    assert dp_mul(p1, p1) == {place_monomial({P1: 2}): 2}
    q = {place_monomial({P2: 3}): 1}
    assert dp_mul(divided_power(P1, 0), q) == q
    a = dp_mul(divided_power(P1, 2), divided_power(P2, 3))
    assert a == dp_mul(divided_power(P2, 3), divided_power(P1, 2)) == {((P1, 2), (P2, 3)): 1}


def test_divided_power_factorial_relation():
    for k in range(1, 7):
        acc = {(): 1}
        for _ in range(k):
            acc = dp_mul(acc, divided_power(P1, 1))
        assert acc == {place_monomial({P1: k}): factorial(k)}


def test_place_word_groups_runs():
    # p3^(2) p4 p3 = p3^(2) p3 p4 = 3 p3^(3) p4
    assert place_word([3, 3, 4, 3]) == {((3, 3), (4, 1)): 3}
    assert place_word([5, 5, 5]) == {((5, 3),): 1}
    assert place_word([]) == {(): 1}


def test_coproduct_slice_examples():
    assert sorted(coproduct_slice_letters((E, F), (1, 1))) == sorted([(1, ((E,), (F,))), (-1, ((F,), (E,)))])
    assert coproduct_slice_letters((E, F), (2, 0)) == [(1, ((E, F), ()))]
    assert coproduct_slice_letters((E,), (1,)) == [(1, ((E,),))]
    with pytest.raises(ValueError):
        coproduct_slice_letters((E, F), (1, 0))
    with pytest.raises(ValueError):
        coproduct_slice_letters((E, E), (1, 1))


def test_coproduct_places_examples():
    assert sorted(coproduct_places(P1, 2, 2)) == sorted([((), ((P1, 2),)), (((P1, 1),), ((P1, 1),)), (((P1, 2),), ())])
    assert sorted(coproduct_places(P1, 1, 2)) == sorted([((), ((P1, 1),)), (((P1, 1),), ())])
    assert coproduct_places(P1, 2, 1) == [(((P1, 2),),)]


def test_laplace_examples():
    assert laplace_pair((E, F), {P1: 2}) == ext_mul(pair(E, P1), pair(F, P1))
    assert not laplace_pair((E,), {P1: 2})
    expected = ext_mul(pair(E, P1), pair(F, P2)) - ext_mul(pair(F, P1), pair(E, P2))
    assert laplace_pair((E, F), {P1: 1, P2: 1}) == expected
    assert laplace_pair_by_places((E, F), {P1: 1, P2: 1}) == expected
    with pytest.raises(ValueError):
        laplace_pair((E, E), {P1: 2})


def test_laplace_accepts_place_sums():
    q = place_word([1, 1, 2, 1])
    assert laplace_pair((1, 2, 3, 4), q) == 3 * laplace_pair((1, 2, 3, 4), {1: 3, 2: 1})


def test_tensor_examples():
    expected = ext_product([pair(E, 1), pair(E, 2), pair(F, 3)])
    assert tensor_to_letterplace([(E,), (E,), (F,)]) == expected
    assert tensor_to_letterplace([(), (E,)]) == pair(E, 2)
    assert tensor_to_letterplace([]) == Element.one()
    # slot i always uses place i
    assert tensor_to_letterplace([(E, F), (G,)]) == ext_mul(laplace_pair((E, F), {1: 2}), pair(G, 2))


def test_element_json_round_trip():
    x = laplace_pair((1, 2, 3), {1: 1, 2: 2})
    assert Element.from_json(x.to_json()) == x


# --- properties --------------------------------------------------------------

words = st.lists(st.integers(1, 6), min_size=0, max_size=5, unique=True).map(tuple)


@st.composite
def word_and_q(draw):
    w = draw(words)
    n_places = draw(st.integers(1, 4))
    cuts = sorted(draw(st.lists(st.integers(0, len(w)), min_size=n_places - 1, max_size=n_places - 1)))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [len(w)])]
    q = place_monomial({i + 1: k for i, k in enumerate(parts)})
    return w, q


@settings(max_examples=150, deadline=None)
@given(word_and_q())
def test_pairing_matches_assignment_oracle(wq):
    w, q = wq
    assert laplace_pair(w, q) == pairing_oracle(w, q)


@settings(max_examples=150, deadline=None)
@given(word_and_q())
def test_pairing_is_homogeneous(wq):
    w, q = wq
    for mono, _ in laplace_pair(w, q):
        assert sorted(l for l, _ in mono) == sorted(w)
        places = {}
        for _, p in mono:
            places[p] = places.get(p, 0) + 1
        assert tuple(sorted(places.items())) == q


@settings(max_examples=100, deadline=None)
@given(words.filter(lambda w: len(w) >= 1), st.integers(0, 5))
def test_single_place_formula(w, _):
    assert laplace_pair(w, {7: len(w)}) == ext_product([pair(l, 7) for l in w])


@settings(max_examples=100, deadline=None)
@given(words, st.lists(st.integers(0, 5), min_size=1, max_size=4))
def test_slices_match_oracle(w, raw):
    total = sum(raw)
    if total == 0:
        alpha = [len(w)] + [0] * (len(raw) - 1)
    else:
        alpha = [x * len(w) // total for x in raw]
        alpha[0] += len(w) - sum(alpha)
    got = {}
    for s, blocks in coproduct_slice_letters(w, alpha):
        got[blocks] = got.get(blocks, 0) + s
    assert {k: v for k, v in got.items() if v} == {k: v for k, v in slice_oracle(w, alpha).items() if v}


def _apply_left(terms):
    out = {}
    for s, (a, b) in terms:
        for s2, (a1, a2) in coproduct_letters(a):
            key = (a1, a2, b)
            out[key] = out.get(key, 0) + s * s2
    return {k: v for k, v in out.items() if v}


def _apply_right(terms):
    out = {}
    for s, (a, b) in terms:
        for s2, (b1, b2) in coproduct_letters(b):
            # moving the odd delta past a contributes no sign: delta has degree 0
            key = (a, b1, b2)
            out[key] = out.get(key, 0) + s * s2
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize("length", range(0, 6))
def test_coassociativity(length):
    w = tuple(range(1, length + 1))
    d = coproduct_letters(w)
    left = _apply_left(d)
    assert left == _apply_right(d)
    # both equal the three-block slices
    three = {}
    for a in range(length + 1):
        for b in range(length + 1 - a):
            for s, blocks in coproduct_slice_letters(w, (a, b, length - a - b)):
                three[blocks] = three.get(blocks, 0) + s
    assert left == {k: v for k, v in three.items() if v}


elements = st.lists(
    st.tuples(st.integers(-3, 3), st.lists(st.tuples(st.integers(1, 3), st.integers(1, 3)), max_size=3)),
    max_size=3,
).map(lambda ts: sum((Element.from_pairs(ps, c) for c, ps in ts), Element()))


@settings(max_examples=100, deadline=None)
@given(elements, elements, elements)
def test_ext_mul_associative(a, b, c):
    assert ext_mul(ext_mul(a, b), c) == ext_mul(a, ext_mul(b, c))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 4), st.integers(1, 4)), max_size=4),
       st.lists(st.tuples(st.integers(1, 4), st.integers(1, 4)), max_size=4))
def test_ext_mul_graded_commutative(pa, pb):
    a, b = Element.from_pairs(pa), Element.from_pairs(pb)
    sign = (-1) ** (len(pa) * len(pb))
    assert ext_mul(a, b) == sign * ext_mul(b, a)


def test_pairing_routes_agree_on_seeded_inputs():
    rng = random.Random(2024)
    for _ in range(500):
        k = rng.randint(0, 5)
        w = tuple(rng.sample(range(1, 8), k))
        n_places = rng.randint(1, 4)
        parts = [0] * n_places
        for _ in range(k):
            parts[rng.randrange(n_places)] += 1
        q = place_monomial({rng.randint(1, 9) * 10 + i: x for i, x in enumerate(parts)})
        assert laplace_pair(w, q) == laplace_pair_by_places(w, q)


def test_square_of_full_pairing_vanishes():
    factor = laplace_pair((1, 2, 3), {1: 1, 2: 1, 3: 1})
    assert factor
    assert not ext_mul(factor, factor)
