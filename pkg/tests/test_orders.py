from __future__ import annotations

import random

import pytest

from gsb import Alphabet, DomainError, ParseError, compare, length_bound, parse_order
from gsb.orders import Comparison, LengthBound

import oracles

ABC = Alphabet(("a", "b", "c"))
ABCD = Alphabet(("a", "b", "c", "d"))
XY = Alphabet(("x", "y"))

LESS, EQUAL, GREATER = Comparison.LESS, Comparison.EQUAL, Comparison.GREATER

FAMILIES = {
    "deglex": (ABC, "deglex a < b < c", oracles.deglex_cmp("abc")),
    "wdeglex": (XY, "wdeglex x:2 y:1 ; y < x", oracles.wdeglex_cmp({"x": 2, "y": 1}, "yx")),
    "tower": (ABCD, "tower a > b > c > d", oracles.tower_cmp("abcd")),
    "revtower": (XY, "revtower y < x", oracles.revtower_two_letter_cmp("y", "x")),
}


def W(A, text):
    return A.word(text)


def test_spec_comparisons():
    assert compare(parse_order(ABC, "deglex a < b < c"), W(ABC, "ba"), W(ABC, "acb")) == LESS
    assert compare(parse_order(XY, "revtower y < x"), W(XY, "yyx"), W(XY, "xy")) == LESS
    assert compare(parse_order(ABCD, "tower a > b > c > d"), W(ABCD, "cdabcd"), W(ABCD, "ba")) == LESS
    assert compare(parse_order(XY, "wdeglex x:2 y:1 ; y < x"), W(XY, "xy"), W(XY, "yyyy")) == LESS


def test_length_bounds():
    assert length_bound(parse_order(ABC, "deglex a < b < c")) == LengthBound.linear(1)
    assert length_bound(parse_order(XY, "wdeglex x:2 y:1 ; y < x")) == LengthBound.linear(2)
    assert length_bound(parse_order(XY, "revtower y < x")).kind == "none"
    assert length_bound(parse_order(ABCD, "tower a > b > c > d")).kind == "none"


def test_empty_word_is_minimum():
    for A, text, _ in FAMILIES.values():
        order = parse_order(A, text)
        for w in oracles.words("".join(A.letters), 3, 1):
            assert compare(order, (), A.word(w)) == LESS


def _random_word(rng, k, max_len=7):
    return tuple(rng.randrange(k) for _ in range(rng.randint(0, max_len)))


@pytest.mark.parametrize("family", sorted(FAMILIES))
def test_order_axioms_on_random_triples(family):
    A, text, _ = FAMILIES[family]
    order = parse_order(A, text)
    rng = random.Random(family)
    k = len(A)
    for _ in range(10_000):
        u, v, w = (_random_word(rng, k) for _ in range(3))
        l, r = _random_word(rng, k, 3), _random_word(rng, k, 3)
        c = compare(order, u, v)
        assert (c == EQUAL) == (u == v)
        assert compare(order, v, u) == -c
        if c == LESS:
            assert compare(order, l + u + r, l + v + r) == LESS
        if c == LESS and compare(order, v, w) == LESS:
            assert compare(order, u, w) == LESS


@pytest.mark.parametrize("family", sorted(FAMILIES))
def test_orders_agree_with_reference_comparisons(family):
    A, text, ref = FAMILIES[family]
    order = parse_order(A, text)
    letters = "".join(A.letters)
    ws = list(oracles.words(letters, 5 if len(A) > 2 else 7))
    ours = sorted(ws, key=lambda s: order.key(A.word(s)))
    assert ours == oracles.sort_words(ws, ref)


@pytest.mark.parametrize("family", ["deglex", "wdeglex"])
def test_linear_length_bound_holds(family):
    A, text, _ = FAMILIES[family]
    order = parse_order(A, text)
    c = length_bound(order).c
    rng = random.Random(7)
    for _ in range(10_000):
        u, v = _random_word(rng, len(A), 9), _random_word(rng, len(A), 9)
        if compare(order, u, v) == LESS:
            assert len(u) <= c * len(v)


def test_reverse_tower_has_no_length_bound():
    order = parse_order(XY, "revtower y < x")
    for k in range(1, 51):
        assert compare(order, W(XY, "y" * k + "x"), W(XY, "xy")) == LESS


def test_reverse_tower_mirrors_tower_on_larger_alphabets():
    rt = parse_order(ABC, "revtower c < b < a")
    t = parse_order(ABC, "tower a > b > c")
    for u in oracles.words("abc", 4):
        for v in ("ab", "cab", "bca", "abca"):
            assert compare(rt, W(ABC, u), W(ABC, v)) == compare(t, W(ABC, u[::-1]), W(ABC, v[::-1]))


def test_order_parsing():
    assert parse_order(ABC, "order: deglex c < a < b").spec() == "deglex c < a < b"
    assert parse_order(ABC, "deglex").spec() == "deglex a < b < c"
    w = parse_order(XY, "wdeglex x:2 y:1 ; x < y within weight")
    assert w.spec() == "wdeglex x:2 y:1 ; x < y"
    for bad in ("lexico a < b", "deglex a < q < b", "deglex a < b", "tower a > b > c > a"):
        with pytest.raises((ParseError, DomainError)):
            parse_order(ABC, bad)


def test_alphabet_mismatch_is_a_domain_error():
    with pytest.raises(DomainError):
        compare(parse_order(XY, "deglex x < y"), (0, 5), (1,))


def test_keys_are_cached_consistently():
    order = parse_order(ABCD, "tower a > b > c > d")
    w = W(ABCD, "dcabcdab")
    assert order.key(w) == order.key(w)
    assert order.key(w) == order._wt(w)
