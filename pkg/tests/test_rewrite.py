from __future__ import annotations

import random

import pytest

from gsb import (DomainError, NonTerminationError, OrientationError, Polynomial, RewriteSystem, Rule,
                 find_occurrence, is_irreducible, normal_form, normal_word, parse_order, reduction_steps)
from gsb.rewrite import RuleRef
from gsb.textio import parse_polynomial

import oracles
from systems import ABC, XY, g23_system, word_rules


@pytest.fixture(scope="module")
def g23():
    return g23_system()


def W(text):
    return ABC.word(text)


def test_occurrence_of_finite_rule(g23):
    occ = find_occurrence(W("cba"), g23)
    assert occ.position == 0 and not occ.ref.schema
    assert g23.rules[occ.ref.index].lhs == W("cba")


def test_occurrence_of_schema_instance(g23):
    occ = find_occurrence(W("abacacba"), g23)
    assert occ.ref == RuleRef(0, True, 2)
    assert occ.position == 1 and occ.length == 6


def test_irreducible_word_has_no_occurrence(g23):
    assert find_occurrence(W("abab"), g23) is None


def test_normal_forms(g23):
    assert normal_word(W("bacacb"), g23) == W("caca")
    assert normal_word(W("aa"), g23) == ()
    assert normal_word(W("bbacb"), g23) == W("acb")


def test_irreducibility(g23):
    assert is_irreducible(W("abababacac"), g23)
    assert not is_irreducible(W("bacb"), g23)
    assert is_irreducible((), g23)


def test_normal_form_of_polynomial(g23):
    p = parse_polynomial("2*bacb - ca + 3*cba", ABC)
    assert normal_form(p, g23) == parse_polynomial("ca + 3*abc", ABC)


def test_misoriented_rule_is_rejected():
    order = parse_order(XY, "deglex y < x")
    with pytest.raises(OrientationError):
        RewriteSystem(XY, order, word_rules(XY, [("xy", "yyx")]))


def test_duplicate_left_hand_sides_are_rejected():
    order = parse_order(XY, "deglex y < x")
    with pytest.raises(DomainError):
        RewriteSystem(XY, order, word_rules(XY, [("xx", "y"), ("xx", "yy")]))


def test_step_budget_is_enforced(g23):
    with pytest.raises(NonTerminationError):
        normal_form(Polynomial.monomial(ABC, W("bacacacacbbacb")), g23, max_steps=2)


def test_idempotence_and_per_step_decrease(g23):
    rng = random.Random(11)
    key = g23.order.key
    for _ in range(1000):
        terms = {}
        for _ in range(rng.randint(1, 3)):
            w = tuple(rng.randrange(3) for _ in range(rng.randint(0, 9)))
            terms[w] = rng.randint(-3, 3)
        p = Polynomial(ABC, terms)
        nf = normal_form(p, g23)
        assert normal_form(nf, g23) == nf
        assert all(is_irreducible(w, g23) for w in nf.terms)
        prev = None
        for q in reduction_steps(p, g23):
            if prev is not None:
                gone = set(prev.terms) - set(q.terms)
                new = set(q.terms) - set(prev.terms)
                changed = {w for w in set(prev.terms) & set(q.terms) if prev.terms[w] != q.terms[w]}
                assert gone, "each step removes a term"
                top = max(gone, key=key)
                assert all(key(w) < key(top) for w in new | changed)
            prev = q
        assert prev == nf


def test_reduction_strategy_does_not_matter(g23):
    rng = random.Random(5)
    for _ in range(300):
        w = tuple(rng.randrange(3) for _ in range(rng.randint(0, 10)))
        p = Polynomial.monomial(ABC, w)
        canonical = normal_form(p, g23)
        *_, last = reduction_steps(p, g23, rng=rng)
        assert last == canonical


def test_normal_words_agree_with_string_rewriting(g23):
    rules = oracles.string_rules(g23) + oracles.schema_string_rules(g23, 6)
    for s in oracles.words("abc", 7):
        assert normal_word(W(s), g23) == W(oracles.naive_normal_form(s, rules))


def test_weyl_rule_reduces_polynomials():
    order = parse_order(XY, "deglex x < y")
    rhs = parse_polynomial("xy - 1", XY)
    sys_ = RewriteSystem(XY, order, (Rule(XY.word("yx"), rhs),))
    assert normal_form(parse_polynomial("y y x", XY), sys_) == parse_polynomial("xyy - 2*y", XY)
