from __future__ import annotations

import pytest

from gsb import (InconsistentPresentationError, OrientationError, RewriteSystem, Rule,
                 complete, compositions, fold, infer_schemas, inter_reduce, manturov, ore_extension,
                 parse_order, semigroup, verify_gsb)
from gsb.completion import INCLUSION, INTERSECTION, seed_rules
from gsb.core import Alphabet
from gsb.presentations import ALGEBRA, OreSpec, Presentation, y_polynomial
from gsb.textio import parse_polynomial

from systems import ABC, XY, g23_presentation, g23_schema, g23_system, g34_system, word_rules

X = Alphabet(("x",))


def P(text, A=ABC):
    return parse_polynomial(text, A)


def rule(text, A=ABC, order=None):
    lhs, rhs = text.split("->")
    return Rule(A.word(lhs.strip()), parse_polynomial(rhs, A))


def test_self_overlap_of_a_square_cancels():
    r = rule("xx -> 1", X)
    (c,) = [c for c in compositions(r, r) if c.w == X.word("xxx")]
    assert c.kind == INTERSECTION and not c.raw


def test_square_against_schema_instance():
    f = rule("bb -> 1")
    g = g23_schema().instance(1, ABC, f.rhs.field, 0)
    (c,) = compositions(f, g)
    assert c.w == ABC.word("bbacb")
    assert c.raw == P("-acb + bca")
    assert c.check_factorization()


def test_two_tetrahedron_rules():
    f, g = rule("bca -> acb"), rule("cab -> bac")
    (c,) = compositions(f, g)
    assert c.w == ABC.word("bcab")
    assert c.raw == P("bca - acb") * P("b") - P("b") * P("cab - bac")


def test_inclusion_composition():
    f, g = rule("xxx -> x", X), rule("xx -> 1", X)
    cs = compositions(f, g)
    incl = [c for c in cs if c.kind == INCLUSION]
    assert {(c.a, c.b) for c in incl} == {((), (0,)), ((0,), ())}
    assert all(c.check_factorization() and not c.raw for c in incl)


def test_g23_with_schema_is_certified():
    report = verify_gsb(g23_system(), schema_bound=10)
    assert report.certified and report.nontrivial == []
    assert all(c.check_factorization() for c in report.records)


def test_g34_rule_set_is_certified():
    report = verify_gsb(g34_system())
    assert report.certified


def test_truncated_g23_is_not_certified():
    sys_ = g23_system()
    trimmed = RewriteSystem(sys_.alphabet, sys_.order, sys_.rules, ())
    report = verify_gsb(trimmed)
    assert not report.certified
    assert any(c.w == ABC.word("bbca") for c in report.nontrivial)


def test_misoriented_system_is_rejected():
    with pytest.raises(OrientationError):
        RewriteSystem(XY, parse_order(XY, "deglex y < x"), word_rules(XY, [("xy", "yyx")]))


def test_inter_reduce_drops_reducible_rules():
    order = parse_order(X, "deglex x")
    out = inter_reduce([rule("xx -> 1", X), rule("xxx -> x", X)], order)
    assert [r.lhs for r in out] == [X.word("xx")]


def test_inter_reduce_removes_duplicates():
    order = parse_order(ABC, "deglex a < b < c")
    out = inter_reduce([rule("cba -> abc"), rule("cba -> abc")], order)
    assert len(out) == 1


def test_inter_reduce_fixed_point():
    order = parse_order(XY, "deglex x < y")
    rules = [rule("yx -> xy + 1", XY), rule("yyy -> x", XY)]
    assert inter_reduce(rules, order) == sorted(rules, key=lambda r: order.key(r.lhs))


def test_inter_reduce_reinserts_reduced_polynomial():
    order = parse_order(X, "deglex x")
    # x^3 - 1 modulo x^2 - x leaves x - 1, which then kills x^2 - x
    out = inter_reduce([rule("xx -> x", X), rule("xxx -> 1", X)], order)
    assert [r.format(order) for r in out] == ["x -> 1"]


def test_inter_reduce_detects_inconsistency():
    order = parse_order(X, "deglex x")
    with pytest.raises(InconsistentPresentationError):
        inter_reduce([rule("x -> 1", X), rule("xx -> 2", X)], order)


def test_infer_schemas_folds_the_g23_family():
    rules = [rule("bacb -> ca"), rule("bacacb -> caca"), rule("bacacacb -> cacaca")]
    schemas, rest = infer_schemas(rules)
    assert rest == [] and schemas == [g23_schema()]


def test_infer_schemas_needs_three_exponents():
    schemas, rest = infer_schemas([rule("xx -> 1", X)])
    assert schemas == [] and len(rest) == 1
    schemas, rest = infer_schemas([rule("yx -> xy", XY), rule("yyx -> xyy", XY)])
    assert schemas == [] and len(rest) == 2


def test_g23_completion_reaches_the_degree_cap():
    sys_, report = complete(g23_presentation(), max_deg=12)
    assert report.status == "CapReached" and report.cap == "max_deg"
    expected = {"aa": "", "bb": "", "cc": "", "bca": "acb", "cab": "bac", "cba": "abc"}
    expected.update({"b" + "ac" * m + "b": "ca" * m for m in range(1, 6)})
    got = {ABC.show(r.lhs): ABC.show(next(iter(r.rhs.terms))) for r in sys_.rules}
    got = {k: ("" if v == "1" else v) for k, v in got.items()}
    assert got == expected
    folded = fold(sys_)
    assert folded.schemas == (g23_schema(),)
    assert verify_gsb(folded, 12).certified


def test_manturov_one_subsets_stabilize():
    sys_, report = complete(manturov(3, 1))
    assert report.status == "Stabilized"
    assert len(sys_.rules) == 6


def test_weyl_algebra_completion():
    pres = ore_extension(OreSpec(y_polynomial("y"), y_polynomial("1")),
                         order=parse_order(XY, "deglex x < y"))
    sys_, report = complete(pres)
    assert report.status == "Stabilized"
    assert [r.format(sys_.order) for r in sys_.rules] == ["yx -> xy - 1"]


def test_seed_rules_orient_by_the_order():
    order = parse_order(XY, "revtower y < x")
    (r,) = seed_rules([(P("xy", XY), P("yyx", XY))], order)
    assert r.lhs == XY.word("xy")


def test_idempotent_generator_stabilizes():
    sys_, report = complete(semigroup(X, [("x", "xx")], parse_order(X, "deglex x")))
    assert report.status == "Stabilized"
    assert [r.format(sys_.order) for r in sys_.rules] == ["xx -> x"]


def test_inconsistent_presentation():
    bad = Presentation(X, ((P("x", X), P("1", X)), (P("xx", X), P("2", X))), parse_order(X, "deglex x"), ALGEBRA)
    with pytest.raises(InconsistentPresentationError):
        complete(bad)


def test_completion_caps_on_rules():
    sys_, report = complete(g23_presentation(), max_deg=40, max_rules=8)
    assert report.status == "CapReached" and report.cap == "max_rules"
    assert len(sys_.rules) > 8
