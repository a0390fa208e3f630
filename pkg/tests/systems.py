"""Systems shared across the test modules, entered by hand."""

from __future__ import annotations

from gsb import Alphabet, Polynomial, RewriteSystem, Rule, RuleSchema, parse_order, semigroup

ABC = Alphabet(("a", "b", "c"))
XY = Alphabet(("x", "y"))
ABCD = Alphabet(("a", "b", "c", "d"))

G23_RELATIONS = [("aa", ""), ("bb", ""), ("cc", ""), ("cba", "abc"), ("cab", "bac"), ("bca", "acb")]

G34_RULES = [("aa", ""), ("bb", ""), ("cc", ""), ("dd", ""), ("ba", "cdabcd"), ("bcda", "adcb"),
             ("bca", "dacbd"), ("bda", "cadbc"), ("dca", "cdabcdcdb"), ("dcda", "cabdcdcb")]


def word_rules(A: Alphabet, pairs) -> tuple[Rule, ...]:
    return tuple(Rule(A.word(l), Polynomial.monomial(A, A.word(r))) for l, r in pairs)


def g23_schema() -> RuleSchema:
    # b (ac)^m b -> (ca)^m
    return RuleSchema(prefix=(1,), block=(0, 2), suffix=(1,), rprefix=(), rblock=(2, 0), rsuffix=(), m_min=1)


def g23_system() -> RewriteSystem:
    """Rules x^2 -> 1, bca -> acb, cab -> bac, cba -> abc and the schema family."""
    order = parse_order(ABC, "deglex a < b < c")
    rules = word_rules(ABC, [("aa", ""), ("bb", ""), ("cc", ""), ("bca", "acb"), ("cab", "bac"), ("cba", "abc")])
    return RewriteSystem(ABC, order, rules, (g23_schema(),))


def g23_presentation():
    return semigroup(ABC, G23_RELATIONS, parse_order(ABC, "deglex a < b < c"), name="G23")


def g34_system() -> RewriteSystem:
    return RewriteSystem(ABCD, parse_order(ABCD, "tower a > b > c > d"), word_rules(ABCD, G34_RULES), ())


def xy_presentation(order_text: str):
    """x y = y^2 x."""
    return semigroup(XY, [("xy", "yyx")], parse_order(XY, order_text))
