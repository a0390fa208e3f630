"""Oriented rules, pumped rule schemas, and reduction to normal form.

A :class:`Rule` ``lhs -> rhs`` stands for the monic polynomial ``lhs - rhs``.
A :class:`RuleSchema` stands for the infinite family

    P B^m S -> P' B'^m S'        (m >= m_min)

which is how an infinite Groebner-Shirshov basis such as
``b (a c)^m b -> (c a)^m`` is represented finitely.

Reduction strategy is fixed: the order-maximal reducible term is rewritten at
its leftmost occurrence; among rules matching there the finite rule with the
lowest index wins, then schemas (lowest index, largest exponent).
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

from .core import Alphabet, Polynomial, Word, make_monic, leading_monomial
from .errors import DomainError, NonTerminationError, OrientationError
from .orders import MonomialOrder

DEFAULT_STEP_BUDGET = 10**6


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: Polynomial
    origin: tuple = ("input",)

    def polynomial(self) -> Polynomial:
        return Polynomial.monomial(self.rhs.alphabet, self.lhs, 1, self.rhs.field) - self.rhs

    def is_binomial(self) -> bool:
        return len(self.rhs) == 1 and next(iter(self.rhs.terms.values())) == 1

    @classmethod
    def from_polynomial(cls, f: Polynomial, order: MonomialOrder, origin: tuple = ("input",)) -> Rule:
        f = make_monic(f, order)
        lhs, _ = leading_monomial(f, order)
        if lhs == ():
            raise OrientationError("a nonzero constant cannot be oriented into a rule")
        rhs = Polynomial.monomial(f.alphabet, lhs, 1, f.field) - f
        return cls(lhs, rhs, origin)

    def format(self, order: MonomialOrder | None = None, spaced: bool = False) -> str:
        A = self.rhs.alphabet
        show = A.spaced if spaced else A.show
        return f"{show(self.lhs)} -> {self.rhs.format(order, spaced=spaced)}"


@dataclass(frozen=True)
class RuleSchema:
    """``prefix block^m suffix -> rprefix rblock^m rsuffix`` for ``m >= m_min``."""

    prefix: Word
    block: Word
    suffix: Word
    rprefix: Word
    rblock: Word
    rsuffix: Word
    m_min: int = 1

    def __post_init__(self):
        if not self.block:
            raise DomainError("a schema needs a non-empty pumped block")
        if self.m_min < 1:
            raise DomainError("schema exponents start at 1 or later")

    def lhs(self, m: int) -> Word:
        return self.prefix + self.block * m + self.suffix

    def rhs_word(self, m: int) -> Word:
        return self.rprefix + self.rblock * m + self.rsuffix

    def instance(self, m: int, alphabet: Alphabet, fld, index: int | None = None) -> Rule:
        if m < self.m_min:
            raise DomainError(f"exponent {m} below m_min={self.m_min}")
        rhs = Polynomial.monomial(alphabet, self.rhs_word(m), 1, fld)
        return Rule(self.lhs(m), rhs, ("schema", index, m))

    def format(self, alphabet: Alphabet, spaced: bool = True) -> str:
        show = alphabet.spaced if spaced else alphabet.show

        def side(p, b, s):
            parts = [show(p)] if p else []
            if b:
                parts.append(f"({show(b)})^m")
            if s:
                parts.append(show(s))
            return " ".join(parts) if parts else "1"

        return (f"{side(self.prefix, self.block, self.suffix)} -> "
                f"{side(self.rprefix, self.rblock, self.rsuffix)} for m >= {self.m_min}")


class RuleRef(NamedTuple):
    """Identifies a finite rule (``schema is None``) or a schema instance."""

    index: int
    schema: bool = False
    m: int | None = None

    def label(self) -> str:
        return f"schema[{self.index}](m={self.m})" if self.schema else f"rule[{self.index}]"


class Occurrence(NamedTuple):
    ref: RuleRef
    position: int
    length: int


@dataclass(frozen=True)
class RewriteSystem:
    """Rules and schemas over one alphabet and one monomial order.

    Construction checks orientation (every rhs word strictly below its lhs)
    for every rule and for schema instances up to ``m_min + check_depth``.
    """

    alphabet: Alphabet
    order: MonomialOrder
    rules: tuple[Rule, ...] = ()
    schemas: tuple[RuleSchema, ...] = ()
    check_depth: int = 8
    _index: dict = field(default=None, compare=False, repr=False, hash=False)
    _trie: dict = field(default=None, compare=False, repr=False, hash=False)
    _cache: dict = field(default=None, compare=False, repr=False, hash=False)
    _monomial_valued: bool = field(default=True, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "schemas", tuple(self.schemas))
        self.order.check_alphabet(self.alphabet)
        index: dict[Word, int] = {}
        for i, r in enumerate(self.rules):
            self._check_rule(r, index)
            index[r.lhs] = i
        for s in self.schemas:
            for part in (s.prefix, s.block, s.suffix, s.rprefix, s.rblock, s.rsuffix):
                self.alphabet.check(part)
            for m in range(s.m_min, s.m_min + self.check_depth + 1):
                if not self.order.key(s.rhs_word(m)) < self.order.key(s.lhs(m)):
                    raise OrientationError(
                        f"schema instance m={m} of {s.format(self.alphabet)} is not decreasing")
        trie: dict = {}
        for w, i in index.items():
            _trie_insert(trie, w, i)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_trie", trie)
        object.__setattr__(self, "_cache", {})
        object.__setattr__(self, "_monomial_valued", all(len(r.rhs) <= 1 for r in self.rules))

    def _check_rule(self, r: Rule, index: dict) -> None:
        if not r.lhs:
            raise OrientationError("rule with empty left-hand side")
        self.alphabet.check(r.lhs)
        if self.rules:
            r.rhs._same(self.rules[0].rhs)
        lk = self.order.key(r.lhs)
        for w in r.rhs.terms:
            if not self.order.key(w) < lk:
                raise OrientationError(
                    f"rule {r.format()}: {self.alphabet.show(w)} is not below "
                    f"{self.alphabet.show(r.lhs)} under {self.order.spec()}")
        if r.lhs in index:
            raise DomainError(f"two rules share the left-hand side {self.alphabet.show(r.lhs)}")

    def extended(self, rules: Sequence[Rule]) -> RewriteSystem:
        """This system plus ``rules``, checking only the new rules."""
        index = dict(self._index)
        trie = _trie_copy(self._trie)
        n = len(self.rules)
        for k, r in enumerate(rules):
            self._check_rule(r, index)
            index[r.lhs] = n + k
            _trie_insert(trie, r.lhs, n + k)
        out = object.__new__(RewriteSystem)
        for name, value in (("alphabet", self.alphabet), ("order", self.order),
                            ("rules", self.rules + tuple(rules)), ("schemas", self.schemas),
                            ("check_depth", self.check_depth), ("_index", index), ("_trie", trie),
                            ("_cache", {}),
                            ("_monomial_valued", self._monomial_valued and all(len(r.rhs) <= 1 for r in rules))):
            object.__setattr__(out, name, value)
        return out

    @property
    def field(self):
        return self.rules[0].rhs.field if self.rules else _default_field()

    def is_binomial(self) -> bool:
        """Every rule (and every schema, by construction) is ``word -> word``."""
        return all(r.is_binomial() for r in self.rules)

    def is_monomial_valued(self) -> bool:
        """Every rhs has at most one term, so normal forms of words are c*word or 0."""
        return self._monomial_valued

    def with_rules(self, rules: Sequence[Rule], schemas: Sequence[RuleSchema] | None = None) -> RewriteSystem:
        return RewriteSystem(self.alphabet, self.order, tuple(rules),
                             self.schemas if schemas is None else tuple(schemas), self.check_depth)

    def rule_for(self, ref: RuleRef) -> Rule:
        if not ref.schema:
            return self.rules[ref.index]
        return self.schemas[ref.index].instance(ref.m, self.alphabet, self.field, ref.index)

    def polynomials(self) -> list[Polynomial]:
        return [r.polynomial() for r in self.rules]

    # -- matching -----------------------------------------------------------
    def _schema_matches(self, u: Word, pos: int, j: int) -> list[int]:
        """Exponents m (descending) for which schema j matches u at pos."""
        s = self.schemas[j]
        p, b, sf = s.prefix, s.block, s.suffix
        n = len(u)
        if u[pos:pos + len(p)] != p:
            return []
        start = pos + len(p)
        lb = len(b)
        reps = 0
        while start + (reps + 1) * lb <= n and u[start + reps * lb:start + (reps + 1) * lb] == b:
            reps += 1
        out = []
        for m in range(reps, s.m_min - 1, -1):
            end = start + m * lb
            if u[end:end + len(sf)] == sf:
                out.append(m)
        return out

    def _finite_at(self, u: Word, pos: int) -> list[tuple[int, int]]:
        """(rule index, length) of every finite rule matching at ``pos``."""
        node, out = self._trie, []
        for q in range(pos, len(u)):
            node = node.get(u[q])
            if node is None:
                break
            i = node.get(_END)
            if i is not None:
                out.append((i, q + 1 - pos))
        return out

    def occurrences_at(self, u: Word, pos: int) -> list[Occurrence]:
        """All occurrences starting at ``pos`` in canonical preference order."""
        out = [Occurrence(RuleRef(i), pos, L) for i, L in sorted(self._finite_at(u, pos))]
        for j, s in enumerate(self.schemas):
            for m in self._schema_matches(u, pos, j):
                out.append(Occurrence(RuleRef(j, True, m), pos, len(s.lhs(m))))
        return out

    def all_occurrences(self, u: Word) -> list[Occurrence]:
        out = []
        for pos in range(len(u)):
            out.extend(self.occurrences_at(u, pos))
        return out

    def find_occurrence(self, u: Word) -> Occurrence | None:
        """Leftmost occurrence; at one position the lowest-numbered finite
        rule wins, then schemas with the largest exponent."""
        trie, n = self._trie, len(u)
        for pos in range(n):
            node, best = trie, None
            for q in range(pos, n):
                node = node.get(u[q])
                if node is None:
                    break
                i = node.get(_END)
                if i is not None and (best is None or i < best[0]):
                    best = (i, q + 1 - pos)
            if best is not None:
                return Occurrence(RuleRef(best[0]), pos, best[1])
            for j, s in enumerate(self.schemas):
                ms = self._schema_matches(u, pos, j)
                if ms:
                    return Occurrence(RuleRef(j, True, ms[0]), pos, len(s.lhs(ms[0])))
        return None

    def rhs_for(self, occ: Occurrence) -> Polynomial:
        if not occ.ref.schema:
            return self.rules[occ.ref.index].rhs
        s = self.schemas[occ.ref.index]
        return Polynomial.monomial(self.alphabet, s.rhs_word(occ.ref.m), 1, self.field)

    def rewrite_at(self, u: Word, occ: Occurrence) -> Polynomial:
        """The polynomial replacing the word ``u`` after one step at ``occ``."""
        return self.rhs_for(occ).sandwich(u[:occ.position], u[occ.position + occ.length:])

    def schema_instances(self, bound: int) -> list[tuple[RuleRef, Rule]]:
        out = []
        for j, s in enumerate(self.schemas):
            for m in range(s.m_min, bound + 1):
                out.append((RuleRef(j, True, m), s.instance(m, self.alphabet, self.field, j)))
        return out


_END = -1  # trie key holding the rule index of a complete left-hand side


def _trie_insert(trie: dict, w: Word, i: int) -> None:
    node = trie
    for x in w:
        node = node.setdefault(x, {})
    node[_END] = i


def _trie_copy(node: dict) -> dict:
    return {k: (v if k == _END else _trie_copy(v)) for k, v in node.items()}


def _default_field():
    from .core import QQ
    return QQ


def find_occurrence(u: Word, sys: RewriteSystem) -> Occurrence | None:
    sys.alphabet.check(u)
    return sys.find_occurrence(u)


def is_irreducible(u: Word, sys: RewriteSystem) -> bool:
    return sys.find_occurrence(u) is None


def _nf_word_monomial(u: Word, sys: RewriteSystem, budget: int):
    """Normal form of a word when every rhs has at most one term.

    Returns ``(coef, word)``, or ``(0, None)`` when the word reduces to 0.
    """
    cache = sys._cache
    hit = cache.get(u)
    if hit is not None:
        return hit
    start = u
    coef = sys.field(1)
    steps = 0
    while True:
        occ = sys.find_occurrence(u)
        if occ is None:
            break
        steps += 1
        if steps > budget:
            raise NonTerminationError(f"more than {budget} rewriting steps on one word")
        rhs = sys.rhs_for(occ)
        if not rhs.terms:
            coef, u = sys.field(0), None
            break
        (w, c), = rhs.terms.items()
        coef = coef * c
        u = u[:occ.position] + w + u[occ.position + occ.length:]
    if len(cache) > 500_000:
        cache.clear()
    cache[start] = (coef, u)
    return coef, u


def normal_form(p: Polynomial, sys: RewriteSystem, max_steps: int = DEFAULT_STEP_BUDGET) -> Polynomial:
    """Reduce ``p`` until no term contains a left-hand side."""
    if p.alphabet != sys.alphabet:
        raise DomainError("polynomial and rewrite system use different alphabets")
    if not p.terms:
        return p
    if sys.is_monomial_valued():
        out: dict = {}
        for u, c in p.terms.items():
            k, w = _nf_word_monomial(u, sys, max_steps)
            if w is None:
                continue
            s = out.get(w)
            s = c * k if s is None else s + c * k
            if s:
                out[w] = s
            else:
                del out[w]
        return Polynomial(p.alphabet, out, p.field, _trusted=True)

    key = sys.order.key
    work = dict(p.terms)
    heap = [(_neg(key(w)), w) for w in work]
    heapq.heapify(heap)
    result: dict = {}
    steps = 0
    while heap:
        _, u = heapq.heappop(heap)
        c = work.pop(u, None)
        if c is None or not c:
            continue
        occ = sys.find_occurrence(u)
        if occ is None:
            result[u] = c
            continue
        steps += 1
        if steps > max_steps:
            raise NonTerminationError(f"normal form exceeded {max_steps} steps")
        for w, d in sys.rewrite_at(u, occ).terms.items():
            s = work.get(w)
            if s is None:
                work[w] = c * d
                heapq.heappush(heap, (_neg(key(w)), w))
            else:
                s = s + c * d
                work[w] = s
    return Polynomial(p.alphabet, result, p.field, _trusted=True)


class _neg:
    """Inverts the ordering of a sort key so heapq pops the maximum first."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return self.k > other.k

    def __eq__(self, other):
        return self.k == other.k


def normal_word(u: Word, sys: RewriteSystem) -> Word:
    """Normal form of a word under a binomial system."""
    f = normal_form(Polynomial.monomial(sys.alphabet, sys.alphabet.check(u), 1, sys.field), sys)
    if len(f) != 1:
        raise DomainError("normal form of a word is not a single word; system is not binomial")
    (w, c), = f.terms.items()
    return w


def reduction_steps(p: Polynomial, sys: RewriteSystem, rng: random.Random | None = None,
                    max_steps: int = DEFAULT_STEP_BUDGET) -> Iterator[Polynomial]:
    """Yield ``p`` and every intermediate polynomial of a reduction.

    Without ``rng`` the canonical strategy is used (max reducible term,
    leftmost occurrence).  With ``rng`` both the term and the occurrence are
    drawn at random, which is how strategy independence is exercised.
    """
    yield p
    key = sys.order.key
    for _ in range(max_steps):
        reducible = [(u, c) for u, c in p.terms.items() if sys.find_occurrence(u) is not None]
        if not reducible:
            return
        if rng is None:
            u, c = max(reducible, key=lambda t: key(t[0]))
            occ = sys.find_occurrence(u)
        else:
            u, c = rng.choice(sorted(reducible))
            occ = rng.choice(sys.all_occurrences(u))
        p = p - Polynomial.monomial(p.alphabet, u, c, p.field) + sys.rewrite_at(u, occ) * c
        yield p
    raise NonTerminationError(f"reduction exceeded {max_steps} steps")
