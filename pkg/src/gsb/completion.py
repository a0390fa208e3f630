"""Compositions, Groebner-Shirshov basis verification and bounded completion.

For monic f, g with leading words F, G:

* intersection: ``w = F b = a G`` with a proper overlap, composition ``f b - a g``;
* inclusion: ``w = F = a G b`` with G a proper factor of F, composition ``f - a g b``.

A set is a Groebner-Shirshov basis when every composition reduces to zero.
Schemas are verified instance-wise for exponents up to an explicit bound, so
every certificate produced here is a bounded one and says so.
"""

from __future__ import annotations

import heapq
import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import Polynomial, Word, leading_monomial, make_monic
from .errors import (InconsistentPresentationError, NonTerminationError, OrientationError)
from .orders import MonomialOrder
from .rewrite import (DEFAULT_STEP_BUDGET, Rule, RuleRef, RuleSchema, RewriteSystem,
                      normal_form)

log = logging.getLogger(__name__)

INTERSECTION = "intersection"
INCLUSION = "inclusion"


@dataclass
class CompositionRecord:
    kind: str
    w: Word
    left: object
    right: object
    left_lhs: Word
    right_lhs: Word
    a: Word
    b: Word
    raw: Polynomial
    remainder: Polynomial | None = None
    inconclusive: bool = False

    def check_factorization(self) -> bool:
        """Re-check the ambiguity equations by plain word comparison."""
        F, G, a, b, w = self.left_lhs, self.right_lhs, self.a, self.b, self.w
        if self.kind == INTERSECTION:
            return F + b == w == a + G and len(F) + len(G) > len(w) and bool(a) and bool(b)
        return w == F == a + G + b and len(G) < len(F)

    def to_json(self, alphabet, order=None) -> dict:
        lbl = lambda r: r.label() if isinstance(r, RuleRef) else str(r)  # noqa: E731
        out = {"kind": self.kind, "w": alphabet.show(self.w),
               "left": lbl(self.left), "right": lbl(self.right)}
        if self.remainder is not None:
            out["remainder"] = self.remainder.format(order)
        if self.inconclusive:
            out["inconclusive"] = True
        return out


def compositions(f: Rule, g: Rule, left=None, right=None) -> list[CompositionRecord]:
    """All intersection and inclusion compositions of ``f`` with ``g``.

    Remainders are not computed here.  When ``f`` and ``g`` are the same rule
    only self-overlaps are produced.
    """
    F, G = f.lhs, g.lhs
    polys = []

    def both():
        if not polys:
            polys.extend((f.polynomial(), g.polynomial()))
        return polys

    out = []
    for k in range(1, min(len(F), len(G))):
        if F[-k:] == G[:k]:
            a, b = F[:-k], G[k:]
            fp, gp = both()
            raw = fp.sandwich((), b) - gp.sandwich(a, ())
            out.append(CompositionRecord(INTERSECTION, F + b, left, right, F, G, a, b, raw))
    if len(G) < len(F):
        for i in range(len(F) - len(G) + 1):
            if F[i:i + len(G)] == G:
                a, b = F[:i], F[i + len(G):]
                fp, gp = both()
                raw = fp - gp.sandwich(a, b)
                out.append(CompositionRecord(INCLUSION, F, left, right, F, G, a, b, raw))
    return out


@dataclass
class VerificationReport:
    schema_bound: int
    records: list[CompositionRecord]
    nontrivial: list[CompositionRecord]
    inconclusive: list[CompositionRecord]

    @property
    def certified(self) -> bool:
        return not self.nontrivial and not self.inconclusive

    def ambiguities(self) -> set[Word]:
        return {r.w for r in self.records}

    def to_json(self, sys: RewriteSystem) -> dict:
        A = sys.alphabet
        return {
            "certified": self.certified,
            "schema_bound": self.schema_bound,
            "compositions_checked": len(self.records),
            "nontrivial_compositions": [r.to_json(A, sys.order) for r in self.nontrivial],
            "inconclusive": [r.to_json(A, sys.order) for r in self.inconclusive],
        }


def _bounded_rules(sys: RewriteSystem, bound: int) -> list[tuple[RuleRef, Rule]]:
    pairs = [(RuleRef(i), r) for i, r in enumerate(sys.rules)]
    return pairs + sys.schema_instances(bound)


def verify_gsb(sys: RewriteSystem, schema_bound: int = 10,
               step_budget: int = DEFAULT_STEP_BUDGET) -> VerificationReport:
    """Reduce every composition among rules and schema instances with m <= bound."""
    for s in sys.schemas:
        if schema_bound < s.m_min:
            raise DomainError(f"schema bound {schema_bound} below m_min={s.m_min}")
    rules = _bounded_rules(sys, schema_bound)
    records, bad, unsure = [], [], []
    for (rf, f), (rg, g) in itertools.product(rules, repeat=2):
        for rec in compositions(f, g, rf, rg):
            try:
                rec.remainder = normal_form(rec.raw, sys, step_budget)
            except NonTerminationError:
                rec.inconclusive = True
                unsure.append(rec)
            else:
                if rec.remainder:
                    bad.append(rec)
            records.append(rec)
    records.sort(key=lambda r: (sys.order.key(r.w), str(r.left), str(r.right)))
    return VerificationReport(schema_bound, records, bad, unsure)


# -- inter-reduction ---------------------------------------------------------


def inter_reduce(rules: Sequence[Rule], order: MonomialOrder,
                 step_budget: int = DEFAULT_STEP_BUDGET) -> list[Rule]:
    """Reduced form of a finite monic rule set.

    A rule whose lhs contains another lhs is removed and its polynomial,
    reduced by the survivors, is re-inserted if nonzero; then every rhs is
    brought to normal form.  Output is sorted by lhs.
    """
    if not rules:
        return []
    A = rules[0].rhs.alphabet
    pending = [(order.key(r.lhs), n, r) for n, r in enumerate(rules)]
    heapq.heapify(pending)
    counter = itertools.count(len(rules))
    kept: list[Rule] = []
    sys = RewriteSystem(A, order, ())
    while pending:
        _, _, r = heapq.heappop(pending)
        p = normal_form(r.polynomial(), sys, step_budget) if kept else r.polynomial()
        if not p:
            continue
        lhs, _ = leading_monomial(p, order)
        if lhs == ():
            raise InconsistentPresentationError("inter-reduction derived a nonzero constant")
        nr = r if lhs == r.lhs and p == r.polynomial() else Rule.from_polynomial(p, order, r.origin)
        survivors = []
        for k in kept:
            if _contains(k.lhs, nr.lhs):
                heapq.heappush(pending, (order.key(k.lhs), next(counter), k))
            else:
                survivors.append(k)
        if len(survivors) == len(kept):
            kept.append(nr)
            sys = sys.extended([nr])
        else:
            kept = survivors + [nr]
            sys = RewriteSystem(A, order, tuple(kept))
    out = []
    for r in kept:
        # every rhs word is below r.lhs, so reducing by the whole set is sound
        rhs = normal_form(r.rhs, sys, step_budget)
        out.append(r if rhs == r.rhs else Rule(r.lhs, rhs, r.origin))
    out.sort(key=lambda r: order.key(r.lhs))
    return out


def _contains(word: Word, factor: Word) -> bool:
    n = len(factor)
    return any(word[i:i + n] == factor for i in range(len(word) - n + 1))


# -- completion ----------------------------------------------------------------


@dataclass
class CompletionReport:
    status: str  # "Stabilized" | "CapReached"
    rounds: int
    max_deg: int
    added: list[Rule] = field(default_factory=list)
    pending: list[Polynomial] = field(default_factory=list)
    history: list[int] = field(default_factory=list)
    cap: str | None = None

    @property
    def pending_count(self) -> int:
        return len(self.pending)

    def to_json(self, sys: RewriteSystem) -> dict:
        A, order = sys.alphabet, sys.order
        return {
            "status": self.status,
            "cap": self.cap,
            "rounds": self.rounds,
            "max_deg": self.max_deg,
            "rule_count_history": self.history,
            "pending_compositions": self.pending_count,
            "added_rules": [{"rule": r.format(order), "origin": _origin_json(r.origin, A)}
                            for r in self.added],
        }


def _origin_json(origin: tuple, alphabet) -> str:
    if origin[0] == "composition":
        _, kind, F, G, w = origin
        return f"{kind}({alphabet.show(F)}, {alphabet.show(G)}; w={alphabet.show(w)})"
    return str(origin[0]) if len(origin) == 1 else repr(origin)


def _identity(r: Rule):
    return (r.lhs, frozenset(r.rhs.terms.items()))


def seed_rules(relations: Iterable[tuple[Polynomial, Polynomial]], order: MonomialOrder) -> list[Rule]:
    out = []
    for lhs, rhs in relations:
        f = lhs - rhs
        if not f:
            continue
        w, _ = leading_monomial(f, order)
        if w == ():
            raise InconsistentPresentationError("a relation equates distinct constants")
        out.append(Rule.from_polynomial(f, order, ("input",)))
    return out


def complete(pres, max_deg: int = 12, max_rules: int = 500, max_rounds: int = 50,
             step_budget: int = DEFAULT_STEP_BUDGET) -> tuple[RewriteSystem, CompletionReport]:
    """Bounded Shirshov completion of ``pres`` under its declared order.

    Compositions are processed in increasing order of their ambiguity.  A
    nonzero remainder whose leading word is longer than ``max_deg`` is
    withheld (reported as pending) instead of added, which keeps the run
    finite on presentations with infinite bases.
    """
    order = pres.order
    A = pres.alphabet
    rules = inter_reduce(seed_rules(pres.relations, order), order, step_budget)
    history = [len(rules)]
    added: dict[Word, Rule] = {}
    withheld: dict[Word, Polynomial] = {}
    done: set = set()
    status, cap = None, None
    rounds = 0
    for rounds in range(1, max_rounds + 1):
        sys = RewriteSystem(A, order, tuple(rules))
        ids = [_identity(r) for r in rules]
        comps = []
        for (i, f), (j, g) in itertools.product(enumerate(rules), repeat=2):
            pair = (ids[i], ids[j])
            if pair in done:
                continue
            done.add(pair)
            comps.extend(compositions(f, g, f.lhs, g.lhs))
        comps.sort(key=lambda c: (order.key(c.w), order.key(c.left_lhs), order.key(c.right_lhs), c.kind))
        new: list[Rule] = []
        for c in comps:
            rem = normal_form(c.raw, sys, step_budget)
            if not rem:
                continue
            lead, _ = leading_monomial(rem, order)
            if lead == ():
                raise InconsistentPresentationError(
                    f"composition at w={A.show(c.w)} reduces to a nonzero constant")
            if len(lead) > max_deg:
                withheld.setdefault(lead, make_monic(rem, order))
                continue
            rule = Rule.from_polynomial(rem, order, ("composition", c.kind, c.left_lhs, c.right_lhs, c.w))
            new.append(rule)
            sys = sys.extended([rule])
        log.debug("round %d: %d compositions, %d new rules", rounds, len(comps), len(new))
        if not new:
            break
        for r in new:
            added[r.lhs] = r
        rules = inter_reduce(rules + new, order, step_budget)
        history.append(len(rules))
        if len(rules) > max_rules:
            status, cap = "CapReached", "max_rules"
            break
    else:
        status, cap = "CapReached", "max_rounds"

    final = RewriteSystem(A, order, tuple(rules))
    pending = []
    for lead in sorted(withheld, key=order.key):
        rem = normal_form(withheld[lead], final, step_budget)
        if rem:
            pending.append(make_monic(rem, order))
    if status is None:
        status, cap = ("CapReached", "max_deg") if pending else ("Stabilized", None)
    live = {r.lhs for r in rules}
    report = CompletionReport(status, rounds, max_deg,
                              added=[r for l, r in sorted(added.items(), key=lambda t: order.key(t[0]))
                                     if l in live],
                              pending=pending, history=history, cap=cap)
    return final, report


# -- schema inference --------------------------------------------------------


def _decompositions(w: Word, exact_min: int = 1):
    """Every split ``w = P B^m S`` with non-empty B and m >= 1."""
    n = len(w)
    for p in range(n):
        for k in range(1, n - p + 1):
            b = w[p:p + k]
            m = 1
            while True:
                end = p + m * k
                yield w[:p], b, w[end:], m
                if w[end:end + k] != b:
                    break
                m += 1


def infer_schemas(rules: Sequence[Rule], min_run: int = 3) -> tuple[list[RuleSchema], list[Rule]]:
    """Fold arithmetic families of binomial rules into schemas.

    A family is ``P B^m S -> P' B'^m S'`` observed for at least ``min_run``
    consecutive exponents.  The largest families are taken first.  Folding
    is a proposal only; the folded system must be re-verified.
    """
    binom = [r for r in rules if r.is_binomial()]
    families: dict[tuple, dict[int, Word]] = defaultdict(dict)
    for r in binom:
        (rw, _), = r.rhs.terms.items()
        rhs_splits: dict[int, set] = defaultdict(set)
        for P2, B2, S2, m in _decompositions(rw):
            rhs_splits[m].add((P2, B2, S2))
        for P, B, S, m in _decompositions(r.lhs):
            for P2, B2, S2 in rhs_splits.get(m, ()):
                families[(P, B, S, P2, B2, S2)][m] = r.lhs
            families[(P, B, S, rw, (), ())][m] = r.lhs
    candidates = []
    for fam, found in families.items():
        ms = sorted(found)
        run = [ms[0]]
        for m in ms[1:]:
            if m == run[-1] + 1:
                run.append(m)
            else:
                if len(run) >= min_run:
                    candidates.append((fam, run))
                run = [m]
        if len(run) >= min_run:
            candidates.append((fam, run))

    def rank(c):
        (P, B, S, P2, B2, S2), run = c
        return (-len(run), len(P) + len(B) + len(S) + len(P2) + len(B2) + len(S2), run[0],
                (P, B, S, P2, B2, S2))

    candidates.sort(key=rank)
    used: set[Word] = set()
    schemas = []
    for (P, B, S, P2, B2, S2), run in candidates:
        lhs_words = [families[(P, B, S, P2, B2, S2)][m] for m in run]
        if any(w in used for w in lhs_words):
            continue
        used.update(lhs_words)
        schemas.append(RuleSchema(P, B, S, P2, B2, S2, m_min=run[0]))
    rest = [r for r in rules if r.lhs not in used]
    return schemas, rest


def fold(sys: RewriteSystem) -> RewriteSystem:
    """Replace schema-shaped rule families in ``sys`` by schemas.

    Rules made redundant by a schema (instances below the family's observed
    start are kept as ordinary rules) are dropped.
    """
    schemas, rest = infer_schemas(sys.rules)
    schemas = list(sys.schemas) + schemas
    if not schemas:
        return sys
    probe = RewriteSystem(sys.alphabet, sys.order, (), tuple(schemas))
    keep = [r for r in rest if probe.find_occurrence(r.lhs) is None]
    return RewriteSystem(sys.alphabet, sys.order, tuple(keep), tuple(schemas))
