"""Growth of associated monomial algebras.

The normal words of a rewrite system are the words avoiding every left-hand
side, including the infinite families ``P B^m S`` of its schemas.  That
language is regular; it is realised by a trimmed DFA built by an on-the-fly
subset construction over pattern-position NFAs (Aho-Corasick style: the
pattern starts are always live).  Counting and the polynomial/exponential
dichotomy are then read off the DFA.
"""

from __future__ import annotations

import math
import os
import warnings
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Sequence

import networkx as nx

from .core import Alphabet, Polynomial, Word
from .errors import DomainError, ResourceError
from .orders import LengthBound
from .rewrite import RewriteSystem, normal_form

DEFAULT_MAX_STATES = 10**5


def max_states_default() -> int:
    env = os.environ.get("GSB_MAX_STATES")
    return int(env) if env else DEFAULT_MAX_STATES


@dataclass(frozen=True)
class PumpedPattern:
    prefix: Word
    block: Word
    suffix: Word
    m_min: int = 1

    def word(self, m: int) -> Word:
        return self.prefix + self.block * m + self.suffix


@dataclass(frozen=True)
class ForbiddenSet:
    finite_words: frozenset = frozenset()
    pumped_patterns: frozenset = frozenset()

    @classmethod
    def from_system(cls, sys: RewriteSystem) -> ForbiddenSet:
        return cls(frozenset(r.lhs for r in sys.rules),
                   frozenset(PumpedPattern(s.prefix, s.block, s.suffix, s.m_min) for s in sys.schemas))

    @classmethod
    def of(cls, alphabet: Alphabet, words: Iterable[str | Word] = (), pumped: Iterable = ()) -> ForbiddenSet:
        ws = frozenset(alphabet.word(w) if isinstance(w, str) else tuple(w) for w in words)
        return cls(ws, frozenset(pumped))

    def contains_factor(self, u: Word) -> bool:
        """Direct check, independent of any automaton."""
        n = len(u)
        for i in range(n):
            for f in self.finite_words:
                if u[i:i + len(f)] == f:
                    return True
            for p in self.pumped_patterns:
                if u[i:i + len(p.prefix)] != p.prefix:
                    continue
                j, m = i + len(p.prefix), 0
                while True:
                    if m >= p.m_min and u[j:j + len(p.suffix)] == p.suffix:
                        return True
                    if u[j:j + len(p.block)] != p.block:
                        break
                    j += len(p.block)
                    m += 1
        return False


class _PatternNFA:
    """Union of linear NFAs, one per forbidden pattern, with no epsilons."""

    def __init__(self, fs: ForbiddenSet):
        self.delta: list[dict[int, set[int]]] = []
        self.final: set[int] = set()
        self.starts: list[int] = []
        self.empty_forbidden = False
        for w in sorted(fs.finite_words):
            if not w:
                self.empty_forbidden = True
                continue
            self._chain(w)
        for p in sorted(fs.pumped_patterns, key=lambda p: (p.prefix, p.block, p.suffix, p.m_min)):
            self._pumped(p)

    def _new(self) -> int:
        self.delta.append({})
        return len(self.delta) - 1

    def _edge(self, a: int, x: int, b: int) -> None:
        self.delta[a].setdefault(x, set()).add(b)

    def _path(self, start: int, w: Word) -> int:
        cur = start
        for x in w:
            nxt = self._new()
            self._edge(cur, x, nxt)
            cur = nxt
        return cur

    def _chain(self, w: Word) -> None:
        s = self._new()
        self.starts.append(s)
        self.final.add(self._path(s, w))

    def _pumped(self, p: PumpedPattern) -> None:
        s = self._new()
        self.starts.append(s)
        loop = self._path(s, p.prefix + p.block * p.m_min)
        # loop on the block: loop -B-> loop
        cur = loop
        for x in p.block[:-1]:
            nxt = self._new()
            self._edge(cur, x, nxt)
            cur = nxt
        self._edge(cur, p.block[-1], loop)
        if p.suffix:
            self.final.add(self._path(loop, p.suffix))
        else:
            self.final.add(loop)


@dataclass(frozen=True)
class IrrAutomaton:
    """Trimmed DFA accepting exactly the normal words; every state accepts.

    ``trans[q][x]`` is the successor state or ``None`` (the removed dead state).
    """

    alphabet: Alphabet
    trans: tuple[tuple[int | None, ...], ...]
    start: int = 0

    @property
    def n_states(self) -> int:
        return len(self.trans)

    def run(self, w: Word, q: int | None = None) -> int | None:
        q = self.start if q is None else q
        for x in w:
            if q is None:
                return None
            q = self.trans[q][x]
        return q

    def accepts(self, w: Word) -> bool:
        return bool(self.trans) and self.run(w) is not None

    def words(self, max_len: int) -> Iterator[Word]:
        """Accepted words of length <= max_len, by depth-first search."""
        if not self.trans:
            return
        stack = [((), self.start)]
        while stack:
            w, q = stack.pop()
            yield w
            if len(w) < max_len:
                for x in range(len(self.alphabet) - 1, -1, -1):
                    t = self.trans[q][x]
                    if t is not None:
                        stack.append((w + (x,), t))

    def graph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(range(self.n_states))
        for q, row in enumerate(self.trans):
            for x, t in enumerate(row):
                if t is not None:
                    g.add_edge(q, t, key=x)
        return g


def build_irr_automaton(fs: ForbiddenSet, alphabet: Alphabet, max_states: int | None = None) -> IrrAutomaton:
    """DFA for the words containing no factor from ``fs``."""
    cap = max_states_default() if max_states is None else max_states
    nfa = _PatternNFA(fs)
    if nfa.empty_forbidden:
        return IrrAutomaton(alphabet, ())
    starts = frozenset(nfa.starts)
    k = len(alphabet)
    ids: dict[frozenset, int] = {frozenset(): 0}
    order = [frozenset()]
    rows: list[list[int | None]] = []
    queue = deque([frozenset()])
    while queue:
        S = queue.popleft()
        row: list[int | None] = []
        live = S | starts
        for x in range(k):
            T = set()
            for q in live:
                T |= nfa.delta[q].get(x, set())
            if T & nfa.final:
                row.append(None)
                continue
            # pattern starts have no incoming edges, so T never contains one
            T = frozenset(T)
            if T not in ids:
                if len(ids) >= cap:
                    raise ResourceError(f"automaton exceeded {cap} states")
                ids[T] = len(order)
                order.append(T)
                queue.append(T)
            row.append(ids[T])
        rows.append(row)
    return IrrAutomaton(alphabet, tuple(tuple(r) for r in rows), 0)


def count_normal_words(aut: IrrAutomaton, n: int) -> tuple[list[int], list[int]]:
    """Per-length counts f(0..n) and cumulative counts, as exact integers."""
    per = []
    if not aut.trans:
        return [0] * (n + 1), [0] * (n + 1)
    vec = [0] * aut.n_states
    vec[aut.start] = 1
    for _ in range(n + 1):
        per.append(sum(vec))
        nxt = [0] * aut.n_states
        for q, c in enumerate(vec):
            if c:
                for t in aut.trans[q]:
                    if t is not None:
                        nxt[t] += c
        vec = nxt
    cum, s = [], 0
    for c in per:
        s += c
        cum.append(s)
    return per, cum


@dataclass(frozen=True)
class Classification:
    """``kind`` is ``finite`` (with ``dim``), ``polynomial`` (with ``gk``) or ``exponential``."""

    kind: str
    gk: int | None = None
    dim: int | None = None

    @property
    def gkdim(self):
        if self.kind == "exponential":
            return math.inf
        return 0 if self.kind == "finite" else self.gk

    def __str__(self):
        if self.kind == "finite":
            return f"FiniteDimensional({self.dim})"
        if self.kind == "polynomial":
            return f"Polynomial({self.gk})"
        return "Exponential"


def FiniteDimensional(dim: int) -> Classification:
    return Classification("finite", gk=0, dim=dim)


def PolynomialGrowth(gk: int) -> Classification:
    return Classification("polynomial", gk=gk)


EXPONENTIAL = Classification("exponential")


def classify_growth(aut: IrrAutomaton) -> Classification:
    """Polynomial degree (of the cumulative census) or exponential growth.

    A cyclic strongly connected component with more internal edges than
    states carries two distinct cycles, hence exponential growth.  Otherwise
    the degree is the largest number of cycles met along one path of the
    condensation.
    """
    if not aut.trans:
        return FiniteDimensional(0)
    g = aut.graph()
    cond = nx.condensation(nx.DiGraph(g))
    members = cond.graph["mapping"]
    inner_edges = [0] * cond.number_of_nodes()
    for q, row in enumerate(aut.trans):
        for t in row:
            if t is not None and members[q] == members[t]:
                inner_edges[members[q]] += 1
    cyclic = [0] * cond.number_of_nodes()
    for c in cond.nodes:
        size = len(cond.nodes[c]["members"])
        e = inner_edges[c]
        if e > size:
            return EXPONENTIAL
        if e > 0:
            cyclic[c] = 1
    best = {}
    for c in reversed(list(nx.topological_sort(cond))):
        best[c] = cyclic[c] + max((best[d] for d in cond.successors(c)), default=0)
    gk = best[members[aut.start]]
    if gk == 0:
        _, cum = count_normal_words(aut, aut.n_states)
        return FiniteDimensional(cum[-1])
    return PolynomialGrowth(gk)


# -- reports ------------------------------------------------------------------

EXACT = "ExactForA"
LOWER = "LowerBoundForA"
SANDWICH = "SandwichForA"


@dataclass
class GrowthReport:
    per_length: list[int]
    counts: list[int]
    classification: Classification
    validity: str
    length_bound: LengthBound
    certified: bool
    schema_bound: int | None = None
    gk_interval: tuple | None = None
    n_states: int = 0
    warnings: list[str] = field(default_factory=list)

    @property
    def gkdim(self):
        return self.classification.gkdim

    def to_json(self) -> dict:
        gk = self.classification.gkdim
        out = {
            "classification": str(self.classification),
            "gkdim": "inf" if gk == math.inf else gk,
            "validity": self.validity,
            "length_bound": self.length_bound.to_json(),
            "certified": self.certified,
            "schema_bound": self.schema_bound,
            "automaton_states": self.n_states,
            "counts": [str(c) for c in self.counts],
            "per_length": [str(c) for c in self.per_length],
        }
        if self.gk_interval is not None:
            out["gkdim_interval"] = [str(x) for x in self.gk_interval]
        if self.warnings:
            out["warnings"] = self.warnings
        return out


def gkdim_report(pres, sys: RewriteSystem, n: int = 50, schema_bound: int = 10,
                 max_states: int | None = None) -> GrowthReport:
    """GK-dimension of the associated monomial algebra and what it says about A.

    Length-bounded orders (deg-lex, weighted deg-lex) make the two equal; for
    tower-type orders only the lower bound survives, except that exponential
    growth of the monomial algebra forces exponential growth of A.
    """
    from .completion import verify_gsb

    warn = []
    report = verify_gsb(sys, schema_bound)
    if not report.certified:
        msg = (f"system is not a certified Groebner-Shirshov basis "
               f"({len(report.nontrivial)} nontrivial compositions); growth may be wrong")
        warnings.warn(msg)
        warn.append(msg)
    aut = build_irr_automaton(ForbiddenSet.from_system(sys), sys.alphabet, max_states)
    cls = classify_growth(aut)
    per, cum = count_normal_words(aut, n)
    lb = sys.order.length_bound()
    interval = None
    if cls.kind == "exponential":
        validity = EXACT
    elif lb.kind == "linear":
        validity = EXACT
    elif lb.kind == "polynomial":
        validity = SANDWICH
        interval = (cls.gkdim, lb.d * cls.gkdim)
    else:
        validity = LOWER
    return GrowthReport(per, cum, cls, validity, lb, report.certified,
                        schema_bound if sys.schemas else None, interval, aut.n_states, warn)


@dataclass
class FiltrationTable:
    d_A: list[int]
    d_tilde: list[int]

    def to_json(self) -> dict:
        return {"d_A": [str(x) for x in self.d_A], "d_tilde": [str(x) for x in self.d_tilde]}


def _words_upto(k: int, n: int) -> Iterator[Word]:
    for L in range(n + 1):
        yield from product(range(k), repeat=L)


def _rank(vectors: Iterable[Polynomial], key) -> int:
    """Rank of a family of polynomials by incremental exact elimination."""
    pivots: dict[Word, dict] = {}
    for p in vectors:
        v = dict(p.terms)
        while v:
            top = max(v, key=key)
            piv = pivots.get(top)
            if piv is None:
                c = v[top]
                pivots[top] = {w: a / c for w, a in v.items()}
                break
            c = v[top]
            for w, a in piv.items():
                s = v.get(w)
                s = -c * a if s is None else s - c * a
                if s:
                    v[w] = s
                else:
                    v.pop(w, None)
    return len(pivots)


def dim_filtration(pres, sys: RewriteSystem, n_max: int) -> FiltrationTable:
    """``d_A(n) = dim (F + F X)^n`` and its monomial-algebra counterpart, n <= n_max."""
    if n_max > 10:
        raise ResourceError("filtration tables are limited to n <= 10")
    if n_max < 0:
        raise DomainError("n_max must be non-negative")
    A = sys.alphabet
    k = len(A)
    one = sys.field(1)
    binomial = sys.is_monomial_valued()
    d_A, d_tilde = [], []
    seen_nf: set = set()
    nfs: list[Polynomial] = []
    irr_count = 0
    for L in range(n_max + 1):
        for u in product(range(k), repeat=L):
            f = normal_form(Polynomial(A, {u: one}, sys.field, _trusted=True), sys)
            if sys.find_occurrence(u) is None:
                irr_count += 1
            if binomial:
                if f.terms:
                    seen_nf.add(next(iter(f.terms)))
            else:
                nfs.append(f)
        d_A.append(len(seen_nf) if binomial else _rank(nfs, sys.order.key))
        d_tilde.append(irr_count)
    return FiltrationTable(d_A, d_tilde)


# -- codes and free submonoids -----------------------------------------------------


@dataclass(frozen=True)
class FreeCheckResult:
    verdict: str  # "Free" | "NotCode" | "LeavesIrr"
    witness: Word | None = None
    factorizations: tuple | None = None

    @property
    def is_free(self) -> bool:
        return self.verdict == "Free"

    def to_json(self, alphabet: Alphabet) -> dict:
        out = {"verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = alphabet.show(self.witness)
        if self.factorizations is not None:
            out["factorizations"] = [[alphabet.show(g) for g in f] for f in self.factorizations]
        return out


def sardinas_patterson(gens: Sequence[Word]) -> tuple | None:
    """None if ``gens`` is uniquely decodable, else two distinct factorizations
    (as lists of code words) of one word."""
    gens = [tuple(g) for g in gens]
    if len(set(gens)) != len(gens):
        g = next(g for g in gens if gens.count(g) > 1)
        return [g], [g]  # same word, two different code symbols
    if any(not g for g in gens):
        e = next(g for g in gens if not g)
        return [e], [e, e]
    # state: dangling suffix d; "ahead" side has spelled d more than "behind"
    queue = deque()
    parent: dict[Word, tuple] = {}
    for c1 in gens:
        for c2 in gens:
            if c1 != c2 and c2[:len(c1)] == c1:
                d = c2[len(c1):]
                if d not in parent:
                    parent[d] = ([c1], [c2])
                    queue.append(d)
    while queue:
        d = queue.popleft()
        behind, ahead = parent[d]
        for c in gens:
            if c == d:
                return behind + [c], ahead
            if d[:len(c)] == c:
                nd, nb, na = d[len(c):], behind + [c], ahead
            elif c[:len(d)] == d:
                nd, nb, na = c[len(d):], ahead, behind + [c]
            else:
                continue
            if nd not in parent:
                parent[nd] = (nb, na)
                queue.append(nd)
    return None


def free_submonoid_check(aut: IrrAutomaton, gens: Sequence[Word]) -> FreeCheckResult:
    """Do ``gens`` generate a free submonoid of normal words?

    Containment: every product of generators must stay in the automaton's
    language, checked by exploring (state, generator) reachability.  Freeness:
    the generators must form a code.
    """
    gens = [tuple(g) for g in gens]
    if not gens or any(not g for g in gens):
        raise DomainError("generators must be non-empty words")
    if len(set(gens)) != len(gens):
        raise DomainError("generators must be pairwise distinct")
    if not aut.trans:
        return FreeCheckResult("LeavesIrr", gens[0], None)
    seen = {aut.start: ()}
    queue = deque([aut.start])
    while queue:
        q = queue.popleft()
        for g in gens:
            t = aut.run(g, q)
            path = seen[q] + (g,)
            if t is None:
                return FreeCheckResult("LeavesIrr", sum(path, ()), (path,))
            if t not in seen:
                seen[t] = path
                queue.append(t)
    clash = sardinas_patterson(gens)
    if clash is not None:
        a, b = clash
        return FreeCheckResult("NotCode", sum(a, ()), (tuple(a), tuple(b)))
    return FreeCheckResult("Free")
