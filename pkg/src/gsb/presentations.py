"""Presentation families and the word-problem solver.

Manturov groups G(k, n) are generated by involutions ``a_m`` indexed by the
k-subsets m of {1..n}; the generators are named ``a`` + sorted indices
(``a12``, ``a134``) with single-letter aliases ``a, b, c, ...`` assigned in
lexicographic order of the index sets.  All generators being involutions,
the group presentation doubles as a semigroup presentation.
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .core import QQ, Alphabet, Field, Polynomial, Word
from .errors import DomainError, UnsupportedKindError
from .orders import DegLex, MonomialOrder, WeightedDegLex
from .rewrite import RewriteSystem, normal_form

SEMIGROUP = "semigroup"
ALGEBRA = "algebra"


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relations: tuple[tuple[Polynomial, Polynomial], ...]
    order: MonomialOrder
    kind: str = SEMIGROUP
    name: str = ""

    def __post_init__(self):
        rels = tuple((l, r) for l, r in self.relations)
        object.__setattr__(self, "relations", rels)
        self.order.check_alphabet(self.alphabet)
        for l, r in rels:
            if l == r:
                raise DomainError(f"trivial relation {l} = {r}")
            if self.kind == SEMIGROUP and not (_is_word(l) and _is_word(r)):
                raise DomainError("semigroup presentations relate words only")

    def with_order(self, order: MonomialOrder) -> Presentation:
        return Presentation(self.alphabet, self.relations, order, self.kind, self.name)

    @property
    def field(self) -> Field:
        return self.relations[0][0].field if self.relations else QQ

    def word(self, text) -> Word:
        return self.alphabet.word(text)

    def relation_words(self) -> list[tuple[Word, Word]]:
        """Relations of a semigroup presentation as word pairs."""
        if self.kind != SEMIGROUP:
            raise UnsupportedKindError("only semigroup presentations have word relations")
        return [(_only_word(l), _only_word(r)) for l, r in self.relations]


def _is_word(p: Polynomial) -> bool:
    return len(p) == 1 and next(iter(p.terms.values())) == 1


def _only_word(p: Polynomial) -> Word:
    (w, _), = p.terms.items()
    return w


def semigroup(alphabet: Alphabet, pairs: Sequence[tuple[str | Word, str | Word]],
              order: MonomialOrder | None = None, name: str = "") -> Presentation:
    """Build a semigroup presentation from ``("bca", "acb")``-style pairs."""
    rels = []
    for l, r in pairs:
        lw = alphabet.word(l) if isinstance(l, str) else tuple(l)
        rw = alphabet.word(r) if isinstance(r, str) else tuple(r)
        rels.append((Polynomial.monomial(alphabet, lw), Polynomial.monomial(alphabet, rw)))
    order = order or DegLex(alphabet, tuple(range(len(alphabet))))
    return Presentation(alphabet, tuple(rels), order, SEMIGROUP, name)


# -- Manturov groups ---------------------------------------------------------


@dataclass(frozen=True)
class ManturovSpec:
    n: int
    k: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and isinstance(self.k, int)) or self.k < 1 or self.n <= self.k:
            raise DomainError(f"Manturov group needs n > k >= 1, got n={self.n}, k={self.k}")

    @property
    def generator_count(self) -> int:
        return comb(self.n, self.k)

    @property
    def tetrahedron_count(self) -> int:
        return comb(self.n, self.k + 1) * _factorial(self.k + 1) // 2


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _aliases(count: int) -> tuple[str, ...] | None:
    pool = string.ascii_lowercase + string.ascii_uppercase
    return tuple(pool[:count]) if count <= len(pool) else None


def generator_name(subset: Sequence[int], n: int) -> str:
    if n <= 9:
        return "a" + "".join(str(i) for i in subset)
    return "a" + "_".join(str(i) for i in subset)


@dataclass
class ManturovRelations:
    involutions: list = field(default_factory=list)
    far_commutativity: list = field(default_factory=list)
    tetrahedron: list = field(default_factory=list)


def manturov_relations(spec: ManturovSpec) -> tuple[Alphabet, ManturovRelations]:
    n, k = spec.n, spec.k
    subsets = list(itertools.combinations(range(1, n + 1), k))
    A = Alphabet(tuple(generator_name(s, n) for s in subsets), aliases=_aliases(len(subsets)))
    idx = {frozenset(s): i for i, s in enumerate(subsets)}
    rels = ManturovRelations()
    for i in range(len(subsets)):
        rels.involutions.append(((i, i), ()))
    for i, j in itertools.combinations(range(len(subsets)), 2):
        if len(set(subsets[i]) & set(subsets[j])) < k - 1:
            # oriented so that the deg-lex larger side comes first
            rels.far_commutativity.append(((j, i), (i, j)))
    seen = set()
    for U in itertools.combinations(range(1, n + 1), k + 1):
        for perm in itertools.permutations(U):
            if perm > perm[::-1]:
                continue
            w = tuple(idx[frozenset(U) - {u}] for u in perm)
            rel = (w, w[::-1])
            if rel in seen or rel[::-1] in seen:
                continue
            seen.add(rel)
            rels.tetrahedron.append(rel)
    return A, rels


def manturov(n: int | ManturovSpec, k: int | None = None, order: MonomialOrder | None = None) -> Presentation:
    """Semigroup presentation of the Manturov (k, n)-group, deg-lex by default."""
    spec = n if isinstance(n, ManturovSpec) else ManturovSpec(n, k)
    A, rels = manturov_relations(spec)
    pairs = []
    for group in (rels.involutions, rels.far_commutativity, rels.tetrahedron):
        for l, r in group:
            if (l, r) not in pairs:
                pairs.append((l, r))
    order = order or DegLex(A, tuple(range(len(A))))
    return semigroup(A, pairs, order, name=f"manturov {spec.n} {spec.k}")


# -- Ore extensions ------------------------------------------------------------


@dataclass(frozen=True)
class OreSpec:
    """Images sigma(y) and delta(y), as polynomials in the single letter y."""

    sigma_of_y: Polynomial
    delta_of_y: Polynomial


def _y_degree(p: Polynomial) -> int:
    return max((len(w) for w in p.terms), default=-1)


def ore_extension(spec: OreSpec, order: MonomialOrder | None = None) -> Presentation:
    """``F<x, y | x y = sigma(y) x + delta(y)>``.

    Default order: weighted deg-lex with weight(x) = max(deg delta(y), 1),
    weight(y) = 1 and y < x, under which the relation is oriented by its
    ``sigma(y) x`` or ``x y`` term as appropriate.
    """
    sig, dlt = spec.sigma_of_y, spec.delta_of_y
    src = sig.alphabet
    for p in (sig, dlt):
        names = {src.letters[i] for i in p.letters_used()}
        if names - {"y"}:
            raise DomainError(f"Ore data may only mention y, found {sorted(names - {'y'})}")
    if not sig and not dlt:
        raise DomainError("sigma(y) and delta(y) are both zero")
    fld = sig.field
    A = Alphabet(("x", "y"))
    x, y = 0, 1

    def lift(p: Polynomial) -> Polynomial:
        return Polynomial(A, {(y,) * len(w): c for w, c in p.terms.items()}, fld)

    lhs = Polynomial.monomial(A, (x, y), 1, fld)
    rhs = lift(sig) * Polynomial.monomial(A, (x,), 1, fld) + lift(dlt)
    if order is None:
        wx = max(_y_degree(dlt), 1)
        order = WeightedDegLex(A, (y, x), weights=(wx, 1))
    name = f"ore sigma={sig.format()} delta={dlt.format()}"
    return Presentation(A, ((lhs, rhs),), order, ALGEBRA, name)


def y_polynomial(text: str, field: Field = QQ) -> Polynomial:
    """Parse a polynomial in y such as ``y^2 + 3*y - 1``."""
    from .textio import parse_polynomial
    return parse_polynomial(text, Alphabet(("y",)), field)


# -- word problem --------------------------------------------------------------


@dataclass(frozen=True)
class WordProblemVerdict:
    equal: bool
    nf_u: Word
    nf_v: Word
    certified: int | None = None

    def to_json(self, alphabet: Alphabet) -> dict:
        return {"verdict": "equal" if self.equal else "not_equal", "equal": self.equal,
                "nf_u": alphabet.show(self.nf_u), "nf_v": alphabet.show(self.nf_v),
                "certified_schema_bound": self.certified,
                "canonical": self.certified is not None}


def word_problem(sys: RewriteSystem, u: Word, v: Word, certified: int | None = None) -> WordProblemVerdict:
    """Decide ``u = v`` by comparing normal forms.

    Sound and complete when ``sys`` is a Groebner-Shirshov basis; pass the
    verification bound as ``certified`` so the verdict records it.
    """
    if not sys.is_binomial():
        raise UnsupportedKindError("the word problem solver needs a binomial (semigroup) system")
    A = sys.alphabet
    nu = _nf(A.check(tuple(u)), sys)
    nv = _nf(A.check(tuple(v)), sys)
    return WordProblemVerdict(nu == nv, nu, nv, certified)


def _nf(u: Word, sys: RewriteSystem) -> Word:
    f = normal_form(Polynomial.monomial(sys.alphabet, u, 1, sys.field), sys)
    (w, _), = f.terms.items()
    return w
