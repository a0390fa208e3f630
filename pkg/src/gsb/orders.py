"""Monomial orders on the free monoid.

Every order exposes ``key(word)``: a sort key whose natural tuple ordering is
the monomial order.  ``compare`` and ``max``/``sorted`` all go through it.

Four families are supported: deg-lex, weighted deg-lex, tower and reverse
tower.  The last two are not length-bounded, which is why each order also
carries :class:`LengthBound` metadata: it decides whether the growth of the
associated monomial algebra is the growth of the algebra itself or only a
lower bound for it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from typing import Sequence

from .core import Alphabet, Word
from .errors import DomainError, ParseError


class Comparison(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class LengthBound:
    """``kind`` is ``"linear"`` (|u| <= c|v| whenever u < v), ``"polynomial"``
    (|u| <= f(|v|) with deg f = d) or ``"none"``."""

    kind: str
    c: Fraction | None = None
    d: int | None = None

    @classmethod
    def linear(cls, c) -> LengthBound:
        return cls("linear", c=Fraction(c), d=1)

    @classmethod
    def polynomial(cls, d: int) -> LengthBound:
        return cls("polynomial", d=d)

    @classmethod
    def none(cls) -> LengthBound:
        return cls("none")

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.c is not None:
            out["c"] = str(self.c)
        if self.d is not None:
            out["d"] = self.d
        return out


@dataclass(frozen=True)
class MonomialOrder:
    """Base class.  ``priority`` lists letter indices from smallest to largest."""

    alphabet: Alphabet
    priority: tuple[int, ...]
    _rank: tuple[int, ...] = field(default=None, compare=False, repr=False, hash=False)
    _cache: dict = field(default=None, compare=False, repr=False, hash=False)

    family = "abstract"

    def __post_init__(self):
        prio = tuple(self.priority)
        object.__setattr__(self, "priority", prio)
        if sorted(prio) != list(range(len(self.alphabet))):
            raise DomainError("letter priority must list every letter exactly once")
        rank = [0] * len(prio)
        for r, i in enumerate(prio):
            rank[i] = r
        object.__setattr__(self, "_rank", tuple(rank))
        object.__setattr__(self, "_cache", {})

    def check_alphabet(self, alphabet: Alphabet) -> None:
        if alphabet is not self.alphabet and alphabet != self.alphabet:
            raise DomainError("order and polynomial live over different alphabets")

    def key(self, w: Word):
        k = self._cache.get(w)
        if k is None:
            if len(self._cache) > 200_000:
                self._cache.clear()
            k = self._cache[w] = self._key(w)
        return k

    def _key(self, w: Word):
        raise NotImplementedError

    def length_bound(self) -> LengthBound:
        raise NotImplementedError

    def max(self, words):
        return max(words, key=self.key)

    def sorted(self, words, reverse: bool = False):
        return sorted(words, key=self.key, reverse=reverse)

    def spec(self) -> str:
        """Text form accepted by :func:`parse_order`."""
        names = self.alphabet.letters
        return f"{self.family} " + " < ".join(names[i] for i in self.priority)

    def __str__(self) -> str:
        return self.spec()


@dataclass(frozen=True)
class DegLex(MonomialOrder):
    family = "deglex"

    def _key(self, w):
        r = self._rank
        return (len(w), tuple(r[i] for i in w))

    def length_bound(self):
        return LengthBound.linear(1)


@dataclass(frozen=True)
class WeightedDegLex(MonomialOrder):
    """Weighted degree first, then lexicographic by ``priority``.

    ``weights[i]`` is the positive integer weight of letter ``i``.
    """

    weights: tuple[int, ...] = ()

    family = "wdeglex"

    def __post_init__(self):
        super().__post_init__()
        w = tuple(self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) != len(self.alphabet) or any(not isinstance(x, int) or x < 1 for x in w):
            raise DomainError("weighted deg-lex needs a positive integer weight per letter")

    def _key(self, w):
        r, wt = self._rank, self.weights
        return (sum(wt[i] for i in w), tuple(r[i] for i in w))

    def length_bound(self):
        return LengthBound.linear(max(self.weights))

    def spec(self):
        names = self.alphabet.letters
        ws = " ".join(f"{names[i]}:{self.weights[i]}" for i in range(len(names)))
        return f"wdeglex {ws} ; " + " < ".join(names[i] for i in self.priority)


@dataclass(frozen=True)
class Tower(MonomialOrder):
    """Compare by maximal letter, its multiplicity, then the separating
    segments left to right, each recursively (the empty segment is least)."""

    family = "tower"
    _reverse_segments = False

    def _key(self, w):
        return self._wt(w)

    def _wt(self, w):
        if not w:
            return (0,)
        r = self._rank
        top = max(w, key=r.__getitem__)
        segments = []
        start = 0
        for pos, x in enumerate(w):
            if x == top:
                segments.append(w[start:pos])
                start = pos + 1
        segments.append(w[start:])
        if self._reverse_segments:
            segments.reverse()
        return (1, r[top], len(segments) - 1) + tuple(self._wt(s) for s in segments)

    def length_bound(self):
        return LengthBound.none()


@dataclass(frozen=True)
class ReverseTower(Tower):
    """Tower order with the segments compared right to left.

    On two letters y < x this is the comparison of ``(n, i_n, ..., i_0)`` for
    ``y^i0 x y^i1 ... x y^in``; on larger alphabets it is the mirror image of
    the tower order (``u < v`` iff ``reversed(u) <_tower reversed(v)``).
    """

    family = "revtower"
    _reverse_segments = True


def compare(order: MonomialOrder, u: Word, v: Word) -> Comparison:
    order.alphabet.check(u)
    order.alphabet.check(v)
    ku, kv = order.key(u), order.key(v)
    if ku < kv:
        return Comparison.LESS
    if ku > kv:
        return Comparison.GREATER
    return Comparison.EQUAL


def length_bound(order: MonomialOrder) -> LengthBound:
    return order.length_bound()


# -- text syntax --------------------------------------------------------------

_FAMILIES = {"deglex": DegLex, "tower": Tower, "revtower": ReverseTower, "wdeglex": WeightedDegLex}


def _parse_chain(alphabet: Alphabet, text: str) -> tuple[int, ...]:
    """``a < b < c`` or ``c > b > a`` -> priority (smallest first)."""
    text = text.strip()
    has_lt, has_gt = "<" in text, ">" in text
    if has_lt and has_gt:
        raise ParseError(f"mixed < and > in letter chain {text!r}")
    if not has_lt and not has_gt:
        names = text.split()
    else:
        names = [t.strip() for t in re.split(r"[<>]", text)]
    if any(not n for n in names):
        raise ParseError(f"malformed letter chain {text!r}")
    try:
        idx = [alphabet.index(n) for n in names]
    except DomainError as exc:
        raise ParseError(str(exc)) from None
    if has_gt:
        idx.reverse()
    if sorted(idx) != list(range(len(alphabet))):
        raise ParseError(f"letter chain {text!r} must mention every letter exactly once")
    return tuple(idx)


def parse_order(alphabet: Alphabet, text: str) -> MonomialOrder:
    """Parse e.g. ``deglex a < b < c``, ``tower a > b > c > d``,
    ``revtower y < x`` or ``wdeglex x:2 y:1 ; x < y within weight``."""
    text = text.strip()
    if text.startswith("order:"):
        text = text[len("order:"):].strip()
    family, _, rest = text.partition(" ")
    cls = _FAMILIES.get(family)
    if cls is None:
        raise ParseError(f"unknown order family {family!r}")
    if cls is not WeightedDegLex:
        prio = _parse_chain(alphabet, rest) if rest.strip() else tuple(range(len(alphabet)))
        return cls(alphabet, prio)
    weight_part, _, chain = rest.partition(";")
    chain = chain.replace("within weight", "").strip()
    weights = [None] * len(alphabet)
    for tok in weight_part.split():
        name, sep, val = tok.partition(":")
        if not sep or not val.isdigit():
            raise ParseError(f"malformed weight {tok!r} (expected letter:int)")
        try:
            weights[alphabet.index(name)] = int(val)
        except DomainError as exc:
            raise ParseError(str(exc)) from None
    if any(w is None for w in weights):
        raise ParseError("weighted deg-lex needs a weight for every letter")
    prio = _parse_chain(alphabet, chain) if chain else tuple(range(len(alphabet)))
    try:
        return WeightedDegLex(alphabet, prio, weights=tuple(weights))
    except DomainError as exc:
        raise ParseError(str(exc)) from None


def deglex(alphabet: Alphabet, order: Sequence[str] | None = None) -> DegLex:
    """Deg-lex with letters ascending as listed (default: alphabet order)."""
    prio = tuple(range(len(alphabet))) if order is None else tuple(alphabet.index(x) for x in order)
    return DegLex(alphabet, prio)
