"""Alphabets, words, exact coefficients and noncommutative polynomials.

A word is a plain tuple of letter indices into its :class:`Alphabet`; the
empty tuple is the identity 1.  Polynomials are immutable finite maps from
words to nonzero coefficients.  Nothing here depends on a monomial order
except :func:`leading_monomial` and :func:`make_monic`, which take one
explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Iterator, Mapping, Union

from .errors import DomainError, EmptyPolynomialError

if TYPE_CHECKING:
    from .orders import MonomialOrder

Word = tuple  # tuple[int, ...]

ONE: Word = ()


@dataclass(frozen=True)
class Alphabet:
    """Ordered, distinct letter names with optional short display aliases.

    >>> A = Alphabet(("a12", "a13", "a23"), aliases=("a", "b", "c"))
    >>> A.show(A.word("a13 a23 a12"))
    'bca'
    """

    letters: tuple[str, ...]
    aliases: tuple[str, ...] | None = None
    _lookup: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise DomainError("alphabet must contain at least one letter")
        if any(not isinstance(x, str) or not x for x in letters):
            raise DomainError("letter names must be non-empty strings")
        if len(set(letters)) != len(letters):
            raise DomainError(f"duplicate letter names in {letters}")
        lookup = {name: i for i, name in enumerate(letters)}
        if self.aliases is not None:
            aliases = tuple(self.aliases)
            object.__setattr__(self, "aliases", aliases)
            if len(aliases) != len(letters) or len(set(aliases)) != len(aliases):
                raise DomainError("aliases must be distinct, one per letter")
            for i, alias in enumerate(aliases):
                if lookup.get(alias, i) != i:
                    raise DomainError(f"alias {alias!r} clashes with a letter name")
                lookup[alias] = i
        object.__setattr__(self, "_lookup", lookup)

    def __len__(self) -> int:
        return len(self.letters)

    def index(self, name: str) -> int:
        try:
            return self._lookup[name]
        except KeyError:
            raise DomainError(f"unknown letter {name!r}") from None

    @property
    def display(self) -> tuple[str, ...]:
        return self.aliases if self.aliases is not None else self.letters

    def split(self, chunk: str) -> Word:
        """Greedy longest-match tokenization of juxtaposed letter names."""
        out = []
        pos = 0
        names = sorted(self._lookup, key=len, reverse=True)
        while pos < len(chunk):
            for name in names:
                if chunk.startswith(name, pos):
                    out.append(self._lookup[name])
                    pos += len(name)
                    break
            else:
                err = DomainError(f"cannot read a letter at {chunk[pos:]!r}")
                err.offset = pos
                raise err
        return tuple(out)

    def word(self, text: Union[str, Iterable[str]]) -> Word:
        """Parse ``"bca"``, ``"b c a"``, ``"b*c*a"`` or a sequence of names.

        ``"1"`` and ``""`` denote the empty word.
        """
        if not isinstance(text, str):
            return tuple(self.index(name) for name in text)
        text = text.strip()
        if text in ("", "1"):
            return ONE
        out: list[int] = []
        for chunk in text.replace("*", " ").split():
            out.extend(self.split(chunk))
        return tuple(out)

    def check(self, w: Word) -> Word:
        n = len(self.letters)
        for i in w:
            if not (isinstance(i, int) and 0 <= i < n):
                raise DomainError(f"letter index {i!r} outside alphabet of size {n}")
        return w

    def show(self, w: Word) -> str:
        if not w:
            return "1"
        names = self.display
        sep = "" if all(len(names[i]) == 1 for i in w) else " "
        return sep.join(names[i] for i in w)

    def spaced(self, w: Word) -> str:
        """Space-separated canonical names; the file-format rendering."""
        return " ".join(self.letters[i] for i in w) if w else "1"


# -- coefficients ---------------------------------------------------------


class ModP:
    """Element of the prime field GF(p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, ModP):
            if other.p != self.p:
                raise DomainError("mixing coefficients of different characteristic")
            return other.v
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return int(other)

    def __add__(self, o):
        return ModP(self.v + self._coerce(o), self.p)

    __radd__ = __add__

    def __sub__(self, o):
        return ModP(self.v - self._coerce(o), self.p)

    def __rsub__(self, o):
        return ModP(self._coerce(o) - self.v, self.p)

    def __mul__(self, o):
        return ModP(self.v * self._coerce(o), self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        d = self._coerce(o) % self.p
        if d == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return ModP(self.v * pow(d, -1, self.p), self.p)

    def __rtruediv__(self, o):
        return ModP(self._coerce(o), self.p) / self

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __eq__(self, o):
        if isinstance(o, ModP):
            return self.p == o.p and self.v == o.v
        if isinstance(o, (int, Fraction)):
            return self.v == self._coerce(o) % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.p})"

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class Field:
    """Coefficient domain: characteristic 0 means exact rationals."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p < 0 or p == 1 or (p > 1 and any(p % q == 0 for q in range(2, int(p**0.5) + 1))):
            raise DomainError(f"characteristic must be 0 or a prime, got {p}")

    def __call__(self, value) -> Union[Fraction, ModP]:
        if self.characteristic == 0:
            if isinstance(value, ModP):
                raise DomainError("GF(p) coefficient in a rational polynomial")
            return Fraction(value)
        if isinstance(value, ModP):
            if value.p != self.characteristic:
                raise DomainError("mixing coefficients of different characteristic")
            return value
        if isinstance(value, Fraction):
            return ModP(1, self.characteristic) * value
        return ModP(int(value), self.characteristic)

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


# -- polynomials -----------------------------------------------------------


class Polynomial:
    """Finitely supported map Word -> nonzero coefficient.  Immutable."""

    __slots__ = ("alphabet", "field", "terms", "_hash")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Word, object] = (), field: Field = QQ,
                 *, _trusted: bool = False):
        self.alphabet = alphabet
        self.field = field
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            for w, c in dict(terms).items():
                alphabet.check(tuple(w))
                c = field(c)
                if c:
                    clean[tuple(w)] = clean.get(tuple(w), field(0)) + c
                    if not clean[tuple(w)]:
                        del clean[tuple(w)]
            self.terms = clean
        self._hash = None

    @classmethod
    def monomial(cls, alphabet: Alphabet, w: Word, coef=1, field: Field = QQ) -> Polynomial:
        return cls(alphabet, {w: coef}, field)

    @classmethod
    def constant(cls, alphabet: Alphabet, c=1, field: Field = QQ) -> Polynomial:
        return cls(alphabet, {ONE: c}, field)

    @classmethod
    def zero(cls, alphabet: Alphabet, field: Field = QQ) -> Polynomial:
        return cls(alphabet, {}, field, _trusted=True)

    # arithmetic -------------------------------------------------------
    def _same(self, other: Polynomial) -> None:
        if other.alphabet is not self.alphabet and other.alphabet != self.alphabet:
            raise DomainError("polynomials over different alphabets")
        if other.field != self.field:
            raise DomainError("polynomials over different coefficient fields")

    def _lift(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._same(other)
            return other
        return Polynomial.constant(self.alphabet, other, self.field)

    def __add__(self, other) -> Polynomial:
        other = self._lift(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return Polynomial(self.alphabet, out, self.field, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.alphabet, {w: -c for w, c in self.terms.items()}, self.field,
                          _trusted=True)

    def __sub__(self, other) -> Polynomial:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> Polynomial:
        return self._lift(other) - self

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            c = self.field(other)
            if not c:
                return Polynomial.zero(self.alphabet, self.field)
            return Polynomial(self.alphabet, {w: a * c for w, a in self.terms.items()},
                              self.field, _trusted=True)
        return poly_mul(self, other)

    def __rmul__(self, other) -> Polynomial:
        return self * other  # scalars commute with everything

    def scale(self, c) -> Polynomial:
        return self * c

    def sandwich(self, left: Word, right: Word) -> Polynomial:
        """``left * self * right`` for words ``left``, ``right``."""
        return Polynomial(self.alphabet, {left + w + right: c for w, c in self.terms.items()},
                          self.field, _trusted=True)

    # inspection -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Word, object]]:
        return iter(self.terms.items())

    def coefficient(self, w: Word):
        return self.terms.get(tuple(w), self.field(0))

    def support(self) -> frozenset:
        return frozenset(self.terms)

    def letters_used(self) -> set[int]:
        return {i for w in self.terms for i in w}

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.alphabet == other.alphabet and self.field == other.field \
                and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.alphabet, other, self.field)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabet.letters, frozenset(self.terms.items())))
        return self._hash

    def leading(self, order: MonomialOrder) -> tuple[Word, object]:
        return leading_monomial(self, order)

    def monic(self, order: MonomialOrder) -> Polynomial:
        return make_monic(self, order)

    def sorted_terms(self, order: MonomialOrder | None = None) -> list[tuple[Word, object]]:
        if order is None:
            key = lambda t: (len(t[0]), t[0])  # noqa: E731
        else:
            key = lambda t: order.key(t[0])  # noqa: E731
        return sorted(self.terms.items(), key=key, reverse=True)

    def format(self, order: MonomialOrder | None = None, spaced: bool = False) -> str:
        if not self.terms:
            return "0"
        show = self.alphabet.spaced if spaced else self.alphabet.show
        parts = []
        for w, c in self.sorted_terms(order):
            neg = (c < 0) if isinstance(c, Fraction) else False
            mag = -c if neg else c
            if w == ONE:
                body = str(mag)
            elif mag == 1:
                body = show(w)
            else:
                body = f"{mag} {show(w)}" if spaced else f"{mag}*{show(w)}"
            parts.append(("- " if neg else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Polynomial({self.format()!r})"


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    """Distributive concatenation product in the free algebra."""
    f._same(g)
    out: dict = {}
    for u, a in f.terms.items():
        for v, b in g.terms.items():
            w = u + v
            s = out.get(w)
            s = a * b if s is None else s + a * b
            if s:
                out[w] = s
            else:
                del out[w]
    return Polynomial(f.alphabet, out, f.field, _trusted=True)


def leading_monomial(f: Polynomial, order: MonomialOrder) -> tuple[Word, object]:
    """Return ``(w, c)`` with ``w`` the order-maximal word of the support."""
    if not f.terms:
        raise EmptyPolynomialError("the zero polynomial has no leading monomial")
    order.check_alphabet(f.alphabet)
    w = max(f.terms, key=order.key)
    return w, f.terms[w]


def make_monic(f: Polynomial, order: MonomialOrder) -> Polynomial:
    _, c = leading_monomial(f, order)
    if c == 1:
        return f
    inv = f.field(1) / c
    return f * inv
