"""Text formats: presentation files (``gsbpres 1``) and cached systems (``gsb 1``).

Presentation file::

    gsbpres 1
    alphabet: a b c
    order: deglex a < b < c
    relations:
      a a = 1
      b c a = a c b

Letters may be juxtaposed (``bca``), separated by spaces or joined with
``*``; ``x^3`` and ``(a c)^2`` are powers; ``1`` is the empty word; terms
take integer or rational coefficients (``3/2*x y``).  Instead of an
alphabet and relations a file may contain one shorthand stanza,
``manturov <n> <k>`` or ``ore sigma=<poly in y> delta=<poly in y>``.

Cached system file::

    gsb 1
    alphabet: a b c
    order: deglex a < b < c
    rule a a -> 1
    schema b (a c)^m b -> (c a)^m for m >= 1
"""

from __future__ import annotations

import re
from fractions import Fraction

from .core import QQ, Alphabet, Field, GF, Polynomial, Word
from .errors import DomainError, GSBError, ParseError
from .orders import MonomialOrder, parse_order
from .presentations import (ALGEBRA, SEMIGROUP, OreSpec, Presentation, manturov, ore_extension)
from .rewrite import RewriteSystem, Rule, RuleSchema

PRES_HEADER = "gsbpres 1"
SYSTEM_HEADER = "gsb 1"

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


class _Pump:
    __slots__ = ("word",)

    def __init__(self, word):
        self.word = word


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet, line: int = 0, col0: int = 0, allow_pump: bool = False):
        self.alphabet = alphabet
        self.line = line
        self.allow_pump = allow_pump
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos]!r}", line, col0 + pos + 1)
            kind = m.lastgroup
            self.toks.append((kind, m.group(kind), col0 + m.start(kind) + 1))
            pos = m.end()
        self.i = 0

    def error(self, msg: str):
        col = self.toks[self.i][2] if self.i < len(self.toks) else (self.toks[-1][2] + 1 if self.toks else 1)
        return ParseError(msg, self.line, col)

    def peek(self, kind=None, value=None):
        if self.i >= len(self.toks):
            return None
        t = self.toks[self.i]
        if kind and t[0] != kind:
            return None
        if value and t[1] != value:
            return None
        return t

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def done(self):
        if self.i != len(self.toks):
            raise self.error(f"unexpected {self.toks[self.i][1]!r}")

    # grammar ---------------------------------------------------------------
    def polynomial(self) -> dict:
        terms: dict = {}
        sign = 1
        if self.peek("op", "-"):
            self.take()
            sign = -1
        elif self.peek("op", "+"):
            self.take()
        while True:
            c, w = self.term()
            terms[w] = terms.get(w, 0) + sign * c
            if self.peek("op", "+"):
                self.take()
                sign = 1
            elif self.peek("op", "-"):
                self.take()
                sign = -1
            else:
                break
        return terms

    def term(self):
        coef = None
        if self.peek("num"):
            coef = Fraction(int(self.take()[1]))
            if self.peek("op", "/"):
                self.take()
                if not self.peek("num"):
                    raise self.error("expected a denominator")
                den = int(self.take()[1])
                if den == 0:
                    raise self.error("zero denominator")
                coef /= den
            if self.peek("op", "*"):
                self.take()
                if not self._starts_factor():
                    raise self.error("expected a monomial after '*'")
        if self._starts_factor():
            pieces = self.monomial()
            w = self._flatten(pieces)
        elif coef is None:
            raise self.error("expected a term")
        else:
            w = ()
        return (Fraction(1) if coef is None else coef), w

    def _starts_factor(self):
        return self.peek("ident") or self.peek("op", "(")

    def monomial(self) -> list:
        pieces = []
        while True:
            if self._starts_factor():
                pieces.extend(self.factor())
            elif self.peek("op", "*") and self.i + 1 < len(self.toks) and \
                    (self.toks[self.i + 1][0] == "ident" or self.toks[self.i + 1][1] == "("):
                self.take()
            else:
                return pieces

    def factor(self) -> list:
        if self.peek("ident"):
            _, text, col = self.take()
            try:
                letters = self.alphabet.split(text)
            except DomainError as exc:
                raise ParseError(f"unknown letter in {text!r}: {exc}", self.line,
                                 col + getattr(exc, "offset", 0)) from None
            if self.peek("op", "^"):
                self.take()
                n = self._exponent(pump_ok=False)
                letters = letters[:-1] + letters[-1:] * n
            return list(letters)
        self.take()  # '('
        inner = self.monomial()
        if not self.peek("op", ")"):
            raise self.error("expected ')'")
        self.take()
        if not self.peek("op", "^"):
            return inner
        self.take()
        if self.peek("ident", "m"):
            if not self.allow_pump:
                raise self.error("symbolic exponent m is only allowed in schema lines")
            self.take()
            if any(isinstance(p, _Pump) for p in inner):
                raise self.error("nested pumped blocks")
            return [_Pump(tuple(inner))]
        n = self._exponent(pump_ok=False)
        if any(isinstance(p, _Pump) for p in inner):
            raise self.error("powers of pumped blocks are not supported")
        return inner * n

    def _exponent(self, pump_ok: bool) -> int:
        if not self.peek("num"):
            raise self.error("expected an integer exponent")
        return int(self.take()[1])

    def _flatten(self, pieces) -> Word:
        if any(isinstance(p, _Pump) for p in pieces):
            raise self.error("symbolic exponent outside a schema")
        return tuple(pieces)


def parse_polynomial(text: str, alphabet: Alphabet, field: Field = QQ, line: int = 0, col0: int = 0) -> Polynomial:
    p = _Parser(text, alphabet, line, col0)
    if not p.toks:
        raise ParseError("empty polynomial", line, col0 + 1)
    if len(p.toks) == 1 and p.toks[0][1] == "0":
        return Polynomial.zero(alphabet, field)
    terms = p.polynomial()
    p.done()
    try:
        return Polynomial(alphabet, terms, field)
    except (DomainError, ZeroDivisionError) as exc:
        raise ParseError(str(exc), line, col0 + 1) from None


def _pumped_side(text: str, alphabet: Alphabet, line: int, col0: int):
    p = _Parser(text, alphabet, line, col0, allow_pump=True)
    if len(p.toks) == 1 and p.toks[0][1] == "1":
        return (), (), ()
    pieces = p.monomial()
    p.done()
    pumps = [i for i, x in enumerate(pieces) if isinstance(x, _Pump)]
    if len(pumps) > 1:
        raise ParseError("a schema side may contain at most one (...)^m block", line, col0 + 1)
    if not pumps:
        return tuple(pieces), (), ()
    k = pumps[0]
    return tuple(pieces[:k]), pieces[k].word, tuple(pieces[k + 1:])


_SCHEMA = re.compile(r"^(?P<lhs>.*?)->(?P<rhs>.*?)\bfor\s+m\s*>=\s*(?P<m0>\d+)\s*$")


def parse_schema(text: str, alphabet: Alphabet, line: int = 0, col0: int = 0) -> RuleSchema:
    m = _SCHEMA.match(text)
    if not m:
        raise ParseError("schema syntax: P (B)^m S -> P' (B')^m S' for m >= m0", line, col0 + 1)
    P, B, S = _pumped_side(m.group("lhs"), alphabet, line, col0 + m.start("lhs"))
    P2, B2, S2 = _pumped_side(m.group("rhs"), alphabet, line, col0 + m.start("rhs"))
    if not B:
        raise ParseError("schema left-hand side needs a (...)^m block", line, col0 + 1)
    try:
        return RuleSchema(P, B, S, P2, B2, S2, int(m.group("m0")))
    except DomainError as exc:
        raise ParseError(str(exc), line, col0 + 1) from None


# -- line-oriented helpers -----------------------------------------------------


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield n, raw, body


def _parse_alphabet(body: str, line: int) -> Alphabet:
    names, aliases = [], []
    for tok in body.split():
        name, sep, alias = tok.partition("=")
        names.append(name)
        aliases.append(alias if sep else None)
    if not names:
        raise ParseError("empty alphabet", line, 1)
    if any(a is None for a in aliases) and any(a is not None for a in aliases):
        raise ParseError("either every letter has an alias or none does", line, 1)
    for name in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise ParseError(f"bad letter name {name!r}", line, 1)
    try:
        return Alphabet(tuple(names), tuple(aliases) if aliases[0] is not None else None)
    except DomainError as exc:
        raise ParseError(str(exc), line, 1) from None


def _parse_field(body: str, line: int) -> Field:
    body = body.strip()
    if body in ("QQ", "Q", "0"):
        return QQ
    m = re.fullmatch(r"GF\((\d+)\)", body)
    if m:
        try:
            return GF(int(m.group(1)))
        except DomainError as exc:
            raise ParseError(str(exc), line, 1) from None
    raise ParseError(f"unknown field {body!r} (use QQ or GF(p))", line, 1)


def _field_text(f: Field) -> str:
    return str(f)


def _order_at(alphabet: Alphabet, body: str, line: int) -> MonomialOrder:
    try:
        return parse_order(alphabet, body)
    except ParseError as exc:
        raise ParseError(str(exc), line, 1) from None
    except DomainError as exc:
        raise ParseError(str(exc), line, 1) from None


def _key_value(body: str):
    key, sep, value = body.partition(":")
    return key.strip(), value.strip(), sep


def parse_presentation_file(text: str) -> Presentation:
    lines = list(_lines(text))
    if not lines or lines[0][2].strip() != PRES_HEADER:
        raise ParseError(f"first line must be {PRES_HEADER!r}", lines[0][0] if lines else 1, 1)
    alphabet = field = order_line = kind = None
    name = ""
    relations: list[tuple[int, str, int]] = []
    shorthand = None
    in_rel = False
    for n, raw, body in lines[1:]:
        stripped = body.strip()
        if in_rel and raw[:1] in (" ", "\t") and "=" in stripped and ":" not in stripped:
            relations.append((n, body, len(body) - len(body.lstrip())))
            continue
        in_rel = False
        if stripped.startswith("manturov"):
            parts = stripped.split()
            if len(parts) != 3 or not all(p.isdigit() for p in parts[1:]):
                raise ParseError("expected 'manturov <n> <k>'", n, 1)
            shorthand = ("manturov", int(parts[1]), int(parts[2]), n)
            continue
        if stripped.startswith("ore ") or stripped == "ore":
            shorthand = ("ore", stripped[3:].strip(), n)
            continue
        key, value, sep = _key_value(stripped)
        if not sep:
            raise ParseError(f"cannot read line {stripped!r}", n, 1)
        if key == "alphabet":
            alphabet = _parse_alphabet(value, n)
        elif key == "order":
            order_line = (value, n)
        elif key == "field":
            field = _parse_field(value, n)
        elif key == "kind":
            if value not in (SEMIGROUP, ALGEBRA):
                raise ParseError(f"unknown kind {value!r}", n, 1)
            kind = value
        elif key == "name":
            name = value
        elif key == "relations":
            in_rel = True
            if value:
                relations.append((n, body[body.index(":") + 1:], body.index(":") + 1))
        else:
            raise ParseError(f"unknown key {key!r}", n, 1)
    field = field or QQ

    if shorthand is not None:
        if alphabet is not None or relations:
            raise ParseError("a shorthand stanza replaces the alphabet and relations", shorthand[-1], 1)
        try:
            if shorthand[0] == "manturov":
                pres = manturov(shorthand[1], shorthand[2])
            else:
                pres = _ore_stanza(shorthand[1], field, shorthand[2])
        except DomainError as exc:
            raise ParseError(str(exc), shorthand[-1], 1) from None
        if order_line is not None:
            pres = pres.with_order(_order_at(pres.alphabet, *order_line))
        if name:
            pres = Presentation(pres.alphabet, pres.relations, pres.order, pres.kind, name)
        return pres

    if alphabet is None:
        raise ParseError("missing 'alphabet:' line", 1, 1)
    order = _order_at(alphabet, *order_line) if order_line else _order_at(alphabet, "deglex", 0)
    rels = []
    for n, body, col in relations:
        lhs_text, eq, rhs_text = body.partition("=")
        if "=" in rhs_text:
            raise ParseError("a relation has exactly one '='", n, 1)
        lhs = parse_polynomial(lhs_text, alphabet, field, n, 0)
        rhs = parse_polynomial(rhs_text, alphabet, field, n, len(lhs_text) + 1)
        if lhs == rhs:
            raise ParseError("trivial relation (both sides equal)", n, 1)
        rels.append((lhs, rhs))
    words_only = all(_is_word(p) for rel in rels for p in rel)
    if kind is None:
        kind = SEMIGROUP if words_only else ALGEBRA
    elif kind == SEMIGROUP and not words_only:
        raise ParseError("semigroup presentations relate words only", relations[0][0] if relations else 1, 1)
    return Presentation(alphabet, tuple(rels), order, kind, name)


def _is_word(p: Polynomial) -> bool:
    return len(p) == 1 and next(iter(p.terms.values())) == 1


def _ore_stanza(args: str, field: Field, line: int) -> Presentation:
    vals = {}
    for m in re.finditer(r"(sigma|delta)\s*=\s*(.*?)(?=\s+(?:sigma|delta)\s*=|$)", args):
        vals[m.group(1)] = m.group(2).strip()
    if set(vals) != {"sigma", "delta"}:
        raise ParseError("expected 'ore sigma=<poly> delta=<poly>'", line, 1)
    Y = Alphabet(("y",))
    spec = OreSpec(parse_polynomial(vals["sigma"], Y, field, line), parse_polynomial(vals["delta"], Y, field, line))
    return ore_extension(spec)


def format_presentation(pres: Presentation) -> str:
    A = pres.alphabet
    if A.aliases is not None:
        alpha = " ".join(f"{n}={a}" for n, a in zip(A.letters, A.aliases))
    else:
        alpha = " ".join(A.letters)
    out = [PRES_HEADER]
    if pres.name:
        out.append(f"name: {pres.name}")
    out += [f"alphabet: {alpha}", f"field: {_field_text(pres.field)}", f"kind: {pres.kind}",
            f"order: {pres.order.spec()}", "relations:"]
    for l, r in pres.relations:
        out.append(f"  {l.format(pres.order, spaced=True)} = {r.format(pres.order, spaced=True)}")
    return "\n".join(out) + "\n"


# -- cached systems ------------------------------------------------------------


def format_system(sys: RewriteSystem, source_digest: str | None = None, note: str | None = None) -> str:
    A = sys.alphabet
    if A.aliases is not None:
        alpha = " ".join(f"{n}={a}" for n, a in zip(A.letters, A.aliases))
    else:
        alpha = " ".join(A.letters)
    out = [SYSTEM_HEADER]
    if source_digest:
        out.append(f"source: {source_digest}")
    if note:
        out.append(f"note: {note}")
    out += [f"alphabet: {alpha}", f"field: {_field_text(sys.field)}", f"order: {sys.order.spec()}"]
    for r in sys.rules:
        out.append(f"rule {A.spaced(r.lhs)} -> {r.rhs.format(sys.order, spaced=True)}")
    for s in sys.schemas:
        out.append(f"schema {s.format(A)}")
    return "\n".join(out) + "\n"


def parse_system_file(text: str) -> tuple[RewriteSystem, dict]:
    """Parse a cached ``.gsb`` system; returns the system and its header fields."""
    lines = list(_lines(text))
    if not lines or lines[0][2].strip() != SYSTEM_HEADER:
        raise ParseError(f"first line must be {SYSTEM_HEADER!r}", lines[0][0] if lines else 1, 1)
    meta: dict = {}
    alphabet = order = None
    field = QQ
    rules, schemas = [], []
    for n, raw, body in lines[1:]:
        stripped = body.strip()
        if stripped.startswith("rule "):
            if alphabet is None or order is None:
                raise ParseError("rules must follow the alphabet and order lines", n, 1)
            lhs_text, arrow, rhs_text = stripped[5:].partition("->")
            if not arrow:
                raise ParseError("expected 'rule <lhs> -> <rhs>'", n, 1)
            lhs = parse_polynomial(lhs_text, alphabet, field, n, 5)
            if not _is_word(lhs):
                raise ParseError("rule left-hand side must be a single word", n, 6)
            rhs = parse_polynomial(rhs_text, alphabet, field, n, 5 + len(lhs_text) + 2)
            rules.append(Rule(next(iter(lhs.terms)), rhs))
        elif stripped.startswith("schema "):
            if alphabet is None or order is None:
                raise ParseError("schemas must follow the alphabet and order lines", n, 1)
            schemas.append(parse_schema(stripped[7:], alphabet, n, 7))
        else:
            key, value, sep = _key_value(stripped)
            if not sep:
                raise ParseError(f"cannot read line {stripped!r}", n, 1)
            if key == "alphabet":
                alphabet = _parse_alphabet(value, n)
            elif key == "order":
                if alphabet is None:
                    raise ParseError("order before alphabet", n, 1)
                order = _order_at(alphabet, value, n)
            elif key == "field":
                field = _parse_field(value, n)
            else:
                meta[key] = value
    if alphabet is None or order is None:
        raise ParseError("missing alphabet or order line", 1, 1)
    try:
        return RewriteSystem(alphabet, order, tuple(rules), tuple(schemas)), meta
    except GSBError as exc:
        raise ParseError(str(exc), 1, 1) from None
