"""Independent reference implementations used to cross-check the library.

Everything here works on plain strings with naive algorithms and shares no
code with ``gsb`` beyond reading rule tables.
"""

from __future__ import annotations

import functools
import itertools
from collections import deque


def words(alphabet: str, max_len: int, min_len: int = 0):
    for n in range(min_len, max_len + 1):
        for t in itertools.product(alphabet, repeat=n):
            yield "".join(t)


# -- orders -------------------------------------------------------------------


def deglex_cmp(priority: str):
    rank = {c: i for i, c in enumerate(priority)}

    def cmp(u, v):
        if len(u) != len(v):
            return -1 if len(u) < len(v) else 1
        for a, b in zip(u, v):
            if a != b:
                return -1 if rank[a] < rank[b] else 1
        return 0
    return cmp


def wdeglex_cmp(weights: dict, priority: str):
    lex = deglex_cmp(priority)
    rank = {c: i for i, c in enumerate(priority)}

    def cmp(u, v):
        wu, wv = sum(weights[c] for c in u), sum(weights[c] for c in v)
        if wu != wv:
            return -1 if wu < wv else 1
        for a, b in zip(u, v):
            if a != b:
                return -1 if rank[a] < rank[b] else 1
        return 0 if len(u) == len(v) else lex(u, v)
    return cmp


def tower_cmp(descending: str):
    """Tower order with letters listed largest first, by direct recursion."""
    rank = {c: len(descending) - i for i, c in enumerate(descending)}

    def cmp(u, v):
        if u == v:
            return 0
        if not u:
            return -1
        if not v:
            return 1
        mu = max(u, key=rank.__getitem__)
        mv = max(v, key=rank.__getitem__)
        if mu != mv:
            return -1 if rank[mu] < rank[mv] else 1
        nu, nv = u.count(mu), v.count(mv)
        if nu != nv:
            return -1 if nu < nv else 1
        for su, sv in zip(u.split(mu), v.split(mv)):
            c = cmp(su, sv)
            if c:
                return c
        return 0
    return cmp


def revtower_two_letter_cmp(small: str, big: str):
    """Reverse tower on {y < x}: compare the tuple (n, i_n, ..., i_0) where
    u = y^i0 x y^i1 x ... x y^in."""
    def tup(u):
        parts = u.split(big)
        return (len(parts) - 1,) + tuple(len(p) for p in reversed(parts))

    def cmp(u, v):
        a, b = tup(u), tup(v)
        return (a > b) - (a < b)
    return cmp


def sort_words(ws, cmp):
    return sorted(ws, key=functools.cmp_to_key(cmp))


# -- rewriting on strings -------------------------------------------------------


def string_rules(sys) -> list[tuple[str, str]]:
    """Finite rules of a binomial system as (lhs, rhs) strings."""
    A = sys.alphabet
    out = []
    for r in sys.rules:
        (w, c), = r.rhs.terms.items()
        assert c == 1
        out.append(("".join(A.display[i] for i in r.lhs), "".join(A.display[i] for i in w)))
    return out


def schema_string_rules(sys, bound: int) -> list[tuple[str, str]]:
    A = sys.alphabet
    show = lambda w: "".join(A.display[i] for i in w)  # noqa: E731
    out = []
    for s in sys.schemas:
        for m in range(s.m_min, bound + 1):
            out.append((show(s.lhs(m)), show(s.rhs_word(m))))
    return out


def naive_normal_form(u: str, rules: list[tuple[str, str]], max_steps: int = 100000) -> str:
    """Rewrite the rightmost occurrence of any lhs until none is left."""
    for _ in range(max_steps):
        best = None
        for l, r in rules:
            i = u.rfind(l)
            if i >= 0 and (best is None or i > best[0]):
                best = (i, l, r)
        if best is None:
            return u
        i, l, r = best
        u = u[:i] + r + u[i + len(l):]
    raise RuntimeError("no normal form within the step limit")


def word_classes(alphabet: str, relations: list[tuple[str, str]], max_len: int):
    """Union-find over all words of length <= max_len, joining u and v when
    one relation application (in either direction) turns u into v while
    staying inside the length window.

    Words of length <= max_len that are equal in the semigroup are joined
    provided some derivation between them never exceeds max_len letters.
    """
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for w in words(alphabet, max_len):
        parent[w] = w
    both = relations + [(r, l) for l, r in relations]
    for w in list(parent):
        for l, r in both:
            if not l:
                continue
            start = w.find(l)
            while start >= 0:
                v = w[:start] + r + w[start + len(l):]
                if v in parent:
                    a, b = find(w), find(v)
                    if a != b:
                        parent[a] = b
                start = w.find(l, start + 1)
    return find


def bfs_equal(u: str, v: str, relations: list[tuple[str, str]], max_len: int) -> bool:
    """Bidirectional breadth-first search between u and v through words of
    length <= max_len."""
    if u == v:
        return True
    both = relations + [(r, l) for l, r in relations]

    def neighbours(w):
        for l, r in both:
            i = w.find(l)
            while i >= 0 and l:
                x = w[:i] + r + w[i + len(l):]
                if len(x) <= max_len:
                    yield x
                i = w.find(l, i + 1)

    seen = {u: 0, v: 1}
    frontier = {0: deque([u]), 1: deque([v])}
    while frontier[0] or frontier[1]:
        side = 0 if frontier[0] and (not frontier[1] or len(frontier[0]) <= len(frontier[1])) else 1
        for _ in range(len(frontier[side])):
            w = frontier[side].popleft()
            for x in neighbours(w):
                if x in seen:
                    if seen[x] != side:
                        return True
                    continue
                seen[x] = side
                frontier[side].append(x)
    return False


# -- forbidden factors ------------------------------------------------------------


def avoids(w: str, forbidden) -> bool:
    return not any(f in w for f in forbidden)


def irreducible_words(alphabet: str, forbidden, max_len: int) -> list[str]:
    return [w for w in words(alphabet, max_len) if avoids(w, forbidden)]


def count_by_length(alphabet: str, forbidden, max_len: int) -> list[int]:
    out = [0] * (max_len + 1)
    for w in irreducible_words(alphabet, forbidden, max_len):
        out[len(w)] += 1
    return out


def factorizations(w: str, code) -> list[tuple[str, ...]]:
    """All ways to write w as a concatenation of code words."""
    if not w:
        return [()]
    out = []
    for c in code:
        if c and w.startswith(c):
            out += [(c,) + rest for rest in factorizations(w[len(c):], code)]
    return out


def is_code_bruteforce(code, max_len: int) -> bool:
    """No word up to max_len letters has two factorizations."""
    for n in range(1, max_len + 1):
        for combo in _concatenations(code, n):
            if len(factorizations(combo, code)) > 1:
                return False
    return True


def _concatenations(code, n):
    found = set()
    frontier = {""}
    while frontier:
        nxt = set()
        for w in frontier:
            for c in code:
                x = w + c
                if len(x) <= n and x not in found:
                    found.add(x)
                    nxt.add(x)
        frontier = nxt
    return found


def factor_regex(finite, pumped):
    """Regex matching any forbidden factor; ``pumped`` holds (P, B, S, m_min)
    string tuples meaning P B^m S for m >= m_min."""
    import re
    parts = [re.escape(w) for w in finite]
    parts += [f"{re.escape(p)}(?:{re.escape(b)}){{{m},}}{re.escape(s)}" for p, b, s, m in pumped]
    return re.compile("|".join(parts)) if parts else None


def census(alphabet: str, finite, pumped, max_len: int) -> list[int]:
    """Per-length counts of words avoiding every forbidden factor, by
    depth-first extension (a word with a forbidden factor is never extended)."""
    rx = factor_regex(finite, pumped)
    out = [0] * (max_len + 1)
    stack = [""]
    while stack:
        w = stack.pop()
        out[len(w)] += 1
        if len(w) < max_len:
            for x in alphabet:
                v = w + x
                if rx is None or not rx.search(v):
                    stack.append(v)
    return out
