"""Free associative algebra on the generators x_ij with exact rational coefficients.

A letter x_ij (i < j) is stored as the integer ``i * BASE + j`` so that the
natural integer order on letters is the lexicographic order on (i, j) and
words are plain tuples of ints.  Words are compared degree first, then
lexicographically.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Mapping, Union

BASE = 64

Scalar = Union[int, Fraction]
Word = tuple  # tuple[int, ...]
Perm = tuple  # images of 1..n, 1-based values


def letter(i: int, j: int) -> int:
    """Code of the generator x_ij; requires i < j."""
    if not (0 < i < j < BASE):
        raise ValueError(f"bad generator indices ({i}, {j})")
    return i * BASE + j


def ends(code: int) -> tuple[int, int]:
    return divmod(code, BASE)


def normalize_pair(i: int, j: int) -> tuple[int, int]:
    """Return (sign, letter) with x_ij = sign * letter."""
    if i == j:
        raise ValueError("x_ii is not a generator")
    if i < j:
        return 1, letter(i, j)
    return -1, letter(j, i)


def word_key(w: Word) -> tuple:
    """Sort key for the global degree-lexicographic word order."""
    return (len(w), w)


def _clean(c: Scalar) -> Scalar:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def add_into(acc: dict, terms: Mapping, scale: Scalar = 1) -> None:
    """acc += scale * terms, dropping zeros."""
    for w, c in terms.items():
        v = acc.get(w, 0) + scale * c
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)


class Element:
    """Finite linear combination of words; immutable by convention."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping | None = None):
        self.n = n
        t = {}
        if terms:
            for w, c in terms.items():
                if c:
                    t[tuple(w)] = _clean(c)
        self.terms = t

    # constructors
    @classmethod
    def one(cls, n: int) -> "Element":
        return cls(n, {(): 1})

    @classmethod
    def gen(cls, n: int, i: int, j: int) -> "Element":
        s, g = normalize_pair(i, j)
        if max(i, j) > n:
            raise ValueError(f"x_{i}{j} outside ambient n={n}")
        return cls(n, {(g,): s})

    @classmethod
    def word(cls, n: int, w: Iterable[int], coeff: Scalar = 1) -> "Element":
        return cls(n, {tuple(w): coeff})

    def _check(self, other: "Element") -> None:
        if self.n != other.n:
            raise ValueError(f"ambient mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        acc = dict(self.terms)
        add_into(acc, other.terms)
        return Element(self.n, acc)

    def __neg__(self) -> "Element":
        return Element(self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c: Scalar) -> "Element":
        return Element(self.n, {w: c * v for w, v in self.terms.items()})

    def __rmul__(self, c: Scalar) -> "Element":
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.n == other.n and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    def homogeneous(self, d: int) -> "Element":
        return Element(self.n, {w: c for w, c in self.terms.items() if len(w) == d})

    def sorted_terms(self) -> list[tuple[Word, Scalar]]:
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]))

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"Element({self.n}, {format_element(self)!r})"


def multiply(a: Element, b: Element) -> Element:
    a._check(b)
    acc: dict = {}
    for u, c in a.terms.items():
        for v, d in b.terms.items():
            w = u + v
            x = acc.get(w, 0) + c * d
            if x:
                acc[w] = x
            else:
                acc.pop(w, None)
    return Element(a.n, acc)


# ---- rendering -------------------------------------------------------------

def format_letter(code: int) -> str:
    i, j = ends(code)
    if i < 10 and j < 10:
        return f"x{i}{j}"
    return f"x{i}_{j}"


def format_word(w: Word) -> str:
    return ".".join(format_letter(c) for c in w) if w else "1"


def format_element(e: Element) -> str:
    if not e.terms:
        return "0"
    parts = []
    for w, c in e.sorted_terms():
        sign = "-" if c < 0 else "+"
        parts.append(f"{sign}{abs(c)}*{format_word(w)}")
    return " ".join(parts)


_TERM = re.compile(r"([+-])\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?([^\s+-]+)")
_LETTER = re.compile(r"x(\d+)_(\d+)$|x(\d)(\d)$")


def parse_letter(tok: str) -> tuple[int, int]:
    """Parse 'x12' or 'x3_10' into (sign, letter code)."""
    m = _LETTER.match(tok)
    if not m:
        raise ValueError(f"bad generator token {tok!r}")
    i, j = (int(m.group(1)), int(m.group(2))) if m.group(1) else (int(m.group(3)), int(m.group(4)))
    return normalize_pair(i, j)


def parse_element(text: str, n: int) -> Element:
    """Inverse of format_element; also accepts x_ji letters (with sign) and omitted
    coefficients, as in "x12.x23 - x13"."""
    text = text.strip()
    if text == "0":
        return Element(n)
    if text[0] not in "+-":
        text = "+" + text
    acc: dict = {}
    pos = 0
    for m in _TERM.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"unparsed text {text[pos:m.start()]!r}")
        pos = m.end()
        c = Fraction(m.group(2) or 1)
        if m.group(1) == "-":
            c = -c
        w = []
        if m.group(3) != "1":
            for tok in m.group(3).split("."):
                s, g = parse_letter(tok)
                if ends(g)[1] > n:
                    raise ValueError(f"{tok} outside ambient n={n}")
                c *= s
                w.append(g)
        add_into(acc, {tuple(w): c})
    if text[pos:].strip():
        raise ValueError(f"unparsed text {text[pos:]!r}")
    return Element(n, acc)


# ---- gradings ---------------------------------------------------------------

def identity_perm(n: int) -> Perm:
    return tuple(range(1, n + 1))


def compose(s: Perm, t: Perm) -> Perm:
    """(s∘t)(i) = s(t(i))."""
    return tuple(s[x - 1] for x in t)


def inverse(s: Perm) -> Perm:
    out = [0] * len(s)
    for i, x in enumerate(s, 1):
        out[x - 1] = i
    return tuple(out)


def transposition(n: int, i: int, j: int) -> Perm:
    p = list(range(1, n + 1))
    p[i - 1], p[j - 1] = j, i
    return tuple(p)


def sn_degree(w: Word, n: int) -> Perm:
    """σ_{g1}∘…∘σ_{gd}: applied to a point, the last letter acts first."""
    p = list(range(1, n + 1))
    # p holds σ_{g1}∘…∘σ_{gk}; right-composing with (i j) swaps entries i and j
    for code in w:
        i, j = ends(code)
        p[i - 1], p[j - 1] = p[j - 1], p[i - 1]
    return tuple(p)


def support_partition(w: Word, n: int) -> tuple[tuple[int, ...], ...]:
    """Blocks of the coarsest partition joining the two ends of every letter."""
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for code in w:
        i, j = ends(code)
        a, b = find(i), find(j)
        if a != b:
            parent[max(a, b)] = min(a, b)
    blocks: dict[int, list[int]] = {}
    for v in range(1, n + 1):
        blocks.setdefault(find(v), []).append(v)
    return tuple(sorted(tuple(b) for b in blocks.values()))


def format_partition(p: tuple[tuple[int, ...], ...]) -> str:
    return "|".join("".join(map(str, b)) for b in p)


# ---- (anti)automorphisms ----------------------------------------------------

def reverse(e: Element) -> Element:
    return Element(e.n, {w[::-1]: c for w, c in e.terms.items()})


def relabel_word(sigma: Perm, w: Word) -> tuple[int, Word]:
    sign = 1
    out = []
    for code in w:
        i, j = ends(code)
        s, g = normalize_pair(sigma[i - 1], sigma[j - 1])
        sign *= s
        out.append(g)
    return sign, tuple(out)


def relabel(sigma: Perm, e: Element) -> Element:
    if len(sigma) != e.n:
        raise ValueError("permutation size differs from ambient n")
    acc: dict = {}
    for w, c in e.terms.items():
        s, v = relabel_word(sigma, w)
        add_into(acc, {v: s * c})
    return Element(e.n, acc)


def words_of_degree(letters: Iterable[int], d: int) -> Iterator[Word]:
    """All words of length d over the given letters, in the global order."""
    return product(sorted(set(letters)), repeat=d)
