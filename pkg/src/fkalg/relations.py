"""Named relation families used as regression suites (relcheck)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator

from .coxeter import rk_element
from .freealg import Element, relabel
from .pairing import orthogonal_to_all_words
from .rewrite import RewriteSystem

SUITES = ("braid", "claw", "cyclic", "sextic", "a3tilde", "rk")
DEFAULT_N = {"braid": 3, "claw": 4, "cyclic": 4, "sextic": 5, "a3tilde": 4, "rk": 4}


def letters_expr(n: int, names: dict[str, tuple[int, int]], expr: str) -> Element:
    """Build an element from words in named letters, e.g. "abc+bcd-cda"."""
    out = Element(n)
    sign, tok = 1, ""
    for ch in expr.replace(" ", "") + "+":
        if ch in "+-":
            if tok:
                term = Element.one(n)
                for c in tok:
                    term = term * Element.gen(n, *names[c])
                out = out + term.scale(sign)
            sign, tok = (1 if ch == "+" else -1), ""
        else:
            tok += ch
    return out


def cyclic_relation(n: int, seq: tuple[int, ...]) -> Element:
    """Sum over i of x_{a1 ai}...x_{a1 am} x_{a1 a2}...x_{a1 ai} for distinct a1..am."""
    a1, rest = seq[0], seq[1:]
    m = len(seq)
    gens = [Element.gen(n, a1, v) for v in rest]
    out = Element(n)
    for i in range(m - 1):
        term = Element.one(n)
        for g in gens[i:] + gens[: i + 1]:
            term = term * g
        out = out + term
    return out


def suite(name: str, n: int | None = None) -> Iterator[tuple[str, Element]]:
    """Yield (label, element) pairs of the named family."""
    n = n or DEFAULT_N[name]
    if name == "braid":
        ab = {"a": (1, 2), "b": (2, 3)}
        yield "aba-bab", letters_expr(n, ab, "aba-bab")
    elif name == "claw":
        abc = {"a": (1, 2), "b": (1, 3), "c": (1, 4)}
        for e in ("abca+bcab+cabc", "acba+bacb+cbac"):
            yield e, letters_expr(n, abc, e)
    elif name == "cyclic":
        for m in range(3, n + 1):
            for seq in permutations(range(1, n + 1), m):
                yield f"m={m} a={''.join(map(str, seq))}", cyclic_relation(n, seq)
    elif name == "sextic":
        if n != 5:
            raise ValueError("the sextic family lives in E_5")
        names = {"a": (1, 2), "b": (1, 3), "c": (1, 5), "d": (1, 4)}
        base = letters_expr(5, names, "abacdc-abcdca+acdcba+bacdcb-bcdcab"
                                      "-cabadc+cdabac-cdcaba+dabacd-dcabad")
        # images under permutations of the leaves
        for p in permutations((2, 3, 4, 5)):
            sigma = (1,) + p
            yield "sigma=" + "".join(map(str, sigma)), relabel(sigma, base)
    elif name == "a3tilde":
        if n != 4:
            raise ValueError("the 4-cycle family lives in E_4")
        names = {"a": (1, 2), "b": (2, 3), "c": (3, 4), "d": (4, 1)}
        for e in ("abc+bcd+cda+dab", "cba+dcb+adc+bad", "abda+bcab+cdbc+dacd+acbd+bdac"):
            yield e, letters_expr(4, names, e)
    elif name == "rk":
        for k in range(1, n):
            yield f"R_{k}", rk_element(n, k)
    else:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


@dataclass
class RelVerdict:
    label: str
    degree: int
    terms: int
    reduces_to_zero: bool
    orthogonal: bool

    @property
    def ok(self) -> bool:
        return self.reduces_to_zero and self.orthogonal


def check_relation(label: str, e: Element, rs: RewriteSystem) -> RelVerdict:
    if e.is_zero():
        raise ValueError(f"{label}: relation is identically zero in the free algebra")
    orth, _ = orthogonal_to_all_words(e)
    return RelVerdict(label, max(e.degrees()), len(e.terms), rs.is_zero(e), orth)
