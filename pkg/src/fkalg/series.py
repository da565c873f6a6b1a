"""Polynomials in t with exact coefficients, q-integers, Hilbert-series formulas and Weyl data."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import sympy


class NotExact(ArithmeticError):
    """A division that was required to be exact left a remainder."""


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class GradedSeries:
    """Polynomial sum c_d t^d; coefficients are ints or Fractions, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_clean(Fraction(c) if not isinstance(c, (int, Fraction)) else c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, d: int, c=1) -> "GradedSeries":
        return cls([0] * d + [c])

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient (-1 for the zero series)."""
        return len(self.coeffs) - 1

    def __getitem__(self, d: int):
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedSeries):
            return self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return self == GradedSeries(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "GradedSeries") -> "GradedSeries":
        m = max(len(self), len(other))
        return GradedSeries([self[i] + other[i] for i in range(m)])

    def __sub__(self, other: "GradedSeries") -> "GradedSeries":
        m = max(len(self), len(other))
        return GradedSeries([self[i] - other[i] for i in range(m)])

    def __mul__(self, other) -> "GradedSeries":
        if not isinstance(other, GradedSeries):
            return GradedSeries([c * other for c in self.coeffs])
        return mul(self, other)

    def __pow__(self, k: int) -> "GradedSeries":
        out = GradedSeries([1])
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return _clean(acc) if isinstance(acc, Fraction) else acc

    def truncate(self, d: int) -> "GradedSeries":
        """Keep coefficients of degree <= d."""
        return GradedSeries(self.coeffs[: d + 1])

    def __repr__(self) -> str:
        return f"GradedSeries({list(self.coeffs)})"

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coeffs)


def mul(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    if not a.coeffs or not b.coeffs:
        return GradedSeries()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                out[i + j] += x * y
    return GradedSeries(out)


def qint(k: int) -> GradedSeries:
    """[k] = 1 + t + ... + t^(k-1)."""
    if k < 0:
        raise ValueError("q-integer of a negative number")
    return GradedSeries([1] * k)


def exact_divide(a: GradedSeries, b: GradedSeries) -> tuple[GradedSeries, GradedSeries]:
    """Polynomial long division a = q*b + r over the rationals."""
    if not b.coeffs:
        raise ZeroDivisionError("division by the zero polynomial")
    r = [Fraction(c) for c in a.coeffs]
    db, lead = b.degree, Fraction(b.coeffs[-1])
    q = [Fraction(0)] * max(len(r) - db, 0)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] / lead
        if c:
            q[i - db] = c
            for j, y in enumerate(b.coeffs):
                r[i - db + j] -= c * y
    return GradedSeries(q), GradedSeries(r[:db])


def divide(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    q, r = exact_divide(a, b)
    if r.coeffs:
        raise NotExact(f"{a!r} is not divisible by {b!r}")
    return q


def series_divide(a: GradedSeries, b: GradedSeries, upto: int) -> GradedSeries:
    """Power-series quotient a/b through degree `upto` (needs b[0] != 0)."""
    if b[0] == 0:
        raise ZeroDivisionError("constant term of divisor is zero")
    inv0 = Fraction(1, 1) / b[0]
    q: list = []
    for d in range(upto + 1):
        s = a[d] - sum(q[i] * b[d - i] for i in range(max(0, d - b.degree), d))
        q.append(_clean(s * inv0))
    return GradedSeries(q)


def series_sqrt(a: GradedSeries, upto: int) -> GradedSeries:
    """Formal square root with constant term 1, term by term."""
    if a[0] != 1:
        raise ValueError("square root needs constant term 1")
    r = [Fraction(1)]
    for d in range(1, upto + 1):
        s = a[d] - sum(r[i] * r[d - i] for i in range(1, d))
        r.append(s / 2)
    return GradedSeries(r)


def is_symmetric(s: GradedSeries) -> bool:
    return s.coeffs == s.coeffs[::-1]


def is_positive(s: GradedSeries) -> bool:
    """All coefficients through the degree are strictly positive."""
    return bool(s.coeffs) and all(c > 0 for c in s.coeffs)


def dim_topdeg(s: GradedSeries):
    return s(1), s.degree


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> GradedSeries:
    x = sympy.Symbol("x")
    p = sympy.Poly(sympy.cyclotomic_poly(d, x), x)
    return GradedSeries([int(c) for c in reversed(p.all_coeffs())])


def cyclotomic_factor(s: GradedSeries) -> dict[int, int] | None:
    """Multiplicities {d: e} with s = prod Phi_d^e, or None if s is not such a product.

    Trial division by Phi_d for d up to a bound; phi(d) <= deg s forces d <= 2*deg^2,
    which comfortably covers every degree that occurs here.
    """
    if not s.coeffs or s[0] != 1:
        return None
    rest, out = s, {}
    deg = s.degree
    d = 1
    while rest.degree > 0 and d <= max(2, 2 * deg * deg):
        phi = cyclotomic(d)
        if phi.degree <= rest.degree:
            while True:
                q, r = exact_divide(rest, phi)
                if r.coeffs:
                    break
                out[d] = out.get(d, 0) + 1
                rest = q
        d += 1
    if rest != GradedSeries([1]):
        return None
    return out


# ---- bracket expressions -----------------------------------------------------

_BRACKET = re.compile(r"\[(\d+)\](?:\^\{?(-?\d+)\}?)?")


def parse_brackets(text: str) -> GradedSeries:
    """Evaluate strings like "[2]^{-2}[3]^2[4]"; negative exponents must divide out exactly."""
    text = text.replace(" ", "")
    num, den = GradedSeries([1]), GradedSeries([1])
    pos = 0
    for m in _BRACKET.finditer(text):
        if m.start() != pos:
            raise ValueError(f"bad bracket expression {text!r}")
        pos = m.end()
        k, e = int(m.group(1)), int(m.group(2) or 1)
        if e >= 0:
            num = num * qint(k) ** e
        else:
            den = den * qint(k) ** (-e)
    if pos != len(text):
        raise ValueError(f"bad bracket expression {text!r}")
    return divide(num, den)


def format_factors(f: dict[int, int]) -> str:
    return " ".join(f"Phi{d}^{e}" if e > 1 else f"Phi{d}" for d, e in sorted(f.items())) or "1"


def brackets_from_factors(f: dict[int, int]) -> dict[int, int] | None:
    """Rewrite prod Phi_d^e as prod [k]^b_k (b_k may be negative), using [k] = prod_{d|k, d>1} Phi_d.

    The exponents are unique; None if a Phi_1 factor is present.
    """
    if f.get(1):
        return None
    rest = {d: e for d, e in f.items() if e}
    out: dict[int, int] = {}
    for k in sorted(rest, reverse=True):
        b = rest.get(k, 0)
        if not b:
            continue
        out[k] = b
        for d in range(2, k + 1):
            if k % d == 0:
                rest[d] = rest.get(d, 0) - b
    return dict(sorted(out.items()))


def format_brackets(b: dict[int, int]) -> str:
    parts = []
    for k, e in sorted(b.items()):
        if e == 1:
            parts.append(f"[{k}]")
        elif e < 0:
            parts.append(f"[{k}]^{{{e}}}")
        else:
            parts.append(f"[{k}]^{e}")
    return "".join(parts) or "1"


def bracket_string(s: GradedSeries) -> str | None:
    """Bracket form of a cyclotomic product, e.g. "[2]^2[3]", or None."""
    f = cyclotomic_factor(s)
    if f is None:
        return None
    b = brackets_from_factors(f)
    return None if b is None else format_brackets(b)


def qprod(ks: Iterable[int]) -> GradedSeries:
    out = GradedSeries([1])
    for k in ks:
        out = out * qint(k)
    return out


def _double_factorial(m: int) -> GradedSeries:
    """[m]!! = [m][m-2]... down to [1] or [2]."""
    return qprod(range(m, 0, -2))


def _formula(name: str, n: int | None) -> GradedSeries:
    if name == "A":
        if n is None or n < 1:
            raise ValueError("A needs n >= 1")
        return qprod(range(2, n + 1))
    if name == "D":
        if n is None or n < 3:
            raise ValueError("D needs n >= 3")
        return qint(n) * qint(n - 1) * qprod(range(4, 2 * n - 3, 2))
    if name == "E6":
        return divide(qprod([4, 5, 6, 6, 8, 9]), qint(3))
    if name == "E7":
        return divide(qprod([6, 6, 8, 9, 10, 12, 14]), qint(3))
    if name == "E8":
        return divide(qprod([6, 8, 10, 12, 14, 15, 18, 20, 24]), qprod([3, 5]))
    if name == "cycle":
        if n is None or n < 3:
            raise ValueError("cycle needs n >= 3")
        return qint(n) * qprod(k * (n - k) for k in range(1, n))
    if name == "complete":
        # measured data for n <= 5 only; no closed form is known beyond that
        table = {1: "", 2: "[2]", 3: "[2]^2[3]", 4: "[2]^2[3]^2[4]^2", 5: "[4]^4[5]^2[6]^4"}
        if n not in table:
            raise ValueError("complete-graph series known only for n <= 5")
        return parse_brackets(table[n])
    if name == "Dtilde":
        if n is None or n < 3:
            raise ValueError("Dtilde needs n >= 3")
        num = _double_factorial(2 * n - 2) * qint(n) * qint(n + 1)
        den = _double_factorial(2 * n - 3) * qint(2) ** 2 * qint(n - 1) * qint(n - 2)
        a, b = (n * n - n) // 2, (n * n - n - 2) // 2
        num = num * qint(a) ** 2 * qint(b) ** 2 * qprod(i * (2 * n - i - 1) for i in range(1, n - 2))
        return divide(num, den)
    if name == "E6tilde":
        return divide(qprod([6, 9, 12, 14, 14, 16, 16, 21, 22, 30, 30]), qprod([3, 3, 4, 7, 11]))
    if name == "E7tilde":
        return divide(qprod([6, 8, 10, 12, 14, 18, 24, 27, 32, 34, 48, 49, 52, 66, 75]),
                      qprod([3, 4, 5, 7, 9, 11, 13, 17]))
    raise ValueError(f"unknown formula {name!r}")


def formula(name: str, n: int | None = None) -> GradedSeries:
    """Closed-form Hilbert series of a named family, fully expanded."""
    return _formula(name, n)


# ---- Weyl groups -------------------------------------------------------------

@dataclass(frozen=True)
class WeylData:
    kind: str  # "A", "D", "E"
    rank: int
    degrees: tuple[int, ...]
    cartan: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.degrees:
            out *= d
        return out


def _cartan_from_edges(r: int, edges: Sequence[tuple[int, int]]):
    m = [[2 if i == j else 0 for j in range(r)] for i in range(r)]
    for i, j in edges:
        m[i - 1][j - 1] = m[j - 1][i - 1] = -1
    return tuple(tuple(row) for row in m)


def weyl_data(kind: str, rank: int | None = None) -> WeylData:
    """Weyl data for a simply-laced Dynkin diagram, labeled like the graphs module."""
    from .graphs import named_graph

    if kind in ("E6", "E7", "E8"):
        rank = int(kind[1])
        kind = "E"
    if kind == "A":
        degrees = tuple(range(2, rank + 2))
        g = named_graph("A", [rank])
    elif kind == "D":
        if rank < 4:
            raise ValueError("type D needs rank >= 4")
        degrees = tuple(range(2, 2 * rank - 1, 2)) + (rank,)
        g = named_graph("D", [rank])
    elif kind == "E":
        degrees = {6: (2, 5, 6, 8, 9, 12), 7: (2, 6, 8, 10, 12, 14, 18),
                   8: (2, 8, 12, 14, 18, 20, 24, 30)}[rank]
        g = named_graph(f"E{rank}", [])
    else:
        raise ValueError(f"unknown Weyl type {kind!r}")
    return WeylData(kind, rank, tuple(sorted(degrees)), _cartan_from_edges(rank, sorted(g.edges)))


def coxeter_element(data: WeylData) -> sympy.Matrix:
    """s_1 s_2 ... s_r acting on the root lattice in the simple-root basis."""
    r = data.rank
    c = sympy.eye(r)
    for i in range(r):
        s = sympy.eye(r)
        for j in range(r):
            # s_i(alpha_j) = alpha_j - A_ij alpha_i
            s[i, j] -= data.cartan[i][j]
        c = c * s
    return c


def coxeter_charpoly(data: WeylData) -> GradedSeries:
    t = sympy.Symbol("t")
    p = coxeter_element(data).charpoly(t)
    return GradedSeries([int(c) for c in reversed(p.all_coeffs())])


def coxeter_number(data: WeylData) -> int:
    """Order of the Coxeter element, computed by repeated multiplication."""
    c = coxeter_element(data)
    p, k = c, 1
    while p != sympy.eye(data.rank):
        p, k = p * c, k + 1
    return k


def weyl_ratio(data: WeylData) -> GradedSeries:
    """prod [d_i] divided by the characteristic polynomial of a Coxeter element."""
    return divide(qprod(data.degrees), coxeter_charpoly(data))
