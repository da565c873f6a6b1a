"""Minimal coset representatives, quotient series and tensor-decomposition checks."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence, Union

from .freealg import Word, format_word, inverse, sn_degree
from .graphs import Graph, complement, named_graph
from .linalg import Echelon
from .pairing import FormQuotient, _pair_words
from .rewrite import RewriteSystem, SubalgebraBasis
from .series import GradedSeries, exact_divide, mul, series_divide, series_sqrt

DimsSource = Union[RewriteSystem, str, Callable[[Graph, int], list]]


class NotFree(ArithmeticError):
    """A quotient of Hilbert series was not a polynomial with integer coefficients."""


@dataclass
class McrResult:
    M: list[list[Word]]
    N: list[list[Word]]
    ranks: list[int]
    bound: int
    exact: bool
    stabilized: bool

    def profile(self) -> list[int]:
        return [len(m) for m in self.M]

    def to_json(self) -> dict:
        return {
            "degrees": list(range(len(self.M))),
            "ranks": self.ranks,
            "M": [[format_word(w) for w in ws] for ws in self.M],
            "N": [[format_word(w) for w in ws] for ws in self.N],
            "bound": self.bound,
            "exact": self.exact,
            "stabilized": self.stabilized,
        }


def _greedy_independent(vectors: list[tuple[Word, dict]]) -> list[Word]:
    ech = Echelon()
    return [w for w, v in vectors if v and ech.add(v) is not None]


def algorithm_mcr(G: Graph, H: Graph, e: tuple[int, int], max_deg: int,
                  n: int | None = None) -> McrResult:
    """Grow M (left factors x·p, x in G+e) and N (x·q, x in H+e) by maximal independent
    rows and columns of the pairing matrix, degree by degree."""
    n = n or max(G.n, H.n, max(e))
    e = (min(e), max(e))
    all_edges = set(combinations(range(1, n + 1), 2))
    parts = [set(G.edges), set(H.edges), {e}]
    if (parts[0] & parts[1]) or (e in parts[0]) or (e in parts[1]) \
            or (parts[0] | parts[1] | parts[2]) != all_edges:
        raise ValueError("G, H and e must partition the edges of K_n")
    gl = sorted(Graph(n, parts[0] | {e}).letters())
    hl = sorted(Graph(n, parts[1] | {e}).letters())
    M: list[list[Word]] = [[()]]
    N: list[list[Word]] = [[()]]
    ranks = [1]
    stabilized = False
    for d in range(max_deg):
        rows = sorted({(x,) + p for x in gl for p in M[-1]})
        cols = sorted({(x,) + q for x in hl for q in N[-1]})
        rb: dict = defaultdict(list)
        cb: dict = defaultdict(list)
        for w in rows:
            rb[sn_degree(w, n)].append(w)
        for w in cols:
            cb[inverse(sn_degree(w, n))].append(w)
        new_m: list[Word] = []
        new_n: list[Word] = []
        for key in sorted(rb):
            cs = cb.get(key, [])
            if not cs:
                continue
            rs = rb[key]
            mat = {(r, c): _pair_words(r, c, n) for r in rs for c in cs}
            new_m += _greedy_independent([(r, {i: mat[r, c] for i, c in enumerate(cs) if mat[r, c]})
                                          for r in rs])
            new_n += _greedy_independent([(c, {i: mat[r, c] for i, r in enumerate(rs) if mat[r, c]})
                                          for c in cs])
        if len(new_m) != len(new_n):
            raise AssertionError("row and column ranks differ")
        if not new_m:
            stabilized = True
            break
        M.append(sorted(new_m))
        N.append(sorted(new_n))
        ranks.append(len(new_m))
    return McrResult(M, N, ranks, max_deg, exact=n <= 5, stabilized=stabilized)


def mcr_for_subgraph(G: Graph, Gsup: Graph, max_deg: int, n: int | None = None) -> McrResult:
    """algorithm_mcr for G ⊂ Gsup = G + e inside K_n, with H the complement of Gsup."""
    n = n or Gsup.n
    extra = sorted(Gsup.edges - G.edges)
    if len(extra) != 1 or not G.issubgraph(Gsup):
        raise ValueError("Gsup must be G plus exactly one edge")
    H = complement(Gsup.with_n(n))
    return algorithm_mcr(G.with_n(n), H, extra[0], max_deg, n)


# ---- series-level checks ---------------------------------------------------------------

def subgraph_dims(g: Graph, source: DimsSource, max_deg: int, n: int | None = None) -> list[int]:
    """dim E_g^d for d <= max_deg from a rewrite system, the form engine ("form"), or a callable.

    Trailing entries are dropped once a zero is reached (finite-dimensional case).
    """
    if isinstance(source, RewriteSystem):
        dims = SubalgebraBasis(g, source).run(max_deg)
    elif source == "form":
        dims = FormQuotient(g, n or g.n).run(max_deg)
    elif callable(source):
        dims = list(source(g, max_deg))
    else:
        raise ValueError(f"unknown dims source {source!r}")
    dims = list(dims[: max_deg + 1])
    if dims and dims[-1] == 0:
        while len(dims) > 1 and dims[-1] == 0:
            dims.pop()
        return dims + [0]
    return dims


def _as_series(dims: list[int]) -> tuple[GradedSeries, bool]:
    """Series plus whether it is complete (the last computed dimension was 0)."""
    complete = bool(dims) and dims[-1] == 0
    return GradedSeries(dims), complete


def quotient_series(H_sub: Graph, G_sup: Graph, source: DimsSource, max_deg: int,
                    n: int | None = None) -> GradedSeries:
    """H_{G_sup} / H_{H_sub}; exact polynomial division when both are complete, else a
    truncated power-series quotient whose coefficients must be integers."""
    if not H_sub.issubgraph(G_sup):
        raise ValueError("H_sub must be a subgraph of G_sup")
    n = n or max(H_sub.n, G_sup.n)
    a, ca = _as_series(subgraph_dims(G_sup.with_n(n), source, max_deg, n))
    b, cb = _as_series(subgraph_dims(H_sub.with_n(n), source, max_deg, n))
    if ca and cb:
        q, r = exact_divide(a, b)
        if r.coeffs:
            raise NotFree(f"{a} is not divisible by {b}")
    else:
        q = series_divide(a, b, max_deg)
    if any(isinstance(c, Fraction) for c in q.coeffs):
        raise NotFree(f"non-integral quotient {q}")
    return q


@dataclass
class TensorReport:
    ok: bool
    product: list
    ambient: list
    first_mismatch: int | None
    notes: list = field(default_factory=list)


def tensor_check(G1: Graph, G2: Graph, source: DimsSource, max_deg: int,
                 n: int | None = None) -> TensorReport:
    """Compare H_{G1} * H_{G2} with H_{K_n} coefficientwise through max_deg."""
    n = n or max(G1.n, G2.n)
    if G1.edges & G2.edges or (G1.edges | G2.edges) != set(combinations(range(1, n + 1), 2)):
        raise ValueError("G1 and G2 must be complementary in K_n")
    d1 = subgraph_dims(G1.with_n(n), source, max_deg, n)
    d2 = subgraph_dims(G2.with_n(n), source, max_deg, n)
    dk = subgraph_dims(named_graph("complete", [n]), source, max_deg, n)
    prod = mul(GradedSeries(d1), GradedSeries(d2))
    amb = GradedSeries(dk)
    pl = [prod[d] for d in range(max_deg + 1)]
    al = [amb[d] for d in range(max_deg + 1)]
    bad = next((d for d in range(max_deg + 1) if pl[d] != al[d]), None)
    return TensorReport(bad is None, pl, al, bad)


def twin_obstruction(ambient_prefix: Sequence[int]) -> tuple[GradedSeries, int | None]:
    """If E_n = E_G1 ⊗ E_G2 with H_G2 = (1+t) H_G1, then H_G1 = sqrt(H_n / (1+t)).

    Returns that formal square root (through the length of the prefix) and the first
    degree with a non-integer coefficient, which refutes the decomposition.
    """
    top = len(ambient_prefix) - 1
    h = GradedSeries(ambient_prefix)
    q = series_divide(h, GradedSeries([1, 1]), top)
    root = series_sqrt(q, top)
    bad = next((d for d, c in enumerate(root.coeffs)
                if isinstance(c, Fraction) and c.denominator != 1), None)
    return root, bad


# the two graphs G1 of the six-vertex counterexample (their complements are G2)
COUNTER_G1 = (
    Graph(6, [(1, 2), (2, 3), (3, 5), (5, 6), (2, 4), (4, 5), (2, 5)]),
    Graph(6, [(2, 1), (1, 5), (5, 4), (4, 3), (3, 2), (2, 6), (6, 5)]),
)

# published Hilbert-series coefficients of E_6 through t^10
H6_PREFIX = (1, 15, 125, 765, 3831, 16605, 64432, 228855, 755777, 2347365, 6916867)
