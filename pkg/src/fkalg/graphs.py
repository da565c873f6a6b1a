"""Graphs on vertices 1..n, named families, graph6 interchange and the small-graph catalog."""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .freealg import letter
from .series import GradedSeries, parse_brackets


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset  # of (i, j) with i < j

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        canon = set()
        for i, j in edges:
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if min(i, j) < 1 or max(i, j) > n:
                raise ValueError(f"edge {i}-{j} outside 1..{n}")
            canon.add((min(i, j), max(i, j)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(canon))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def letters(self) -> list[int]:
        """Generator codes x_ij of the edges, in the global letter order."""
        return sorted(letter(i, j) for i, j in self.edges)

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edges)

    def neighbors(self, v: int) -> list[int]:
        return sorted(j if i == v else i for i, j in self.edges if v in (i, j))

    def with_n(self, n: int) -> "Graph":
        return Graph(n, self.edges)

    def union(self, other: "Graph") -> "Graph":
        return Graph(max(self.n, other.n), self.edges | other.edges)

    def issubgraph(self, other: "Graph") -> bool:
        return self.edges <= other.edges

    def to_edge_list(self) -> str:
        return ",".join(f"{i}-{j}" for i, j in self.sorted_edges())

    def __str__(self) -> str:
        return f"Graph(n={self.n}, {self.to_edge_list() or 'no edges'})"


@dataclass(frozen=True)
class OrientedGraph:
    underlying: Graph
    direction: tuple  # (tail, head) pairs; edge order is traversal order

    def arc_of(self, e: tuple[int, int]) -> tuple[int, int]:
        e = (min(e), max(e))
        for t, h in self.direction:
            if (min(t, h), max(t, h)) == e:
                return t, h
        raise KeyError(f"{e} is not an edge")


def complement(g: Graph) -> Graph:
    return Graph(g.n, [e for e in combinations(range(1, g.n + 1), 2) if e not in g.edges])


# ---- text formats --------------------------------------------------------------

_EDGE = re.compile(r"^(\d+)-(\d+)$")


def parse_graph(text: str, n: int | None = None) -> Graph:
    """Edge list "1-2,2-3" or graph6 (anything not made of digits, '-' and ',')."""
    text = text.strip()
    if re.fullmatch(r"[\d,\-\s]*", text):
        edges = []
        body = re.sub(r"\s", "", text)
        for tok in body.split(",") if body else []:
            m = _EDGE.match(tok)
            if not m:
                raise ValueError(f"malformed edge token {tok!r}")
            i, j = int(m.group(1)), int(m.group(2))
            if i < 1 or j < 1:
                raise ValueError(f"endpoint < 1 in {tok!r}")
            if i == j:
                raise ValueError(f"loop edge {tok!r}")
            edges.append((i, j))
        top = max((max(e) for e in edges), default=0)
        return Graph(max(top, n or 0), edges)
    return from_graph6(text)


def from_graph6(text: str) -> Graph:
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    try:
        h = nx.from_graph6_bytes(text.encode("ascii"))
    except Exception as exc:  # networkx raises several types here
        raise ValueError(f"malformed graph6 string {text!r}: {exc}") from exc
    return Graph(h.number_of_nodes(), [(i + 1, j + 1) for i, j in h.edges()])


def to_graph6(g: Graph) -> str:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from((i - 1, j - 1) for i, j in g.edges)
    return nx.to_graph6_bytes(h, header=False).decode("ascii").strip()


# ---- named families ----------------------------------------------------------------

def _path(vs: Sequence[int]) -> list[tuple[int, int]]:
    return list(zip(vs, vs[1:]))


def named_graph(name: str, params: Sequence[int] = ()) -> Graph:
    """Named families with fixed labelings.

    A n      path 1-2-...-n
    D n      leaves 1,2 on the center 3, then the chain 3-4-...-n
    E6/7/8   chain 1-...-(n-1) with vertex n attached to 3
    cycle n  1-2-...-n-1; edge k (0 <= k < n) joins k+1 and k+2 (mod n)
    star n   K_{1,n-1} centered at 1
    complete n, complete_multipartite p1 p2 ... (consecutive blocks)
    Dtilde n (n+1 vertices) leaves 1,2 on 3, chain 3..n-1, leaves n,n+1 on n-1;
             Dtilde 3 is the 4-cycle
    E6tilde  center 1 with arms 1-2-3, 1-4-5, 1-6-7
    E7tilde  chain 1-...-7 with vertex 8 attached to 4
    """
    p = list(params)

    def need(k: int, lo: int) -> int:
        if len(p) != k or any(x < lo for x in p):
            raise ValueError(f"{name} needs {k} parameter(s) >= {lo}, got {p}")
        return p[0] if p else 0

    if name == "A":
        n = need(1, 1)
        return Graph(n, _path(range(1, n + 1)))
    if name == "D":
        n = need(1, 3)
        return Graph(n, [(1, 3), (2, 3)] + _path(range(3, n + 1)))
    if name in ("E6", "E7", "E8"):
        if p and p != [int(name[1])]:
            raise ValueError(f"{name} takes no parameter")
        n = int(name[1])
        return Graph(n, _path(range(1, n)) + [(3, n)])
    if name == "cycle":
        n = need(1, 3)
        return Graph(n, _path(list(range(1, n + 1)) + [1]))
    if name == "star":
        n = need(1, 2)
        return Graph(n, [(1, v) for v in range(2, n + 1)])
    if name == "complete":
        n = need(1, 1)
        return Graph(n, combinations(range(1, n + 1), 2))
    if name == "complete_multipartite":
        if not p or any(x < 1 for x in p):
            raise ValueError("complete_multipartite needs positive part sizes")
        blocks, start = [], 1
        for s in p:
            blocks.append(range(start, start + s))
            start += s
        edges = [(i, j) for a, b in combinations(blocks, 2) for i in a for j in b]
        return Graph(start - 1, edges)
    if name == "Dtilde":
        n = need(1, 3)
        if n == 3:
            return named_graph("cycle", [4])
        return Graph(n + 1, [(1, 3), (2, 3)] + _path(range(3, n)) + [(n - 1, n), (n - 1, n + 1)])
    if name == "E6tilde":
        need(0, 0)
        return Graph(7, [(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)])
    if name == "E7tilde":
        need(0, 0)
        return Graph(8, _path(range(1, 8)) + [(4, 8)])
    raise ValueError(f"unknown graph family {name!r}")


def cycle_edge(n: int, k: int) -> tuple[int, int]:
    """Endpoints (tail, head) of cycle edge k, oriented along the cycle."""
    k %= n
    return k + 1, (k + 1) % n + 1


def parse_graph_spec(spec: str) -> Graph:
    """CLI form: "name:p1,p2", "name" (E6 etc.) or an edge list / graph6 string."""
    head, _, rest = spec.partition(":")
    families = {"A", "D", "E6", "E7", "E8", "cycle", "star", "complete",
                "complete_multipartite", "Dtilde", "E6tilde", "E7tilde"}
    if head in families:
        params = [int(x) for x in rest.split(",") if x] if rest else []
        return named_graph(head, params)
    if head in CATALOG_IDS:
        return catalog_entry(head).graph
    return parse_graph(spec)


# ---- orientation for the nil-Coxeter map ------------------------------------------------

def orient_for_theta(g: Graph) -> OrientedGraph:
    """Orient each path/cycle component head to tail, starting from its smallest endpoint.

    Cycles start at their smallest vertex and first step to its smaller neighbour.
    """
    for v in range(1, g.n + 1):
        if g.degree(v) >= 3:
            raise ValueError(f"vertex {v} has degree {g.degree(v)}; need paths and cycles")
    seen: set[int] = set()
    arcs: list[tuple[int, int]] = []
    comps = []
    for v in range(1, g.n + 1):
        if v in seen or g.degree(v) == 0:
            continue
        comp = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(comp)
    for comp in comps:
        ends = sorted(u for u in comp if g.degree(u) == 1)
        start = ends[0] if ends else min(comp)
        prev, cur = None, start
        while True:
            nxt = [w for w in g.neighbors(cur) if w != prev]
            if prev is None:
                nxt = nxt[:1]
            if not nxt:
                break
            w = nxt[0]
            arcs.append((cur, w))
            prev, cur = cur, w
            if cur == start:
                break
    return OrientedGraph(g, tuple(arcs))


# ---- appendix catalog ---------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    id: str
    graph: Graph
    series: GradedSeries
    top_degree: int
    dimension: int
    brackets: str


def _complement_edges(n: int, missing: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    miss = {(min(e), max(e)) for e in missing}
    return [e for e in combinations(range(1, n + 1), 2) if e not in miss]


_DIAMOND = [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)]

# (id, n, edges, Hilbert series, top degree, dimension)
_ROWS = [
    ("K2", 2, [(1, 2)], "[2]", 1, 2),
    ("P3", 3, _path([1, 2, 3]), "[2][3]", 3, 6),
    ("K3", 3, [(1, 2), (1, 3), (2, 3)], "[2]^2[3]", 4, 12),
    ("P4", 4, _path([1, 2, 3, 4]), "[2][3][4]", 6, 24),
    ("K1_3", 4, [(1, 2), (1, 3), (1, 4)], "[3][4]^2", 8, 48),
    ("paw", 4, [(1, 2), (1, 3), (2, 3), (3, 4)], "[2][3][4]^2", 9, 96),
    ("C4", 4, _path([1, 2, 3, 4, 1]), "[3]^2[4]^2", 10, 144),
    ("diamond", 4, _DIAMOND, "[2][3]^2[4]^2", 11, 288),
    ("K4", 4, list(combinations(range(1, 5), 2)), "[2]^2[3]^2[4]^2", 12, 576),
    ("P5", 5, _path([1, 2, 3, 4, 5]), "[2][3][4][5]", 10, 120),
    ("D5", 5, [(1, 3), (2, 3), (3, 4), (4, 5)], "[4]^2[5][6]", 15, 480),
    ("K1_4", 5, [(1, 2), (1, 3), (1, 4), (1, 5)], "[2]^{-2}[3]^{-2}[4]^2[5]^2[6]^4", 28, 14400),
    ("triangle_path", 5, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5)], "[2][4]^2[5][6]", 16, 960),
    ("bull", 5, [(1, 2), (1, 3), (2, 3), (1, 4), (2, 5)], "[4]^2[5][6]^2", 20, 2880),
    ("C5", 5, _path([1, 2, 3, 4, 5, 1]), "[4]^2[5][6]^2", 20, 2880),
    ("C4_pendant", 5, _path([1, 2, 3, 4, 1]) + [(1, 5)], "[2]^{-1}[4]^2[5][6]^3", 24, 8640),
    ("cricket", 5, [(1, 2), (1, 3), (2, 3), (1, 4), (1, 5)],
     "[2]^{-1}[3]^{-2}[4]^2[5]^2[6]^4", 29, 28800),
    ("kite", 5, _DIAMOND + [(2, 5)], "[4]^2[5][6]^3", 25, 17280),
    ("bowtie", 5, [(1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (4, 5)],
     "[3]^{-2}[4]^2[5]^2[6]^4", 30, 57600),
    ("house", 5, _path([1, 2, 3, 4, 5, 1]) + [(1, 4)], "[2]^{-1}[3]^{-1}[4]^3[5][6]^4", 30, 69120),
    ("dart", 5, _DIAMOND + [(1, 5)], "[2]^{-1}[3]^{-1}[4]^2[5]^2[6]^4", 31, 86400),
    ("K2_3", 5, [(i, j) for i in (1, 2) for j in (3, 4, 5)],
     "[2]^{-3}[3]^{-1}[4]^4[5]^2[6]^4", 35, 345600),
    ("K4_pendant", 5, list(combinations(range(1, 5), 2)) + [(4, 5)],
     "[3]^{-1}[4]^2[5]^2[6]^4", 32, 172800),
    ("gem", 5, [(1, 2), (1, 3), (1, 4), (1, 5)] + _path([2, 3, 4, 5]),
     "[2]^{-1}[3]^{-1}[4]^3[5]^2[6]^4", 34, 345600),
    ("co_P3_K2", 5, _complement_edges(5, [(1, 2), (3, 4), (4, 5)]),
     "[2]^{-2}[3]^{-1}[4]^4[5]^2[6]^4", 36, 691200),
    ("K1_1_3", 5, [(1, 2)] + [(i, j) for i in (1, 2) for j in (3, 4, 5)],
     "[2]^{-2}[3]^{-1}[4]^4[5]^2[6]^4", 36, 691200),
    ("co_P3", 5, _complement_edges(5, [(1, 2), (2, 3)]),
     "[2]^{-1}[3]^{-1}[4]^4[5]^2[6]^4", 37, 1382400),
    ("W4", 5, _complement_edges(5, [(1, 3), (2, 4)]), "[2]^{-2}[4]^4[5]^2[6]^4", 38, 2073600),
    ("K5_minus_e", 5, _complement_edges(5, [(1, 2)]), "[2]^{-1}[4]^4[5]^2[6]^4", 39, 4147200),
    ("K5", 5, list(combinations(range(1, 6), 2)), "[4]^4[5]^2[6]^4", 40, 8294400),
]

CATALOG_IDS = tuple(r[0] for r in _ROWS)


def appendix_catalog() -> list[CatalogEntry]:
    return [CatalogEntry(i, Graph(n, e), parse_brackets(b), top, dim, b)
            for i, n, e, b, top, dim in _ROWS]


def catalog_entry(key: str) -> CatalogEntry:
    for e in appendix_catalog():
        if e.id == key:
            return e
    raise KeyError(key)
