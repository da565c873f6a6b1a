"""Truncated reduced Gröbner bases for the defining ideal of E_n, normal forms and dimensions.

Completion runs degree by degree.  At degree d every obstruction (overlap of two
leading words) of total length d is reduced with the rules of degree < d; the
results are row-reduced with pivot = largest word, and each pivot row becomes a
rule.  Because all relations are homogeneous, the rules of degree <= D are
exactly the degree <= D part of the full reduced Gröbner basis.
"""

from __future__ import annotations

import hashlib
import os
from collections import defaultdict
from itertools import combinations
from pathlib import Path
from typing import Sequence

from .freealg import (Element, Word, add_into, ends, format_element, letter,
                      normalize_pair, parse_element, sn_degree)
from .graphs import Graph
from .linalg import Echelon, ResourceCapExceeded

FORMAT_VERSION = 1


class TruncationError(ValueError):
    """A computation needed a degree above the system's truncation bound."""


def quadratic_relations(n: int) -> list[Element]:
    """Squares, disjoint commutators and three-term relations of E_n."""
    if n < 2:
        raise ValueError("E_n needs n >= 2")
    rels: list[Element] = []
    seen: set = set()

    def push(terms: dict) -> None:
        e = Element(n, terms)
        if not e:
            return
        # duplicates under normalization, up to sign
        key = frozenset(e.terms.items())
        neg = frozenset((w, -c) for w, c in e.terms.items())
        if key in seen or neg in seen:
            return
        seen.add(key)
        rels.append(e)

    gens = [letter(i, j) for i, j in combinations(range(1, n + 1), 2)]
    for g in gens:
        push({(g, g): 1})
    for g, h in combinations(gens, 2):
        if not set(ends(g)) & set(ends(h)):
            push({(g, h): 1, (h, g): -1})
    for i, j, k in combinations(range(1, n + 1), 3):
        for a, b, c in ((i, j, k), (i, k, j)):
            terms: dict = {}
            for p, q in (((a, b), (b, c)), ((b, c), (c, a)), ((c, a), (a, b))):
                s1, g1 = normalize_pair(*p)
                s2, g2 = normalize_pair(*q)
                add_into(terms, {(g1, g2): s1 * s2})
            push(terms)
    return rels


class RewriteSystem:
    """Reduced rewrite rules (leading word -> tail) valid through max_degree."""

    def __init__(self, n: int, max_degree: int):
        self.n = n
        self.max_degree = max_degree
        self.rules: dict[Word, dict] = {}
        self.by_degree: dict[int, list[Word]] = defaultdict(list)
        self.normal_words: list[list[Word]] = [[()]]
        self.letters = [letter(i, j) for i, j in combinations(range(1, n + 1), 2)]
        self._memo: list[dict] = []
        self.completed_degree = 0

    # ---- reduction ---------------------------------------------------------

    def _memo_for(self, d: int) -> dict:
        while len(self._memo) <= d:
            self._memo.append({})
        return self._memo[d]

    def reduce_word(self, w: Word) -> dict:
        """Normal form of a single word as {word: coeff} (shared, do not mutate)."""
        d = len(w)
        if d > self.max_degree:
            raise TruncationError(f"degree {d} exceeds truncation bound {self.max_degree}")
        memo = self._memo_for(d)
        hit = memo.get(w)
        if hit is not None:
            return hit
        if d <= 1:
            res = {w: 1}
        elif w in self.rules:
            res = self.rules[w]
        else:
            head = self.reduce_word(w[:-1])
            if len(head) == 1 and head.get(w[:-1]) == 1:
                tail = self.reduce_word(w[1:])
                if len(tail) == 1 and tail.get(w[1:]) == 1:
                    res = {w: 1}
                else:
                    res = {}
                    x = (w[0],)
                    for v, c in tail.items():
                        add_into(res, self.reduce_word(x + v), c)
            else:
                res = {}
                y = (w[-1],)
                for v, c in head.items():
                    add_into(res, self.reduce_word(v + y), c)
        memo[w] = res
        return res

    def reduce_terms(self, terms: dict) -> dict:
        acc: dict = {}
        for w, c in terms.items():
            add_into(acc, self.reduce_word(w), c)
        return acc

    def normal_form(self, e: Element) -> Element:
        if e.n != self.n:
            raise ValueError(f"element lives in E_{e.n}, system is for E_{self.n}")
        return Element(self.n, self.reduce_terms(e.terms))

    def is_zero(self, e: Element) -> bool:
        return not self.normal_form(e).terms

    def is_normal(self, w: Word) -> bool:
        r = self.reduce_word(tuple(w))
        return len(r) == 1 and r.get(tuple(w)) == 1

    # ---- dimensions ----------------------------------------------------------

    def graded_dim(self, d: int) -> int:
        if d >= len(self.normal_words):
            if d <= self.completed_degree:
                raise ValueError("normal words were not enumerated for this system")
            raise TruncationError(f"degree {d} beyond truncation bound {self.completed_degree}")
        return len(self.normal_words[d])

    def dims(self) -> list[int]:
        return [len(ws) for ws in self.normal_words]

    def rule_count(self) -> int:
        return len(self.rules)

    # ---- serialization ------------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"fkalg-rewrite {FORMAT_VERSION} n={self.n} max_degree={self.max_degree}"]
        for lw in sorted(self.rules, key=lambda w: (len(w), w)):
            lines.append(format_element(Element(self.n, {lw: 1})) + " => "
                         + format_element(Element(self.n, self.rules[lw])))
        body = "\n".join(lines) + "\n"
        digest = hashlib.sha256(body.encode()).hexdigest()
        return body + f"sha256 {digest}\n"

    @classmethod
    def from_text(cls, text: str, enumerate_normal: bool = True) -> "RewriteSystem":
        body, _, last = text.rstrip("\n").rpartition("\n")
        body += "\n"
        if not last.startswith("sha256 ") or hashlib.sha256(body.encode()).hexdigest() != last[7:]:
            raise ValueError("rewrite cache checksum mismatch")
        lines = body.splitlines()
        head = lines[0].split()
        if head[0] != "fkalg-rewrite" or int(head[1]) != FORMAT_VERSION:
            raise ValueError("unsupported rewrite cache format")
        n = int(head[2].split("=")[1])
        md = int(head[3].split("=")[1])
        rs = cls(n, md)
        for line in lines[1:]:
            lhs, rhs = line.split(" => ")
            (lw,) = parse_element(lhs, n).terms
            rs.rules[lw] = {w: c for w, c in parse_element(rhs, n).terms.items()}
            rs.by_degree[len(lw)].append(lw)
        if enumerate_normal:
            rs._rebuild_normal_words()
        else:
            rs.normal_words.append([(x,) for x in rs.letters if (x,) not in rs.rules])
            rs.completed_degree = md
        return rs

    def _rebuild_normal_words(self) -> None:
        self.normal_words = [[()]]
        for d in range(1, self.max_degree + 1):
            self.normal_words.append(self._candidates(d, exclude=self.rules))
        self.completed_degree = self.max_degree

    def _candidates(self, d: int, exclude=()) -> list[Word]:
        """Words of degree d all of whose proper subwords are normal."""
        if d == 1:
            return [(x,) for x in self.letters if (x,) not in exclude]
        prev = self.normal_words[d - 1]
        prev_set = set(prev)
        out = []
        for u in prev:
            for x in self.letters:
                w = u + (x,)
                if w[1:] in prev_set and w not in exclude:
                    out.append(w)
        return out


def _overlaps(rs: RewriteSystem, d: int):
    """Pairs of rules whose leading words overlap in a word of length exactly d."""
    by_prefix: dict[Word, list[Word]] = defaultdict(list)
    for lw in rs.rules:
        for k in range(1, len(lw)):
            by_prefix[lw[:k]].append(lw)
    for u in rs.rules:
        lu = len(u)
        for k in range(1, lu):
            s = u[k:]
            for v in by_prefix.get(s, ()):
                if lu + len(v) - len(s) == d:
                    yield u, v, k


def build_rewrite_system(n: int, max_degree: int, max_rules: int | None = None,
                         extra_relations: Sequence[Element] = (),
                         progress=None, enumerate_normal: bool = True) -> RewriteSystem:
    """Complete the ideal of E_n (plus optional homogeneous extra relations) up to max_degree.

    With enumerate_normal=False only the rules are kept; normal forms and subalgebra
    dimensions still work, but graded_dim of E_n itself is unavailable.
    """
    if n < 2 or max_degree < 2:
        raise ValueError("need n >= 2 and max_degree >= 2")
    rs = RewriteSystem(n, max_degree)
    rs.normal_words.append([(x,) for x in rs.letters])
    rs.completed_degree = 1
    gens_by_deg: dict[int, list[Element]] = defaultdict(list)
    for r in list(quadratic_relations(n)) + list(extra_relations):
        if r.n != n or len(r.degrees()) != 1:
            raise ValueError("relations must be homogeneous elements of E_n")
        gens_by_deg[next(iter(r.degrees()))].append(r)
    for d in range(2, max_degree + 1):
        ech = Echelon()
        for r in gens_by_deg.get(d, ()):
            ech.add(rs.reduce_terms(r.terms))
        for u, v, k in _overlaps(rs, d):
            # u = p s, v = s q with s = u[k:]
            q = v[len(u) - k:]
            p = u[:k]
            s_poly: dict = {}
            for w, c in rs.rules[u].items():
                add_into(s_poly, rs.reduce_word(w + q), c)
            for w, c in rs.rules[v].items():
                add_into(s_poly, rs.reduce_word(p + w), -c)
            if s_poly:
                ech.add(s_poly)
        # degree-d memo entries were computed without degree-d rules
        for m in rs._memo[d:]:
            m.clear()
        new_rules = ech.fully_reduced()
        for lw, row in new_rules.items():
            rs.rules[lw] = {w: -c for w, c in row.items() if w != lw}
            rs.by_degree[d].append(lw)
        if max_rules is not None and len(rs.rules) > max_rules:
            raise ResourceCapExceeded(f"rule cap {max_rules} exceeded at degree {d}")
        if enumerate_normal:
            rs.normal_words.append(rs._candidates(d, exclude=new_rules))
        rs.completed_degree = d
        if progress:
            progress(d, len(rs.normal_words[d]) if enumerate_normal else None, len(new_rules))
    return rs


def confluence_audit(rs: RewriteSystem) -> list[tuple[Word, Word]]:
    """Overlaps up to the bound whose two reductions differ (empty list = confluent)."""
    bad = []
    for d in range(3, rs.max_degree + 1):
        for u, v, k in _overlaps(rs, d):
            q, p = v[len(u) - k:], u[:k]
            a = rs.reduce_terms({w + q: c for w, c in rs.rules[u].items()})
            b = rs.reduce_terms({p + w: c for w, c in rs.rules[v].items()})
            if a != b:
                bad.append((u, v))
    return bad


# ---- cache ---------------------------------------------------------------------------

def cached_rewrite_system(n: int, max_degree: int, cache_dir: str | os.PathLike | None = None,
                          **kw) -> RewriteSystem:
    """Load (n, max_degree) from cache_dir when present and intact, else build and store."""
    if cache_dir is None:
        return build_rewrite_system(n, max_degree, **kw)
    path = Path(cache_dir) / f"rewrite-v{FORMAT_VERSION}-n{n}-d{max_degree}.txt"
    if path.exists():
        try:
            return RewriteSystem.from_text(path.read_text(), kw.get("enumerate_normal", True))
        except ValueError:
            pass  # corrupt entry: rebuild below
    rs = build_rewrite_system(n, max_degree, **kw)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(rs.to_text())
    tmp.replace(path)
    return rs


# ---- module-level conveniences ---------------------------------------------------------------

def normal_form(e: Element, rs: RewriteSystem) -> Element:
    return rs.normal_form(e)


def is_zero(e: Element, rs: RewriteSystem) -> bool:
    return rs.is_zero(e)


def graded_dim_full(n: int, d: int, rs: RewriteSystem) -> int:
    if n != rs.n:
        raise ValueError("system built for a different n")
    return rs.graded_dim(d)


class SubalgebraBasis:
    """Monomial bases of E_G^d computed from normal forms, one degree at a time.

    Candidates x·w (x an edge, w a basis word of degree d-1) are tested in the
    global word order; grading by S_n-degree splits the elimination into blocks.
    """

    def __init__(self, g: Graph, rs: RewriteSystem, row_cap: int | None = None):
        if g.n > rs.n:
            raise ValueError("graph has more vertices than the rewrite system")
        self.g, self.rs = g, rs
        self.letters = g.letters()
        self.words: list[list[Word]] = [[()]]
        self.row_cap = row_cap

    def extend(self, target: int | None = None) -> int:
        d = len(self.words)
        if d > self.rs.max_degree:
            raise TruncationError(f"degree {d} exceeds truncation bound {self.rs.max_degree}")
        n = self.rs.n
        cands = sorted((x,) + w for w in self.words[-1] for x in self.letters)
        blocks: dict = defaultdict(list)
        for w in cands:
            blocks[sn_degree(w, n)].append(w)
        chosen: list[Word] = []
        for perm in sorted(blocks):
            ech = Echelon()
            for w in blocks[perm]:
                nf = self.rs.reduce_word(w)
                if nf and ech.add(nf) is not None:
                    chosen.append(w)
                    if self.row_cap is not None and len(chosen) > self.row_cap:
                        raise ResourceCapExceeded(f"row cap {self.row_cap} at degree {d}")
                    if target is not None and len(chosen) == target:
                        break
            if target is not None and len(chosen) == target:
                break
        chosen.sort()
        self.words.append(chosen)
        return len(chosen)

    def run(self, max_degree: int, targets: Sequence[int] | None = None) -> list[int]:
        while len(self.words) <= max_degree:
            d = len(self.words)
            t = targets[d] if targets is not None and d < len(targets) else None
            if self.extend(t) == 0:
                break
        return [len(w) for w in self.words]


def graded_dims_sub(g: Graph, rs: RewriteSystem, max_degree: int | None = None) -> list[int]:
    """dim E_G^d for d = 0..max_degree (stops after the first zero)."""
    sb = SubalgebraBasis(g, rs)
    return sb.run(rs.max_degree if max_degree is None else max_degree)


def graded_dim_sub(g: Graph, d: int, rs: RewriteSystem) -> int:
    dims = graded_dims_sub(g, rs, d)
    return dims[d] if d < len(dims) else 0


def monomial_basis_sub(g: Graph, rs: RewriteSystem) -> tuple[list[list[Word]], Word]:
    """Per-degree monomial bases and the lexicographically minimal top word w0."""
    sb = SubalgebraBasis(g, rs)
    while True:
        if len(sb.words) > rs.max_degree:
            raise TruncationError("not finite-dimensional within bound")
        if sb.extend() == 0:
            break
    sb.words.pop()
    top = len(sb.words) - 1
    if len(sb.words[top]) != 1:
        raise ValueError(f"top degree {top} has dimension {len(sb.words[top])}")
    return sb.words, lex_min_top_word(g, rs, top)


def lex_min_top_word(g: Graph, rs: RewriteSystem, top: int,
                     letters: Sequence[int] | None = None) -> Word:
    """DFS over prefixes in letter order, pruning prefixes whose normal form is 0.

    `letters` overrides the alphabet order (default: the global letter order).
    """
    if letters is None:
        letters = g.letters()
    elif sorted(letters) != sorted(g.letters()):
        raise ValueError("letter order must list exactly the edges of g")

    def dfs(prefix: Word):
        if len(prefix) == top:
            return prefix
        for x in letters:
            w = prefix + (x,)
            if rs.reduce_word(w):
                got = dfs(w)
                if got is not None:
                    return got
        return None

    w0 = dfs(())
    if w0 is None:
        raise ValueError("no nonzero word of the top degree")
    return w0


def descent_left(w: Element, g: Graph, rs: RewriteSystem) -> Graph:
    """Edges e of g with x_e · w = 0."""
    out = []
    for i, j in g.sorted_edges():
        x = Element.gen(rs.n, i, j)
        if rs.is_zero(x * w):
            out.append((i, j))
    return Graph(g.n, out)


def descent_right(w: Element, g: Graph, rs: RewriteSystem) -> Graph:
    out = []
    for i, j in g.sorted_edges():
        if rs.is_zero(w * Element.gen(rs.n, i, j)):
            out.append((i, j))
    return Graph(g.n, out)
