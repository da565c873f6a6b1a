"""Leibniz operators Δ_ab and ∇_ab, the bilinear form, the braided coproduct and Gram ranks.

Everything acts on free-algebra representatives; the form is well defined on the
quotient, so any representative gives the same answer.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .freealg import (BASE, Element, Word, add_into, compose, ends, identity_perm,
                      inverse, relabel_word, sn_degree, transposition)
from .graphs import Graph
from .linalg import ResourceCapExceeded, TrackedEchelon, rank_fraction_free


def letter_delta(code: int, a: int, b: int) -> int:
    """Δ_ab(x_ij): +1 if (i,j) = (a,b), -1 if (i,j) = (b,a), else 0."""
    i, j = divmod(code, BASE)
    if i == a and j == b:
        return 1
    if i == b and j == a:
        return -1
    return 0


def delta_word(a: int, b: int, w: Word, n: int) -> dict:
    """Δ_ab(w) = sum_k Δ_ab(w_k) σ_ab(w_1..w_{k-1}) w_{k+1}..w_d."""
    out: dict = {}
    swap = transposition(n, a, b)
    for k, code in enumerate(w):
        c = letter_delta(code, a, b)
        if c:
            s, left = relabel_word(swap, w[:k])
            v = left + w[k + 1:]
            x = out.get(v, 0) + c * s
            if x:
                out[v] = x
            else:
                out.pop(v)
    return out


def nabla_word(w: Word, a: int, b: int, n: int) -> dict:
    """(w)∇_ab = sum_k (w_k)∇_{σ_R(a) σ_R(b)} w_1..w_{k-1} w_{k+1}..w_d, R = w_{k+1}..w_d."""
    out: dict = {}
    # σ_R for R the suffix after position k, built right to left
    sig = list(range(1, n + 1))
    for k in range(len(w) - 1, -1, -1):
        c = letter_delta(w[k], sig[a - 1], sig[b - 1])
        if c:
            v = w[:k] + w[k + 1:]
            x = out.get(v, 0) + c
            if x:
                out[v] = x
            else:
                out.pop(v)
        i, j = ends(w[k])
        # σ_{w_k} ∘ σ_R: relabel the values i <-> j
        sig = [j if x == i else i if x == j else x for x in sig]
    return out


def _check_pair(a: int, b: int) -> None:
    if a == b:
        raise ValueError("Δ_aa / ∇_aa is undefined")


def delta_op(a: int, b: int, e: Element) -> Element:
    _check_pair(a, b)
    acc: dict = {}
    for w, c in e.terms.items():
        add_into(acc, delta_word(a, b, w, e.n), c)
    return Element(e.n, acc)


def nabla_op(e: Element, a: int, b: int) -> Element:
    _check_pair(a, b)
    acc: dict = {}
    for w, c in e.terms.items():
        add_into(acc, nabla_word(w, a, b, e.n), c)
    return Element(e.n, acc)


def delta_by_word(p: Word, e: Element) -> Element:
    """Δ_P = Δ_{p1}∘…∘Δ_{pd} (the last letter acts first)."""
    for code in reversed(p):
        e = delta_op(*ends(code), e)
    return e


def nabla_by_word(e: Element, p: Word) -> Element:
    """(e)∇_P = ((e)∇_{p1})∇_{p2}…; satisfies ⟨P1 P2, Q⟩ = ⟨P2, (Q)∇_{P1}⟩."""
    for code in p:
        e = nabla_op(e, *ends(code))
    return e


@lru_cache(maxsize=1 << 20)
def _pair_words(p: Word, q: Word, n: int) -> int:
    if not p:
        return 1
    a, b = ends(p[-1])
    total = 0
    for v, c in delta_word(a, b, q, n).items():
        total += c * _pair_words(p[:-1], v, n)
    return total


def pair_words(p: Word, q: Word, n: int) -> int:
    if len(p) != len(q):
        return 0
    if compose(sn_degree(p, n), sn_degree(q, n)) != identity_perm(n):
        return 0
    return _pair_words(tuple(p), tuple(q), n)


def pair(p: Element, q: Element):
    """⟨P, Q⟩; components of different degrees pair to zero."""
    if p.n != q.n:
        raise ValueError("ambient mismatch")
    total = 0
    for u, c in p.terms.items():
        for v, d in q.terms.items():
            if len(u) == len(v):
                total += c * d * pair_words(u, v, p.n)
    return total


def clear_pair_cache() -> None:
    _pair_words.cache_clear()


# ---- coproduct and dual action ---------------------------------------------------

class TensorElement:
    """Finite sum of P ⊗ Q over word pairs."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorElement) and self.n == other.n and self.terms == other.terms

    def __repr__(self) -> str:
        from .freealg import format_word
        return " + ".join(f"{c}*({format_word(p)} ⊗ {format_word(q)})"
                          for (p, q), c in sorted(self.terms.items())) or "0"


def coproduct(e: Element) -> TensorElement:
    """Braided extension of x ↦ x⊗1 + 1⊗x with (P1⊗Q1)(P2⊗Q2) = P1 σ_{Q1}(P2) ⊗ Q1 Q2."""
    n = e.n
    acc: dict = defaultdict(int)
    for w, c in e.terms.items():
        cur = {((), ()): c}
        for code in w:
            nxt: dict = defaultdict(int)
            for (p, q), x in cur.items():
                s, moved = relabel_word(sn_degree(q, n), (code,))
                nxt[(p + moved, q)] += s * x
                nxt[(p, q + (code,))] += x
            cur = nxt
        for k, x in cur.items():
            acc[k] += x
    return TensorElement(n, dict(acc))


def dual_act(f: Word, q: Element) -> Element:
    """f∨ * Q = sum f∨(Q_(1)) Q_(2), with f∨ the dual-basis functional of the word f."""
    f = tuple(f)
    acc: dict = {}
    for (p, r), c in coproduct(q).terms.items():
        if p == f:
            add_into(acc, {r: c})
    return Element(q.n, acc)


# ---- Gram ranks ------------------------------------------------------------------------

def gram_rank(rows: Sequence[Word], cols: Sequence[Word], n: int) -> int:
    """Exact rank of the matrix ⟨row_i, col_j⟩, block-diagonalised by S_n-degree."""
    degs = {len(w) for w in rows} | {len(w) for w in cols}
    if len(degs) > 1:
        raise ValueError(f"mixed degrees {sorted(degs)} in gram_rank")
    if not rows or not cols:
        return 0
    rb: dict = defaultdict(list)
    cb: dict = defaultdict(list)
    for w in rows:
        rb[sn_degree(w, n)].append(tuple(w))
    for w in cols:
        cb[inverse(sn_degree(w, n))].append(tuple(w))
    total = 0
    for key, rs in rb.items():
        cs = cb.get(key)
        if cs:
            total += rank_fraction_free([[_pair_words(r, c, n) for c in cs] for r in rs])
    return total


def orthogonal_to_all_words(e: Element) -> tuple[bool, int]:
    """Does e pair to zero with every free word of each degree?

    Expands e along ∇ letters; a probe word P = p1…pd pairs with e to
    (((e)∇_{p1})…)∇_{pd}, and any branch that becomes 0 pairs trivially.  Returns
    (verdict, number of nonzero leaves examined).
    """
    n = e.n
    pairs = [(a, b) for a, b in combinations(range(1, n + 1), 2)]
    leaves = 0
    for d in sorted(e.degrees()):
        stack = [e.homogeneous(d).terms]
        while stack:
            t = stack.pop()
            if not t:
                continue
            if () in t:
                leaves += 1
                if t[()] != 0:
                    return False, leaves
                continue
            for a, b in pairs:
                acc: dict = {}
                for w, c in t.items():
                    add_into(acc, nabla_word(w, a, b, n), c)
                if acc:
                    stack.append(acc)
    return True, leaves


# ---- quotient by the radical, degree by degree -------------------------------------------

class FormQuotient:
    """Graded pieces of E_G modulo the radical of the form.

    Degree d is spanned by x·b (x an edge of G, b a basis word of degree d-1).  A
    candidate is identified with the tuple of its images under every ∇_ab, in
    coordinates of degree d-1, using

        (x·b)∇_ab = x·((b)∇_ab) + (x)∇_{σ_b(a) σ_b(b)} · b.

    An element lies in the radical iff all its ∇ images do, so the number of
    independent signatures is the rank of the form on E_G^d.  When the form is
    nondegenerate (n <= 5) this is dim E_G^d.
    """

    def __init__(self, g: Graph, n: int | None = None, row_cap: int | None = None):
        self.n = n or g.n
        self.graph = g
        self.letters = g.letters()
        self.pairs = list(combinations(range(1, self.n + 1), 2))
        self.row_cap = row_cap
        self.words: list[list[Word]] = [[()]]
        self.perms: list[list[tuple]] = [[identity_perm(self.n)]]
        self.nab: list[list[list[dict]]] = [[]]  # nab[d][j][pair index] -> coords at d-1
        self.left: list[list[list[dict]]] = []  # left[d][letter index][j] -> coords at d+1
        self.finished = False

    @property
    def top(self) -> int:
        return len(self.words) - 1

    def dims(self) -> list[int]:
        return [len(w) for w in self.words]

    def extend(self) -> int:
        d = len(self.words)
        prev_words, prev_perms = self.words[d - 1], self.perms[d - 1]
        n = self.n
        blocks: dict = defaultdict(list)
        letter_perms = [transposition(n, *ends(x)) for x in self.letters]
        for xi, x in enumerate(self.letters):
            for j, w in enumerate(prev_words):
                blocks[compose(letter_perms[xi], prev_perms[j])].append((x + 0, xi, j))
        new_words: list[Word] = []
        new_perms: list[tuple] = []
        new_nab: list[list[dict]] = []
        left = [[None] * len(prev_words) for _ in self.letters]
        for perm in sorted(blocks):
            cands = sorted(blocks[perm], key=lambda t: (t[0],) + prev_words[t[2]])
            ech = TrackedEchelon()
            local: list[int] = []  # block index -> global index
            for x, xi, j in cands:
                sig = self._signature(d, xi, j)
                kind, val = ech.add(sig)
                if kind == "new":
                    if self.row_cap is not None and len(new_words) >= self.row_cap:
                        raise ResourceCapExceeded(f"basis cap {self.row_cap} at degree {d}")
                    gi = len(new_words)
                    local.append(gi)
                    new_words.append((x,) + prev_words[j])
                    new_perms.append(perm)
                    per_pair = [dict() for _ in self.pairs]
                    for (pi, k), c in sig.items():
                        per_pair[pi][k] = c
                    new_nab.append(per_pair)
                    left[xi][j] = {gi: 1}
                else:
                    left[xi][j] = {local[k]: c for k, c in val.items()}
        self.left.append(left)
        self.words.append(new_words)
        self.perms.append(new_perms)
        self.nab.append(new_nab)
        if not new_words:
            self.finished = True
        return len(new_words)

    def _signature(self, d: int, xi: int, j: int) -> dict:
        x = self.letters[xi]
        sig: dict = {}
        sb = self.perms[d - 1][j]
        for pi, (a, b) in enumerate(self.pairs):
            if d >= 2:
                lmap = self.left[d - 2][xi]
                for k, c in self.nab[d - 1][j][pi].items():
                    for m, e in lmap[k].items():
                        key = (pi, m)
                        v = sig.get(key, 0) + c * e
                        if v:
                            sig[key] = v
                        else:
                            sig.pop(key)
            c = letter_delta(x, sb[a - 1], sb[b - 1])
            if c:
                key = (pi, j)
                v = sig.get(key, 0) + c
                if v:
                    sig[key] = v
                else:
                    sig.pop(key)
        return sig

    def run(self, max_degree: int | None = None) -> list[int]:
        while not self.finished and (max_degree is None or self.top < max_degree):
            self.extend()
        return self.dims()

    def coords(self, w: Word) -> dict:
        """Coordinates of the word w (letters of G) in the computed bases."""
        vec = {0: 1}
        for depth, x in enumerate(reversed(w)):
            xi = self.letters.index(x)
            lmap = self.left[depth][xi]
            out: dict = {}
            for k, c in vec.items():
                add_into(out, lmap[k], c)
            vec = out
            if not vec:
                break
        return vec


def form_profile(g: Graph, max_degree: int | None = None, n: int | None = None) -> list[int]:
    """Ranks of the form on E_G^d for d = 0.. (until 0 or max_degree)."""
    fq = FormQuotient(g, n)
    dims = fq.run(max_degree)
    while dims and dims[-1] == 0 and len(dims) > 1:
        dims.pop()
    return dims
