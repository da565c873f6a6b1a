"""Symmetric and extended affine symmetric groups in window notation.

An element is a bijection f of the integers with f(i+n) = f(i)+n, stored by its
window f(1..n).  Products compose right to left: (fg)(i) = f(g(i)).  The central
element y_1...y_n (the shift i -> i+n) is treated as the identity, so the window
is normalised to have pi-power sum(f(i) - i)/n in [0, n).

Generators: s_i swaps i and i+1 (mod n, s_0 swaps 0 and 1), pi(i) = i+1 and
y_j(j) = j+n.  Then pi = y_1 s_1 ... s_{n-1} and pi s_i pi^-1 = s_{i+1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Sequence

from .freealg import Element, normalize_pair
from .graphs import OrientedGraph, named_graph, orient_for_theta
from .series import GradedSeries, divide, qprod


@dataclass(frozen=True)
class AffinePerm:
    n: int
    window: tuple

    def __post_init__(self):
        n, w = self.n, tuple(self.window)
        if len(w) != n or len({x % n for x in w}) != n:
            raise ValueError(f"{w} is not a window of an affine permutation of size {n}")
        s = sum(w) - n * (n + 1) // 2
        k = s // n
        shift = (k // n) * n  # bring the pi-power into [0, n)
        object.__setattr__(self, "window", tuple(x - shift for x in w))

    def __call__(self, i: int) -> int:
        q, r = divmod(i - 1, self.n)
        return self.window[r] + q * self.n

    def __mul__(self, other: "AffinePerm") -> "AffinePerm":
        if self.n != other.n:
            raise ValueError("size mismatch")
        return AffinePerm(self.n, tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> "AffinePerm":
        n = self.n
        out = [0] * n
        for i, x in enumerate(self.window, 1):
            q, r = divmod(x - 1, n)
            out[r] = i - q * n
        return AffinePerm(n, tuple(out))

    def __pow__(self, k: int) -> "AffinePerm":
        base = self if k >= 0 else self.inverse()
        out = identity(self.n)
        for _ in range(abs(k)):
            out = out * base
        return out

    @property
    def pi_power(self) -> int:
        return (sum(self.window) - self.n * (self.n + 1) // 2) // self.n

    def is_finite(self) -> bool:
        return sorted(self.window) == list(range(1, self.n + 1))

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.window)) + "]"


def identity(n: int) -> AffinePerm:
    return AffinePerm(n, tuple(range(1, n + 1)))


def s(n: int, i: int) -> AffinePerm:
    """Simple reflection s_i, i in 0..n-1."""
    i %= n
    w = list(range(1, n + 1))
    if i == 0:
        w[0], w[n - 1] = 0, n + 1
    else:
        w[i - 1], w[i] = i + 1, i
    return AffinePerm(n, tuple(w))


def pi(n: int) -> AffinePerm:
    return AffinePerm(n, tuple(range(2, n + 2)))


def y(n: int, j: int) -> AffinePerm:
    w = list(range(1, n + 1))
    w[j - 1] += n
    return AffinePerm(n, tuple(w))


def y_power(n: int, lam: Sequence[int]) -> AffinePerm:
    return AffinePerm(n, tuple(i + n * lam[i - 1] for i in range(1, n + 1)))


def from_perm(images: Sequence[int]) -> AffinePerm:
    return AffinePerm(len(images), tuple(images))


def length(w: AffinePerm) -> int:
    """Coxeter length: sum over i<j of |floor((f(j) - f(i)) / n)|."""
    n, f = w.n, w.window
    return sum(abs((f[j] - f[i]) // n) for i in range(n) for j in range(i + 1, n))


def evaluate(k: int, letters: Sequence[int], n: int) -> AffinePerm:
    """pi^k s_{l1} s_{l2} ..."""
    out = pi(n) ** k
    for i in letters:
        out = out * s(n, i)
    return out


def reduced_word(w: AffinePerm) -> tuple[int, tuple[int, ...]]:
    """(k, letters) with w = pi^k s_{l1}...s_{ld}, choosing the smallest left descent each step."""
    n = w.n
    k = w.pi_power % n
    v = (pi(n) ** (-k)) * w
    letters = []
    cur = length(v)
    while cur:
        for i in range(n):
            u = s(n, i) * v
            lu = length(u)
            if lu < cur:
                letters.append(i)
                v, cur = u, lu
                break
        else:  # pragma: no cover - impossible for a valid element
            raise AssertionError("no descent found")
    return k, tuple(letters)


def format_reduced(k: int, letters: Sequence[int]) -> str:
    """Digits for the letters; multi-digit indices are separated by dots."""
    sep = "." if any(i >= 10 for i in letters) else ""
    body = sep.join(map(str, letters))
    head = "" if k == 0 else ("pi" if k == 1 else f"pi^{k}")
    if head and body:
        return f"{head}*{body}"
    return head or body or "id"


def nilcox_mult(u: AffinePerm, v: AffinePerm) -> AffinePerm | None:
    """t_u t_v in the nil-Coxeter algebra: t_{uv} if lengths add, else None (zero)."""
    uv = u * v
    return uv if length(u) + length(v) == length(uv) else None


def longest_element(n: int) -> AffinePerm:
    return AffinePerm(n, tuple(range(n, 0, -1)))


# ---- partitions and the delta rule ----------------------------------------------

def box_partitions(k: int, m: int) -> list[tuple[int, ...]]:
    """Partitions with at most k parts, each at most m, padded to length k."""
    out = []

    def rec(prefix, cap):
        if len(prefix) == k:
            out.append(tuple(prefix))
            return
        for p in range(cap, -1, -1):
            rec(prefix + [p], p)

    rec([], m)
    return out


def _cells(lam: Sequence[int], mu: Sequence[int] = ()) -> list[tuple[int, int]]:
    mu = list(mu) + [0] * (len(lam) - len(mu))
    return [(i, j) for i, row in enumerate(lam, 1) for j in range(mu[i - 1] + 1, row + 1)]


def delta_tableau(lam: Sequence[int], k: int, n: int, mu: Sequence[int] = ()) -> dict:
    """{(row, col): k + col - row} on the cells of lam (or of lam/mu)."""
    lam = list(lam)
    if len([p for p in lam if p]) > k or any(p > n - k for p in lam):
        raise ValueError(f"shape {lam} does not fit in the {k}x{n - k} box")
    if list(mu) and any(a < b for a, b in zip(lam + [0] * len(mu), mu)):
        raise ValueError("mu is not contained in lam")
    return {(i, j): k + j - i for i, j in _cells(lam, mu)}


def gamma_word(lam: Sequence[int], k: int, n: int, mu: Sequence[int] = ()) -> tuple[int, ...]:
    """Entries removed column by column from the right, bottom to top in each column."""
    tab = delta_tableau(lam, k, n, mu)
    order = sorted(tab, key=lambda c: (-c[1], -c[0]))
    return tuple(tab[c] for c in order)


def gamma(lam: Sequence[int], k: int, n: int, mu: Sequence[int] = ()) -> AffinePerm:
    return evaluate(0, gamma_word(lam, k, n, mu), n)


def ek_terms(n: int, k: int) -> list[tuple[tuple[int, ...], int, tuple[int, ...]]]:
    """Terms of e_k(y): (lambda, k, word) with y-product = pi^k s_{word}."""
    if not 1 <= k <= n - 1:
        raise ValueError("need 1 <= k <= n-1")
    box = (n - k,) * k
    out = []
    for lam in box_partitions(k, n - k):
        left = tuple((i - k) % n for i in gamma_word(lam, k, n))
        right = gamma_word(box, k, n, mu=lam)
        out.append((lam, k, left + right))
    return out


def theta(letters: Sequence[int], og: OrientedGraph, base: int = 0) -> Element:
    """Letter e maps to the directed edge og.direction[e - base] as a signed generator."""
    n = og.underlying.n
    sign, word = 1, []
    for e in letters:
        idx = e - base
        if not 0 <= idx < len(og.direction):
            raise ValueError(f"letter {e} is not an edge of the oriented graph")
        sg, g = normalize_pair(*og.direction[idx])
        sign *= sg
        word.append(g)
    return Element(n, {tuple(word): sign})


def cycle_orientation(n: int) -> OrientedGraph:
    return orient_for_theta(named_graph("cycle", [n]))


def rk_element(n: int, k: int) -> Element:
    """R_k as an element of E_n written in the cycle edges 0..n-1."""
    if n < 3:
        raise ValueError("need n >= 3")
    og = cycle_orientation(n)
    out = Element(n)
    for _, _, word in ek_terms(n, k):
        out = out + theta(word, og)
    return out


# ---- primitive elements -------------------------------------------------------------

def primitive_elements(n: int) -> list[AffinePerm]:
    """y^lam w for w in S_n, lam_{w(i)} = number of descents of w among positions < i."""
    out = []
    for w in permutations(range(1, n + 1)):
        mu = [0]
        for i in range(n - 1):
            mu.append(mu[-1] + (w[i] > w[i + 1]))
        lam = [0] * n
        for i in range(n):
            lam[w[i] - 1] = mu[i]
        out.append(y_power(n, lam) * from_perm(w))
    return out


def is_primitive(w: AffinePerm) -> bool:
    """Geometric test: w^-1 maps an interior point of the fundamental alcove into the box.

    The point p_i = -i/(n+1) lies in the alcove; the box is 0 < x_i - x_{i+1} < 1.
    u = w^-1 = y^lam sigma acts on R^n by x -> sigma x + lam with (sigma x)_{sigma(i)} = x_i.
    """
    n = w.n
    u = w.inverse()
    x = [Fraction(0)] * n
    for j in range(1, n + 1):
        val = u(j)
        sj = (val - 1) % n + 1
        lam = (val - sj) // n
        x[sj - 1] = Fraction(-j, n + 1) + lam
    return all(0 < x[i] - x[i + 1] < 1 for i in range(n - 1))


def primitive_search(n: int) -> list[AffinePerm]:
    """Independent route: all y^lam sigma with 0 <= lam_i < n, min lam = 0, passing is_primitive."""
    found = []
    for lam in product(range(n), repeat=n):
        if min(lam) != 0:
            continue
        t = y_power(n, lam)
        for sig in permutations(range(1, n + 1)):
            w = t * from_perm(sig)
            if is_primitive(w):
                found.append(w)
    return found


def primitive_length_series(n: int) -> GradedSeries:
    out = [0] * 1
    for w in primitive_elements(n):
        ell = length(w)
        out += [0] * (ell + 1 - len(out))
        out[ell] += 1
    return GradedSeries(out)


def primitive_length_formula(n: int) -> GradedSeries:
    """n * prod_{i=1}^{n-1} [i(n-i)] / [i]."""
    return divide(qprod(i * (n - i) for i in range(1, n)), qprod(range(1, n))) * n


def primitive_pairing(v: AffinePerm):
    """⟨Θ(w0 rev v'), Θ(v' w0)⟩ on the n-cycle, v' the pi-free part of v."""
    from .pairing import pair

    n = v.n
    og = cycle_orientation(n)
    _, w0 = reduced_word(longest_element(n))
    _, vv = reduced_word(v)
    return pair(theta(w0 + vv[::-1], og), theta(vv + w0, og))


# ---- type D coset representatives ------------------------------------------------------

def d_edge(n: int, name: str) -> tuple[int, int]:
    """Directed D_n edges: a = 3->1, b = 3->2, k = (k+3)->(k+2).  Primed names are the star
    edges from the end vertex n: a' = n->1, b' = n->2, k' = n->(k+2)."""
    if name.endswith("'"):
        base = name[:-1]
        head = {"a": 1, "b": 2}.get(base)
        return n, head if head is not None else int(base) + 2
    if name == "a":
        return 3, 1
    if name == "b":
        return 3, 2
    k = int(name)
    if not 1 <= k <= n - 3:
        raise ValueError(f"D_{n} has no edge {k}")
    return k + 3, k + 2


def d_word(n: int, names: Sequence[str]) -> Element:
    sign, word = 1, []
    for nm in names:
        sg, g = normalize_pair(*d_edge(n, nm))
        sign *= sg
        word.append(g)
    return Element(n, {tuple(word): sign})


def dn_mcr_names(n: int) -> list[list[str]]:
    """The 2n words of M_n as lists of edge names."""
    if n < 3:
        raise ValueError("need n >= 3")
    up = [str(i) for i in range(1, n - 2)]  # 1 2 ... (n-3)
    out = [[]]
    for j in range(n - 4, -1, -1):
        out.append(up[j:])
    for pre in (["a"], ["b"], ["a", "b"], ["b", "a"], ["a", "b", "a"]):
        out.append(pre + up)
    for i in range(1, n - 2):
        out.append([str(t) for t in range(i, 0, -1)] + ["a", "b", "a"] + up)
    return out


def dn_mcr(n: int) -> list[Element]:
    return [d_word(n, w) for w in dn_mcr_names(n)]


def dn_x_names(n: int, primed: bool = False) -> list[str]:
    down = [str(i) for i in range(n - 3, 0, -1)]
    core = ["a", "b", "a"]
    names = down + core + down[::-1]
    if primed:
        # (n-3)' is the same edge as n-3
        names = [nm + "'" for nm in names]
    return names


def dn_pairing_check(n: int):
    """⟨X, X'⟩ for the top element X of M_n and its primed star analogue."""
    from .pairing import pair

    return pair(d_word(n, dn_x_names(n)), d_word(n, dn_x_names(n, primed=True)))
