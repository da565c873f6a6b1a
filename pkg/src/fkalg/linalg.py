"""Exact linear algebra: fraction-free rank and sparse incremental echelon forms."""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Sequence


class ResourceCapExceeded(RuntimeError):
    """A configured cap (rules, rows, words) was hit; the answer would be incomplete."""


def rank_fraction_free(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by Bareiss elimination (all divisions exact)."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank, prev = 0, 1
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][c]
        for r in range(rank + 1, len(m)):
            a = m[r][c]
            row, top = m[r], m[rank]
            for k in range(c + 1, ncols):
                row[k] = (p * row[k] - a * top[k]) // prev
            row[c] = 0
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


def _scale_sub(vec: dict, row: dict, c) -> None:
    for k, v in row.items():
        x = vec.get(k, 0) - c * v
        if x:
            vec[k] = x
        else:
            vec.pop(k, None)


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Echelon:
    """Sparse rows keyed by pivot; the pivot of a row is its largest key."""

    def __init__(self, cap: int | None = None):
        self.rows: dict[Hashable, dict] = {}
        self.cap = cap

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Remove pivots from the top until the leading key is not a pivot."""
        vec = dict(vec)
        rows = self.rows
        while vec:
            lead = max(vec)
            row = rows.get(lead)
            if row is None:
                break
            _scale_sub(vec, row, vec[lead])
        return vec

    def add(self, vec: dict) -> Hashable | None:
        """Insert vec; return its new pivot, or None if it was dependent."""
        vec = self.reduce(vec)
        if not vec:
            return None
        if self.cap is not None and len(self.rows) >= self.cap:
            raise ResourceCapExceeded(f"echelon row cap {self.cap} reached")
        lead = max(vec)
        c = vec[lead]
        if c != 1:
            vec = {k: _norm(Fraction(v) / c) for k, v in vec.items()}
        self.rows[lead] = vec
        return lead

    def fully_reduced(self) -> dict[Hashable, dict]:
        """Reduced echelon form: no row mentions another row's pivot off its own pivot."""
        done: dict[Hashable, dict] = {}
        for p in sorted(self.rows):
            row = dict(self.rows[p])
            for k in sorted((k for k in row if k != p and k in done), reverse=True):
                if k in row:
                    _scale_sub(row, done[k], row[k])
            # later pivots only appear below earlier ones, so one pass suffices
            while True:
                extra = [k for k in row if k != p and k in done]
                if not extra:
                    break
                k = max(extra)
                _scale_sub(row, done[k], row[k])
            done[p] = row
        return done


class TrackedEchelon:
    """Echelon that expresses each inserted vector in terms of the accepted ones.

    add() returns ("new", index) when the vector is independent (it becomes basis
    element `index`), otherwise ("dep", {index: coeff}) with vec = sum coeff * basis.
    """

    def __init__(self):
        self.rows: dict[Hashable, tuple[dict, dict]] = {}
        self.count = 0

    def add(self, vec: dict):
        vec = dict(vec)
        combo: dict = {}
        rows = self.rows
        while vec:
            lead = max(vec)
            hit = rows.get(lead)
            if hit is None:
                break
            row, rc = hit
            c = vec[lead]
            _scale_sub(vec, row, c)
            _scale_sub(combo, rc, -c)
        if not vec:
            return "dep", combo
        idx = self.count
        self.count += 1
        lead = max(vec)
        c = Fraction(vec[lead])
        combo = {k: -v for k, v in combo.items()}
        combo[idx] = 1
        rows[lead] = ({k: _norm(v / c) for k, v in vec.items()},
                      {k: _norm(v / c) for k, v in combo.items()})
        return "new", idx
