"""Sparse Gaussian elimination over a finite field.

Rows are dicts ``{column: nonzero coefficient}`` with orderable column keys.
"""

from __future__ import annotations

from typing import Hashable, Iterable

from .gf import GF


class Echelon:
    """Incrementally built echelon form; ``add`` reports whether a row was new."""

    def __init__(self, field: GF, key=None):
        self.field = field
        self.key = key
        self.pivots: dict[Hashable, dict] = {}

    def _lead(self, row: dict):
        return min(row, key=self.key) if self.key else min(row)

    def reduce(self, row: dict) -> dict:
        """Fully reduce ``row`` against the stored pivots (returns a new dict)."""
        F = self.field
        row = {c: v for c, v in row.items() if v}
        out = {}
        prime = F.k == 1
        p = F.p
        while row:
            c = self._lead(row)
            v = row.pop(c)
            piv = self.pivots.get(c)
            if piv is None:
                out[c] = v
                continue
            for cc, pv in piv.items():
                if cc == c:
                    continue
                if prime:
                    nv = (row.get(cc, 0) - v * pv) % p
                else:
                    nv = F.sub(row.get(cc, 0), F.mul(v, pv))
                if nv:
                    row[cc] = nv
                else:
                    row.pop(cc, None)
        return out

    def add(self, row: dict) -> bool:
        F = self.field
        r = self.reduce(row)
        if not r:
            return False
        c = self._lead(r)
        inv = F.inv(r[c])
        self.pivots[c] = {cc: F.mul(v, inv) for cc, v in r.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def rows(self) -> list[dict]:
        return [self.pivots[c] for c in sorted(self.pivots, key=self.key)]


def rank(field: GF, rows: Iterable[dict], key=None) -> int:
    ech = Echelon(field, key)
    for r in rows:
        ech.add(r)
    return ech.rank


def nullspace(field: GF, rows: list[dict], ncols: int) -> list[list[int]]:
    """Basis of {x in F^ncols : row . x = 0 for every row}; columns are 0..ncols-1."""
    F = field
    ech = Echelon(F)
    for r in rows:
        ech.add(r)
    # back-substitute to reduced row echelon form
    piv_cols = sorted(ech.pivots)
    red = {c: dict(ech.pivots[c]) for c in piv_cols}
    for c in reversed(piv_cols):
        row_c = red[c]
        for d in piv_cols:
            if d < c and c in red[d]:
                f = red[d][c]
                for cc, v in row_c.items():
                    nv = F.sub(red[d].get(cc, 0), F.mul(f, v))
                    if nv:
                        red[d][cc] = nv
                    else:
                        red[d].pop(cc, None)
    free = [j for j in range(ncols) if j not in red]
    basis = []
    for j in free:
        vec = [0] * ncols
        vec[j] = 1
        for c in piv_cols:
            v = red[c].get(j, 0)
            if v:
                vec[c] = F.neg(v)
        basis.append(vec)
    return basis
