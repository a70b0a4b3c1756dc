"""Exact row reduction over Z and Z/p on dense Python-int vectors."""

from __future__ import annotations

from typing import List, Optional, Sequence


class Echelon:
    """Row echelon basis of the span of some integer vectors.

    Over Z (``modulus=None``) the span is the lattice generated by the rows
    and the basis is in Hermite-style echelon form (positive pivots), so
    membership means solvability in integers.  Over Z/p it is ordinary
    Gaussian elimination.
    """

    def __init__(self, rows: Sequence[Sequence[int]], ncols: int, modulus: Optional[int] = None):
        self.ncols = ncols
        self.modulus = modulus
        self.rows: List[List[int]] = []
        self.pivot_row = {}  # column -> index into self.rows
        if modulus is None:
            self._reduce_integer([list(r) for r in rows])
        else:
            self._reduce_mod([[x % modulus for x in r] for r in rows])

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce_integer(self, rows):
        rows = [r for r in rows if any(r)]
        for c in range(self.ncols):
            active = [r for r in rows if r[c]]
            rest = [r for r in rows if not r[c]]
            while len(active) > 1:
                active.sort(key=lambda r: abs(r[c]))
                p = active[0]
                keep = [p]
                for r in active[1:]:
                    q = r[c] // p[c]
                    r = [a - q * b for a, b in zip(r, p)]
                    if r[c]:
                        keep.append(r)
                    elif any(r):
                        rest.append(r)
                active = keep
            if active:
                p = active[0]
                if p[c] < 0:
                    p = [-a for a in p]
                self.pivot_row[c] = len(self.rows)
                self.rows.append(p)
            rows = rest
            if not rows:
                break

    def _reduce_mod(self, rows):
        m = self.modulus
        rows = [r for r in rows if any(r)]
        for c in range(self.ncols):
            k = next((i for i, r in enumerate(rows) if r[c]), None)
            if k is None:
                continue
            p = rows.pop(k)
            inv = pow(p[c], -1, m)
            p = [(a * inv) % m for a in p]
            nxt = []
            for r in rows:
                if r[c]:
                    f = r[c]
                    r = [(a - f * b) % m for a, b in zip(r, p)]
                if any(r):
                    nxt.append(r)
            rows = nxt
            self.pivot_row[c] = len(self.rows)
            self.rows.append(p)
            if not rows:
                break

    def contains(self, vec: Sequence[int]) -> bool:
        m = self.modulus
        v = list(vec) if m is None else [x % m for x in vec]
        for c in range(self.ncols):
            x = v[c]
            if not x:
                continue
            k = self.pivot_row.get(c)
            if k is None:
                return False
            row = self.rows[k]
            if m is None:
                q, r = divmod(x, row[c])
                if r:
                    return False
                for j in range(c, self.ncols):
                    v[j] -= q * row[j]
            else:
                for j in range(c, self.ncols):
                    v[j] = (v[j] - x * row[j]) % m
        return True

    __contains__ = contains


def elementary_divisors(rows: Sequence[Sequence[int]], ncols: int) -> List[int]:
    """Nonzero invariant factors of an integer matrix (Smith normal form diagonal)."""
    a = [list(r) for r in rows if any(r)]
    nrows = len(a)
    out = []
    t = 0
    while t < nrows and t < ncols:
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        dirty = True
            if not dirty:
                # pivot must divide the rest of the submatrix
                bad = next(
                    ((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                dirty = True
            # move the smallest nonzero entry of row/column t to the pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t, nrows) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t, ncols) if a[t][j]]
            _, i, j = min(cand)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        out.append(abs(a[t][t]))
        t += 1
    return out
