"""Sparse exact linear algebra over Q.

Rows are dicts ``column -> Fraction``.  Columns may be any hashable,
orderable keys.  Everything is exact; there is no pivoting tolerance.
"""

from __future__ import annotations

from fractions import Fraction


def _axpy(row: dict, a, other: dict) -> None:
    # row += a * other, in place, dropping zeros
    for k, v in other.items():
        nv = row.get(k, 0) + a * v
        if nv:
            row[k] = nv
        else:
            row.pop(k, None)


class RowReducer:
    """Incremental Gauss-Jordan elimination.

    Every stored row has a pivot column (its smallest key) with coefficient 1,
    and no stored row has a nonzero entry in another row's pivot column.
    """

    def __init__(self):
        self.pivots: dict = {}

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        row = {k: Fraction(v) for k, v in row.items() if v}
        for k in [k for k in row if k in self.pivots]:
            c = row.get(k)
            if c:
                _axpy(row, -c, self.pivots[k])
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; return True if it enlarged the span."""
        r = self.reduce(row)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: v * inv for k, v in r.items()}
        for q, prow in self.pivots.items():
            c = prow.get(p)
            if c:
                _axpy(prow, -c, r)
        self.pivots[p] = r
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def basis(self) -> list:
        return [dict(self.pivots[p]) for p in sorted(self.pivots)]


def rank(rows) -> int:
    rr = RowReducer()
    for r in rows:
        rr.add(r)
    return rr.rank


def nullspace(rows, columns) -> list:
    """Basis of {x : sum_k row[k] * x[k] = 0 for all rows}, as dicts over ``columns``."""
    rr = RowReducer()
    for r in rows:
        rr.add(r)
    free = [c for c in columns if c not in rr.pivots]
    out = []
    for f in free:
        vec = {f: Fraction(1)}
        for p, prow in rr.pivots.items():
            c = prow.get(f)
            if c:
                vec[p] = -c
        out.append(vec)
    return out


def matrix_rank(mat) -> int:
    return rank({j: v for j, v in enumerate(row) if v} for row in mat)


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [[sum((a[i][l] * b[l][j] for l in range(k)), Fraction(0)) for j in range(m)] for i in range(n)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(s, a):
    return [[s * x for x in row] for row in a]


def identity(n: int):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(n: int, m: int | None = None):
    m = n if m is None else m
    return [[Fraction(0)] * m for _ in range(n)]


def is_zero(a) -> bool:
    return all(not x for row in a for x in row)
