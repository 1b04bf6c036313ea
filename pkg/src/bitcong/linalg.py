"""Dense linear algebra over a field, on raw element codes."""
from __future__ import annotations

from typing import Sequence


def row_reduce(field, rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    a = [list(r) for r in rows]
    if not a:
        return a, []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if not field.is_zero(a[i][c])), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = field.inv(a[r][c])
        a[r] = [field.mul(x, inv) for x in a[r]]
        for i in range(len(a)):
            if i != r and not field.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(field, rows: Sequence[Sequence]) -> int:
    return len(row_reduce(field, rows)[1])


def nullspace(field, rows: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of ``{v : rows * v = 0}``, one vector per free column, in column order."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[field.one_code if i == j else field.zero_code for i in range(ncols)] for j in range(ncols)]
    red, pivots = row_reduce(field, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero_code] * ncols
        v[f] = field.one_code
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(red[i][f])
        basis.append(v)
    return basis
