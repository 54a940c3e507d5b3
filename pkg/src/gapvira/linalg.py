"""Exact sparse Gaussian elimination over Q or Q(xi_p)."""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Mapping, Sequence

from .cyclo import inverse


def solve_square(rows: Sequence[Sequence], rhs: Sequence) -> list:
    """Solve ``A x = b`` for an invertible square matrix given as dense rows."""
    n = len(rows)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = inverse(aug[col][col])
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def _rref(rows: list[dict], order: dict) -> tuple[list[dict], list]:
    """Reduce sparse rows (dict col -> value) in place; returns (rows, pivots)."""
    pivots: list = []
    reduced: list[dict] = []
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        for prow, pc in zip(reduced, pivots):
            f = row.get(pc)
            if f:
                for c, v in prow.items():
                    nv = row.get(c, 0) - f * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        if not row:
            continue
        pc = min(row, key=order.__getitem__)
        inv = inverse(row[pc])
        row = {c: v * inv for c, v in row.items()}
        # keep earlier rows fully reduced
        for i, prow in enumerate(reduced):
            f = prow.get(pc)
            if f:
                for c, v in row.items():
                    nv = prow.get(c, 0) - f * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        reduced.append(row)
        pivots.append(pc)
    return reduced, pivots


def nullspace(columns: Sequence[Mapping[Hashable, object]]) -> list[dict[int, object]]:
    """Kernel of the linear map sending unknown ``j`` to ``columns[j]``.

    ``columns[j]`` is the image of the j-th unknown as a sparse vector.
    Returns a basis of the kernel as sparse dicts ``{j: coeff}``, one per free
    unknown, each normalized to coefficient 1 at its free unknown.
    """
    n = len(columns)
    rows_by_key: dict = {}
    for j, col in enumerate(columns):
        for key, v in col.items():
            if v:
                rows_by_key.setdefault(key, {})[j] = v
    order = {j: j for j in range(n)}
    reduced, pivots = _rref(list(rows_by_key.values()), order)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec = {free: Fraction(1)}
        for row, pc in zip(reduced, pivots):
            f = row.get(free)
            if f:
                vec[pc] = -f
        basis.append(vec)
    return basis


def rank(columns: Sequence[Mapping[Hashable, object]]) -> int:
    return len(columns) - len(nullspace(columns))
