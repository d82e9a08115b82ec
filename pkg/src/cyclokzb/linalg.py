"""Exact rational linear algebra: row reduction with a prescribed column order.

Everything here works on dense lists of Fractions. Sizes in this package stay
small (tens of variables), so simplicity and determinism beat sparsity.
"""

from __future__ import annotations

from fractions import Fraction


def rref(rows: list[list[Fraction]], col_order: list[int] | None = None):
    """Reduced row echelon form with columns visited in ``col_order``.

    Returns (reduced_rows, pivot_cols) where pivot_cols[i] is the pivot column
    of reduced row i. Pivoting is deterministic: for each column in order, the
    first not-yet-used row with a nonzero entry wins. Input rows are not
    mutated.
    """
    if not rows:
        return [], []
    ncols = len(rows[0])
    if col_order is None:
        col_order = list(range(ncols))
    m = [list(map(Fraction, r)) for r in rows]
    pivot_cols: list[int] = []
    pivot_rows: list[int] = []
    used = [False] * len(m)
    for c in col_order:
        pr = None
        for i, row in enumerate(m):
            if not used[i] and row[c] != 0:
                pr = i
                break
        if pr is None:
            continue
        used[pr] = True
        inv = 1 / m[pr][c]
        m[pr] = [x * inv for x in m[pr]]
        for i, row in enumerate(m):
            if i != pr and row[c] != 0:
                f = row[c]
                m[i] = [a - f * b for a, b in zip(row, m[pr])]
        pivot_cols.append(c)
        pivot_rows.append(pr)
    reduced = [m[i] for i in pivot_rows]
    return reduced, pivot_cols


def rank(rows: list[list[Fraction]]) -> int:
    _, pivots = rref(rows)
    return len(pivots)


def solve_pivots(rows: list[list[Fraction]], col_order: list[int]):
    """Express each pivot variable of the homogeneous system ``rows · x = 0``
    in terms of the free variables.

    Returns (expressions, free_cols): expressions maps a pivot column c to
    {free_col: coefficient} with x_c = sum coeff * x_free; free_cols lists the
    non-pivot columns in ``col_order`` order.
    """
    reduced, pivot_cols = rref(rows, col_order)
    pivot_set = set(pivot_cols)
    free_cols = [c for c in col_order if c not in pivot_set]
    expressions: dict[int, dict[int, Fraction]] = {}
    for row, c in zip(reduced, pivot_cols):
        # row says x_c + sum_{f} row[f] x_f = 0
        expr = {f: -row[f] for f in free_cols if row[f] != 0}
        expressions[c] = expr
    return expressions, free_cols


def in_row_span(rows: list[list[Fraction]], vec: list[Fraction]) -> bool:
    """Exact membership test of ``vec`` in the row span of ``rows``."""
    base = rank(rows)
    return rank(rows + [vec]) == base
