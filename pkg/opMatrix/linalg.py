"""
Gaussian elimination over Q(i). Rows are sparse dicts column -> entry.
"""
from .utils.math import RationalComplex, C_ZERO, C_ONE


def _sparse_rows(matrix):
    rows = []
    for row in matrix:
        entries = {}
        for col, value in enumerate(row):
            value = RationalComplex.coerce(value)
            if value:
                entries[col] = value
        rows.append(entries)
    return rows


def sparse_rank(rows):
    """Rank of a matrix given as an iterable of sparse rows."""
    pivots = {}
    for row in rows:
        row = {col: value for col, value in row.items() if value}
        while row:
            col = min(row)
            pivot_row = pivots.get(col)
            if pivot_row is None:
                pivots[col] = row
                break
            factor = row[col] / pivot_row[col]
            for c, value in pivot_row.items():
                updated = row.get(c, C_ZERO) - factor * value
                if updated:
                    row[c] = updated
                else:
                    row.pop(c, None)
    return len(pivots)


def exact_rank(matrix):
    """Exact rank of a dense matrix with Gaussian rational entries."""
    return sparse_rank(_sparse_rows(matrix))


def rref(matrix):
    """Reduced row echelon form and the pivot columns."""
    rows = [[RationalComplex.coerce(v) for v in row] for row in matrix]
    if not rows:
        return [], []
    width = len(rows[0])
    pivots = []
    top = 0
    for col in range(width):
        pick = next((r for r in range(top, len(rows)) if rows[r][col]), None)
        if pick is None:
            continue
        rows[top], rows[pick] = rows[pick], rows[top]
        lead = rows[top][col]
        rows[top] = [value / lead for value in rows[top]]
        for r in range(len(rows)):
            if r != top and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[top])]
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return rows, pivots


def nullspace(matrix, width=None):
    """Basis of the kernel, one vector per free column.

    Each basis vector is 1 at its free column and 0 at every other free
    column; the free column is returned with it as its pivot.
    """
    if not matrix:
        width = width or 0
        return [(col, [C_ONE if c == col else C_ZERO for c in range(width)]) for col in range(width)]
    width = len(matrix[0])
    reduced, pivots = rref(matrix)
    free = [col for col in range(width) if col not in pivots]
    basis = []
    for col in free:
        vector = [C_ZERO] * width
        vector[col] = C_ONE
        for row, pivot_col in enumerate(pivots):
            vector[pivot_col] = -reduced[row][col]
        basis.append((col, vector))
    return basis
