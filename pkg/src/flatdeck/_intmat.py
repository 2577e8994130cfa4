"""Exact linear algebra for small integer and rational matrices.

Matrices are lists of rows.  Everything here is elementary column/row
reduction over Z or Q; the inputs in this package never exceed a few dozen
rows, so clarity beats asymptotics.
"""

from __future__ import annotations

from fractions import Fraction


def frac_rank(rows) -> int:
    """Rank over Q by Gaussian elimination on a copy."""
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        pivot = None
        for r in range(rank, len(m)):
            if m[r][c] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][c]
        m[rank] = [x / pv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def frac_det(rows) -> Fraction:
    """Determinant over Q of a square matrix."""
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for c in range(n):
        pivot = None
        for r in range(c, n):
            if m[r][c] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c] != 0:
                f = m[r][c] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def _columns(mat):
    return [[row[j] for row in mat] for j in range(len(mat[0]))] if mat and mat[0] else []


def column_echelon(mat):
    """Integer column echelon form with transform: returns (H, U, pivots).

    H = mat @ U with U unimodular; pivots is a list of (row, col) positions
    with positive pivot entries and zeros to their right in the pivot row.
    """
    rows = len(mat)
    ncols = len(mat[0]) if rows else 0
    cols = _columns(mat)
    ucols = [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    r = 0
    pivots = []
    for i in range(rows):
        if r >= ncols:
            break
        live = [j for j in range(r, ncols) if cols[j][i] != 0]
        if not live:
            continue
        while len(live) > 1:
            live.sort(key=lambda j: abs(cols[j][i]))
            j0 = live[0]
            for j in live[1:]:
                k = cols[j][i] // cols[j0][i]
                cols[j] = [a - k * b for a, b in zip(cols[j], cols[j0])]
                ucols[j] = [a - k * b for a, b in zip(ucols[j], ucols[j0])]
            live = [j for j in live if cols[j][i] != 0]
        j0 = live[0]
        cols[r], cols[j0] = cols[j0], cols[r]
        ucols[r], ucols[j0] = ucols[j0], ucols[r]
        if cols[r][i] < 0:
            cols[r] = [-a for a in cols[r]]
            ucols[r] = [-a for a in ucols[r]]
        pivots.append((i, r))
        r += 1
    h = [[cols[j][i] for j in range(ncols)] for i in range(rows)]
    u = [[ucols[j][i] for j in range(ncols)] for i in range(ncols)]
    return h, u, pivots


def int_kernel(mat):
    """Basis of the integer kernel lattice, as a list of column vectors."""
    if not mat or not mat[0]:
        n = len(mat[0]) if mat else 0
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    h, u, pivots = column_echelon(mat)
    ncols = len(mat[0])
    used = {c for (_i, c) in pivots}
    out = []
    for j in range(ncols):
        if j not in used:
            out.append([u[i][j] for i in range(ncols)])
    return out


def int_solve(mat, vec):
    """One integer solution x of mat @ x = vec, or None."""
    rows = len(mat)
    ncols = len(mat[0]) if rows else 0
    if ncols == 0:
        return [] if all(v == 0 for v in vec) else None
    h, u, pivots = column_echelon(mat)
    residual = list(vec)
    y = [0] * ncols
    for (i, c) in pivots:
        if residual[i] % h[i][c] != 0:
            return None
        k = residual[i] // h[i][c]
        y[c] = k
        for r in range(rows):
            residual[r] -= k * h[r][c]
    if any(v != 0 for v in residual):
        return None
    return [sum(u[i][j] * y[j] for j in range(ncols)) for i in range(ncols)]
