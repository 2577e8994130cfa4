"""Independent reference computations used by several test modules.

These deliberately avoid the package's own linear algebra: ranks are read off
the Smith normal form computed by plain integer row/column reduction.
"""


def snf_diagonal(mat):
    """Diagonal of the Smith normal form of an integer matrix."""
    m = [row[:] for row in mat]
    rows, cols = len(m), len(m[0]) if m else 0
    diag = []
    r = c = 0
    while r < rows and c < cols:
        pivot = None
        best = None
        for i in range(r, rows):
            for j in range(c, cols):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < best):
                    best, pivot = abs(m[i][j]), (i, j)
        if pivot is None:
            break
        i, j = pivot
        m[r], m[i] = m[i], m[r]
        for row in m:
            row[c], row[j] = row[j], row[c]
        again = True
        while again:
            again = False
            for i in range(r + 1, rows):
                if m[i][c]:
                    k = m[i][c] // m[r][c]
                    m[i] = [a - k * b for a, b in zip(m[i], m[r])]
                    if m[i][c]:
                        m[r], m[i] = m[i], m[r]
                        again = True
            for j in range(c + 1, cols):
                if m[r][j]:
                    k = m[r][j] // m[r][c]
                    for row in m:
                        row[j] -= k * row[c]
                    if m[r][j]:
                        for row in m:
                            row[c], row[j] = row[j], row[c]
                        again = True
        diag.append(abs(m[r][c]))
        r += 1
        c += 1
    return diag


def snf_rank(mat) -> int:
    return sum(1 for d in snf_diagonal(mat) if d != 0)


def quotient_span_rank(class_coeffs, d2, edge_count) -> int:
    """Rank of the span of integer chains modulo the face-boundary lattice."""
    cols = [list(c) for c in class_coeffs]
    d2cols = [[d2[i][j] for i in range(edge_count)] for j in range(len(d2[0]) if d2 else 0)]
    if not d2cols:
        return snf_rank([list(r) for r in zip(*cols)]) if cols else 0
    full = snf_rank([list(r) for r in zip(*(cols + d2cols))])
    base = snf_rank([list(r) for r in zip(*d2cols)])
    return full - base
