"""Exact integer linear algebra for homology certificates.

Implements Smith-style diagonalisation with explicit transformation
matrices over Python integers, which is what deciding membership of a
vector in the integer column span of a matrix needs.  The pre-installed
normal-form helpers return the diagonal only, so the transforms are
kept here.
"""


def _matmul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    return [
        [sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
        for i in range(rows)
    ]


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(matrix):
    """Return (d, u, v) with u*matrix*v = d and d diagonal.

    u and v are unimodular.  The diagonal is not normalised to the
    divisibility chain; solvability questions only need the transforms.
    """
    a = [row[:] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = _identity(rows)
    v = _identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, factor):
        a[dst] = [x + factor * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + factor * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, factor):
        for row in a:
            row[dst] += factor * row[src]
        for row in v:
            row[dst] += factor * row[src]

    t = 0
    while t < min(rows, cols):
        # find a nonzero pivot in the remaining block
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0:
                    if pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]]):
                        pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                    done = False
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                    done = False
            if done:
                break
        t += 1
    return a, u, v


def solve_integer(matrix, vector):
    """An integer solution x of matrix @ x = vector, or None.

    Decides membership of ``vector`` in the integer column span.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if rows == 0:
        return [0] * cols
    if cols == 0:
        return [] if all(b == 0 for b in vector) else None
    d, u, v = smith_normal_form(matrix)
    c = [sum(u[i][k] * vector[k] for k in range(rows)) for i in range(rows)]
    y = [0] * cols
    for i in range(rows):
        di = d[i][i] if i < cols else 0
        if di == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % di != 0:
                return None
            if i < cols:
                y[i] = c[i] // di
    x = [sum(v[i][k] * y[k] for k in range(cols)) for i in range(cols)]
    # defensive re-check
    for i in range(rows):
        if sum(matrix[i][j] * x[j] for j in range(cols)) != vector[i]:
            return None
    return x
