"""Exact dense linear algebra over a Field, for the small matrices used here.

Matrices are lists of lists of FieldElement.  Plain Gaussian elimination
with exact division; no pivot-growth concerns since arithmetic is exact.
"""

from __future__ import annotations

from .fields import Field, FieldElement

Matrix = list[list[FieldElement]]
Vector = list[FieldElement]


def identity(F: Field, n: int) -> Matrix:
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n, m, r = len(A), len(B), len(B[0]) if B else 0
    return [
        [sum((A[i][k] * B[k][j] for k in range(m)), A[i][0].field.zero) for j in range(r)]
        for i in range(n)
    ]


def mat_vec(A: Matrix, v: Vector) -> Vector:
    return [sum((A[i][k] * v[k] for k in range(len(v))), v[0].field.zero) for i in range(len(A))]


def transpose(A: Matrix) -> Matrix:
    return [list(row) for row in zip(*A)]


def det(F: Field, A: Matrix) -> FieldElement:
    n = len(A)
    M = [row[:] for row in A]
    d = F.one
    for col in range(n):
        piv = next((r for r in range(col, n) if not M[r][col].is_zero), None)
        if piv is None:
            return F.zero
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            d = -d
        d = d * M[col][col]
        inv = M[col][col].inv()
        for r in range(col + 1, n):
            if M[r][col].is_zero:
                continue
            factor = M[r][col] * inv
            for c in range(col, n):
                M[r][c] = M[r][c] - factor * M[col][c]
    return d


def solve(F: Field, A: Matrix, b: Vector) -> Vector | None:
    """One solution of A x = b, or None if inconsistent (A need not be square)."""
    n, m = len(A), len(A[0]) if A else 0
    M = [A[i][:] + [b[i]] for i in range(n)]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(m):
        piv = next((r for r in range(row, n) if not M[r][col].is_zero), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = M[row][col].inv()
        M[row] = [x * inv for x in M[row]]
        for r in range(n):
            if r != row and not M[r][col].is_zero:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[row])]
        pivots.append((row, col))
        row += 1
        if row == n:
            break
    for r in range(row, n):
        if not M[r][m].is_zero:
            return None
    x = [F.zero] * m
    for r, c in pivots:
        x[c] = M[r][m]
    return x


def nullspace(F: Field, A: Matrix) -> list[Vector]:
    """A basis of the right kernel of A."""
    n, m = len(A), len(A[0]) if A else 0
    M = [row[:] for row in A]
    pivots: list[int] = []
    row = 0
    for col in range(m):
        piv = next((r for r in range(row, n) if not M[r][col].is_zero), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = M[row][col].inv()
        M[row] = [x * inv for x in M[row]]
        for r in range(n):
            if r != row and not M[r][col].is_zero:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[row])]
        pivots.append(col)
        row += 1
        if row == n:
            break
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * m
        v[fc] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = -M[r][fc]
        basis.append(v)
    return basis


def invert(F: Field, A: Matrix) -> Matrix | None:
    n = len(A)
    M = [A[i][:] + identity(F, n)[i] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not M[r][col].is_zero), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = M[col][col].inv()
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and not M[r][col].is_zero:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M]


def random_unimodular(F: Field, n: int, rng, steps: int = 12) -> Matrix:
    """Random product of elementary row operations; always invertible."""
    M = identity(F, n)
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = F.sample(rng, 3)
        for col in range(n):
            M[i][col] = M[i][col] + c * M[j][col]
    return M
