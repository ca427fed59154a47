"""Exact integer and rational linear algebra.

Vectors are tuples of ints, matrices are tuples of row tuples.  Rational
results use :class:`fractions.Fraction`, which keeps entries reduced.
Nothing in here touches floating point: every geometric claim downstream is
an exact identity, so the kernel has to be exact as well.

Matrices are dense and small (a few hundred rows at most), so there is no
sparse machinery and no attempt at asymptotic cleverness beyond fraction-free
elimination where it matters.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Sequence

Vector = tuple[int, ...]
IntMatrix = tuple[tuple[int, ...], ...]
RationalMatrix = tuple[tuple[Fraction, ...], ...]


class SingularMatrixError(ValueError):
    """A linear solve met a singular matrix.

    Carries a nonzero kernel vector as evidence of the rank defect.
    """

    def __init__(self, kernel_witness: Sequence[Fraction]):
        self.kernel_witness = tuple(kernel_witness)
        super().__init__(
            f"singular matrix; kernel contains {self.kernel_witness}"
        )


def primitive(v: Sequence[int]) -> Vector:
    """Divide an integer vector by the gcd of its entries.

    The result spans the same ray: parallel to ``v``, same orientation,
    coprime entries.
    """
    if len(v) == 0:
        raise ValueError("empty vector")
    g = math.gcd(*v)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(c // g for c in v)


def det2(a: Sequence[int], b: Sequence[int]) -> int:
    """Exact 2x2 determinant ``a0*b1 - a1*b0`` of a pair of plane vectors."""
    if len(a) != 2 or len(b) != 2:
        raise ValueError(
            f"det2 needs 2-dimensional vectors, got lengths {len(a)} and {len(b)}"
        )
    return a[0] * b[1] - a[1] * b[0]


def dot(a: Sequence, b: Sequence):
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return sum(x * y for x, y in zip(a, b) if x and y)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns ``(g, s, t)`` with ``s*a + t*b == g >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*[tuple(row) for row in m]))


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def _check_rect(m: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(m)
    if rows == 0:
        raise ValueError("empty matrix")
    cols = len(m[0])
    if any(len(row) != cols for row in m):
        raise ValueError("ragged matrix")
    return rows, cols


def det_int(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix, by fraction-free elimination."""
    rows, cols = _check_rect(m)
    if rows != cols:
        raise ValueError("determinant of a non-square matrix")
    a = [list(row) for row in m]
    n = rows
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_fraction(m: Sequence[Sequence]) -> Fraction:
    """Determinant of a square matrix with rational entries."""
    rows, cols = _check_rect(m)
    if rows != cols:
        raise ValueError("determinant of a non-square matrix")
    a = [[Fraction(x) for x in row] for row in m]
    n = rows
    det = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / a[k][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det


def smith_normal_form(
    m: Sequence[Sequence[int]],
) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Diagonalize an integer matrix by unimodular row and column operations.

    Returns ``(u, s, v)`` with ``u @ m @ v == s``, ``det u = ±1``,
    ``det v = ±1``, and ``s`` diagonal with nonnegative entries satisfying
    ``s[0][0] | s[1][1] | ...``.
    """
    rows, cols = _check_rect(m)
    a = [list(row) for row in m]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def sub_row(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def sub_col(i, j, q):  # col_i -= q * col_j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (
                    best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])
                ):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        if a[t][t] < 0:
            negate_row(t)
        # Clear row and column t; whenever a remainder shows up it is a
        # strictly smaller pivot candidate, so make it the pivot and retry.
        while True:
            restarted = False
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    sub_row(i, t, a[i][t] // a[t][t])
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        restarted = True
            if restarted:
                continue
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    sub_col(j, t, a[t][j] // a[t][t])
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        restarted = True
            if not restarted:
                break
        # Divisibility fix: the pivot must divide the rest of the block.
        pivot = a[t][t]
        offender = None
        for i in range(t + 1, rows):
            if any(a[i][j] % pivot for j in range(t + 1, cols)):
                offender = i
                break
        if offender is not None:
            sub_row(t, offender, -1)  # reruns the clearing with a smaller gcd
            continue
        t += 1

    s = tuple(tuple(row) for row in a)
    return tuple(tuple(r) for r in u), s, tuple(tuple(r) for r in v)


def invariant_factors(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """The diagonal of the Smith normal form of ``m``."""
    _, s, _ = smith_normal_form(m)
    return tuple(s[i][i] for i in range(min(len(s), len(s[0]))))


def _kernel_vector(g: Sequence[Sequence]) -> tuple[Fraction, ...]:
    """A nonzero rational vector in the kernel of singular square ``g``."""
    n = len(g)
    a = [[Fraction(x) for x in row] for row in g]
    pivot_col_of_row: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if a[i][c] != 0), None)
        if piv is None:
            x = [Fraction(0)] * n
            x[c] = Fraction(1)
            for rr in reversed(range(r)):
                cc = pivot_col_of_row[rr]
                x[cc] = -sum(
                    a[rr][j] * x[j] for j in range(cc + 1, n) if x[j]
                ) / a[rr][cc]
            return tuple(x)
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivot_col_of_row.append(c)
        r += 1
    raise ValueError("matrix is nonsingular; it has no kernel vector")


def solve_many(
    g: Sequence[Sequence], columns: Sequence[Sequence]
) -> list[tuple[Fraction, ...]]:
    """Solve ``g @ x = c`` exactly for each right-hand side in ``columns``.

    One Gauss-Jordan elimination is shared across all right-hand sides.
    Raises :class:`SingularMatrixError` (with a kernel witness) when ``g``
    is singular.
    """
    rows, cols = _check_rect(g)
    if rows != cols:
        raise ValueError("solve needs a square matrix")
    n = rows
    k = len(columns)
    for c in columns:
        if len(c) != n:
            raise ValueError("right-hand side has wrong length")
    a = [
        [Fraction(g[i][j]) for j in range(n)]
        + [Fraction(col[i]) for col in columns]
        for i in range(n)
    ]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError(_kernel_vector(g))
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [tuple(a[i][n + j] for i in range(n)) for j in range(k)]


def solve_rational(
    g: Sequence[Sequence], rhs: Sequence
) -> tuple[Fraction, ...]:
    """Exact solution of ``g @ x = rhs`` for square nonsingular ``g``."""
    return solve_many(g, [rhs])[0]


def negative_definite_failure(g: Sequence[Sequence]) -> int | None:
    """First leading principal minor order with the wrong sign, or None.

    A symmetric matrix is negative definite iff ``(-1)**k * minor_k > 0``
    for every ``k``; equivalently every pivot of the (unpivoted) symmetric
    elimination is negative.  Returns the 1-based order of the first minor
    violating the sign rule, or None when the matrix is negative definite.
    """
    rows, cols = _check_rect(g)
    if rows != cols:
        raise ValueError("definiteness needs a square matrix")
    for i in range(rows):
        for j in range(i + 1, cols):
            if g[i][j] != g[j][i]:
                raise ValueError("matrix is not symmetric")
    a = [[Fraction(x) for x in row] for row in g]
    for k in range(rows):
        p = a[k][k]
        if p >= 0:
            return k + 1
        for i in range(k + 1, rows):
            if a[i][k] != 0:
                f = a[i][k] / p
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return None


def is_negative_definite(g: Sequence[Sequence]) -> bool:
    """Exact negative-definiteness test for a symmetric rational matrix."""
    return negative_definite_failure(g) is None


def random_unimodular(seed: int, d: int, steps: int | None = None) -> IntMatrix:
    """Deterministic pseudo-random matrix in GL(d, Z).

    Built from elementary shears with entries bounded by 5 plus row swaps,
    so test matrices stay well conditioned for exact arithmetic.  The same
    seed always yields the same matrix; the determinant is ±1 by
    construction.
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    rng = random.Random(seed)
    m = [[int(i == j) for j in range(d)] for i in range(d)]
    if d == 1:
        return ((rng.choice((-1, 1)),),)
    if steps is None:
        steps = 6 * d
    for _ in range(steps):
        i, j = rng.sample(range(d), 2)
        op = rng.randrange(3)
        if op == 0:
            k = rng.choice((-5, -4, -3, -2, -1, 1, 2, 3, 4, 5))
            m[i] = [x + k * y for x, y in zip(m[i], m[j])]
        elif op == 1:
            k = rng.choice((-5, -4, -3, -2, -1, 1, 2, 3, 4, 5))
            for row in m:
                row[i] += k * row[j]
        else:
            m[i], m[j] = m[j], m[i]
    return tuple(tuple(row) for row in m)
