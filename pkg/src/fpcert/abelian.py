"""Integer relation matrices, Smith normal form and mod-p ranks.

Everything here is arbitrary-precision: matrices are plain lists of Python
ints.  The SNF tracks unimodular transforms U, V (products of elementary
operations, so |det| = 1 by construction) and asserts ``U @ M @ V == S`` on
every call.  ``p_rank`` deliberately does not reuse the SNF: it is a separate
Gaussian elimination over GF(p), so the two routes check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .presentations import Presentation
from .words import require_prime

Matrix = list[list[int]]


def relation_matrix(q: Presentation) -> Matrix:
    """One row per relator of generator exponent sums."""
    return [[r.exponent_sum(g) for g in range(q.ngens)] for r in q.relators]


def _identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    cols = len(b[0])
    inner = len(b)
    return [
        [sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)]
        for row in a
    ]


@dataclass(frozen=True)
class SNFResult:
    """``U @ M @ V == S`` with S diagonal, entries nonnegative, chained."""

    matrix: tuple[tuple[int, ...], ...]
    s: tuple[tuple[int, ...], ...]
    u: tuple[tuple[int, ...], ...]
    v: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> tuple[int, ...]:
        m = len(self.s)
        n = len(self.s[0]) if m else 0
        return tuple(self.s[i][i] for i in range(min(m, n)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``x*a + y*b == g`` and ``g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def smith_normal_form(m: Sequence[Sequence[int]]) -> SNFResult:
    """Diagonalize over Z with unimodular row/column operations.

    Entries are cleared with two-row (two-column) gcd combines rather than
    repeated division steps: each combine zeroes its target outright and
    strictly shrinks the pivot, which keeps intermediate entries from the
    compounding growth a divide-and-swap loop suffers on bad inputs.
    """
    a: Matrix = [list(map(int, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    for row in a:
        if len(row) != cols:
            raise ValueError("ragged matrix")
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

    def add_row(src, dst, c):
        # row[dst] += c * row[src]
        arow, srow = a[dst], a[src]
        for k in range(cols):
            arow[k] += c * srow[k]
        urow, usrc = u[dst], u[src]
        for k in range(rows):
            urow[k] += c * usrc[k]

    def add_col(src, dst, c):
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def combine_rows(i1, i2, x, y, w, z):
        # (row i1, row i2) <- (x*i1 + y*i2, w*i1 + z*i2); x*z - y*w == 1
        for mat, width in ((a, cols), (u, rows)):
            r1, r2 = mat[i1], mat[i2]
            for k in range(width):
                p, q = r1[k], r2[k]
                r1[k] = x * p + y * q
                r2[k] = w * p + z * q

    def combine_cols(j1, j2, x, y, w, z):
        for mat in (a, v):
            for row in mat:
                p, q = row[j1], row[j2]
                row[j1] = x * p + y * q
                row[j2] = w * p + z * q

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # locate a smallest nonzero pivot in the trailing submatrix
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x != 0 and (pivot is None or abs(x) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        # clear row and column t; a combine shrinks |pivot| to a proper
        # divisor, so the alternation terminates
        while True:
            shrank = False
            for i in range(t + 1, rows):
                x = a[i][t]
                if x == 0:
                    continue
                piv = a[t][t]
                if x % piv == 0:
                    add_row(t, i, -(x // piv))
                else:
                    g, c1, c2 = _xgcd(piv, x)
                    combine_rows(t, i, c1, c2, -(x // g), piv // g)
                    shrank = True
            for j in range(t + 1, cols):
                x = a[t][j]
                if x == 0:
                    continue
                piv = a[t][t]
                if x % piv == 0:
                    add_col(t, j, -(x // piv))
                else:
                    g, c1, c2 = _xgcd(piv, x)
                    combine_cols(t, j, c1, c2, -(x // g), piv // g)
                    shrank = True
            if not shrank:
                break
        # pivot must also divide the rest of the submatrix for the chain
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue  # redo position t with the longer row folded in
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    check = _mat_mul(_mat_mul(u, [list(row) for row in m]), v)
    if check != a:
        raise AssertionError("SNF self-check failed: U @ M @ V != S")
    freeze = lambda mat: tuple(tuple(row) for row in mat)
    return SNFResult(freeze([list(map(int, row)) for row in m]), freeze(a), freeze(u), freeze(v))


def det(m: Sequence[Sequence[int]]) -> Fraction:
    """Exact determinant by fraction-free-ish elimination (test helper)."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    a = [[Fraction(x) for x in row] for row in m]
    sign = 1
    for t in range(n):
        piv = next((i for i in range(t, n) if a[i][t] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != t:
            a[t], a[piv] = a[piv], a[t]
            sign = -sign
        for i in range(t + 1, n):
            f = a[i][t] / a[t][t]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[t])]
    out = Fraction(sign)
    for t in range(n):
        out *= a[t][t]
    return out


def abelian_invariants(q: Presentation) -> tuple[tuple[int, ...], int]:
    """``(torsion, betti)`` of the abelianization, torsion as a divisor chain."""
    snf = smith_normal_form(relation_matrix(q))
    torsion = tuple(d for d in snf.diagonal if d > 1)
    betti = q.ngens - snf.rank
    return torsion, betti


def p_rank(q: Presentation, p: int) -> int:
    """``dim_{F_p} (G^{ab} tensor F_p)``: generators minus mod-p matrix rank.

    Independent of the SNF on purpose (plain GF(p) elimination).
    """
    require_prime(p)
    a = [[x % p for x in row] for row in relation_matrix(q)]
    rows = len(a)
    cols = q.ngens
    rank = 0
    col = 0
    while col < cols and rank < rows:
        piv = next((i for i in range(rank, rows) if a[i][col] % p != 0), None)
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], -1, p)
        a[rank] = [(x * inv) % p for x in a[rank]]
        for i in range(rows):
            if i != rank and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
        col += 1
    return cols - rank
