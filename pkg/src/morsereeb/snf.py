"""Smith normal form over the integers, with transform matrices.

Exact arithmetic on Python ints; matrices here are tiny (relator counts),
so no attempt is made to be clever about coefficient growth.
"""

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class SNFResult:
    """U @ original @ V = diag(factors), with U, V unimodular.

    ``factors`` has length min(rows, cols): nonnegative, each dividing the
    next, zeros trailing.  ``coker_free_rank`` is the free rank of
    Z^cols / row-lattice, i.e. cols minus the number of nonzero factors.
    """

    factors: tuple[int, ...]
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]
    rows: int
    cols: int

    @property
    def rank(self) -> int:
        return sum(1 for d in self.factors if d != 0)

    @property
    def coker_free_rank(self) -> int:
        return self.cols - self.rank

    @property
    def torsion(self) -> tuple[int, ...]:
        """Invariant factors > 1, i.e. the finite cyclic summands."""
        return tuple(d for d in self.factors if d > 1)


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(matrix: Sequence[Sequence[int]], cols: int | None = None) -> SNFResult:
    """Diagonalize an integer matrix by unimodular row and column operations.

    ``cols`` is only needed when ``matrix`` has no rows.
    """
    a = [list(row) for row in matrix]
    m = len(a)
    if m:
        n = len(a[0])
        if any(len(row) != n for row in a):
            raise ValueError("ragged matrix")
        if cols is not None and cols != n:
            raise ValueError("cols disagrees with row length")
    else:
        if cols is None:
            raise ValueError("empty matrix needs explicit cols")
        n = cols
    u = _identity(m)
    v = _identity(n)

    def row_op(i, j, q):
        # row_i -= q*row_j
        for k in range(n):
            a[i][k] -= q * a[j][k]
        for k in range(m):
            u[i][k] -= q * u[j][k]

    def col_op(i, j, q):
        # col_i -= q*col_j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            if pivot != (t, t):
                if pivot[0] != t:
                    swap_rows(t, pivot[0])
                if pivot[1] != t:
                    swap_cols(t, pivot[1])
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    row_op(i, t, a[i][t] // a[t][t])
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    col_op(j, t, a[t][j] // a[t][t])
                    if a[t][j]:
                        dirty = True
            if dirty:
                continue
            # pivot now alone in its row and column; enforce divisibility
            d = a[t][t]
            culprit = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % d != 0:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            row_op(t, culprit, -1)  # fold the offending row into row t
        if t < min(m, n) and a[t][t] < 0:
            for k in range(n):
                a[t][k] = -a[t][k]
            for k in range(m):
                u[t][k] = -u[t][k]

    factors = tuple(a[i][i] for i in range(min(m, n)))
    return SNFResult(
        factors=factors,
        U=tuple(tuple(row) for row in u),
        V=tuple(tuple(row) for row in v),
        rows=m,
        cols=n,
    )


def in_row_lattice(rows: Sequence[Sequence[int]], target: Sequence[int], cols: int | None = None) -> bool:
    """Does ``target`` lie in the integer span of ``rows``?

    Decided via x A = target over Z: with U A V = D the system becomes
    y D = target V, solvable iff each component is divisible by the
    matching invariant factor (zero where the factor is zero).
    """
    res = smith_normal_form(rows, cols=cols)
    n = res.cols
    if len(target) != n:
        raise ValueError("target length disagrees with matrix columns")
    w = [sum(target[i] * res.V[i][j] for i in range(n)) for j in range(n)]
    for j in range(n):
        d = res.factors[j] if j < len(res.factors) else 0
        if d == 0:
            if w[j] != 0:
                return False
        elif w[j] % d != 0:
            return False
    return True
