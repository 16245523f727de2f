"""Exact integer and rational linear algebra.

Scalars are Python ``int`` and ``fractions.Fraction`` throughout; nothing in
this module touches floating point.  Matrices are small (desk scale), so the
algorithms favour clarity over asymptotics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import gcd
from typing import Sequence

from .errors import InvariantError


class IntMatrix:
    """Immutable dense integer matrix."""

    __slots__ = ("_rows", "rows", "cols")

    def __init__(self, entries: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in r) for r in entries)
        if not rows or not rows[0]:
            raise InvariantError("dimensions positive", "empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise InvariantError("dimensions positive", "ragged rows")
        self._rows = rows
        self.rows = len(rows)
        self.cols = width

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "IntMatrix":
        return cls(list(zip(*columns)))

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def tolist(self) -> list:
        return [list(r) for r in self._rows]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self._rows)))

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            cols = [other.column(j) for j in range(other.cols)]
            return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._rows])
        vec = tuple(other)
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self._rows)

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return f"IntMatrix({self.tolist()})"

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def submatrix(self, rows: Sequence[int]) -> "IntMatrix":
        return IntMatrix([self._rows[i] for i in rows])

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        return int(_det_fraction([[Fraction(x) for x in r] for r in self._rows]))

    def rank(self) -> int:
        return rank([[Fraction(x) for x in r] for r in self._rows])


def _det_fraction(m) -> Fraction:
    m = [list(r) for r in m]
    n = len(m)
    det = Fraction(1)
    for j in range(n):
        piv = next((i for i in range(j, n) if m[i][j] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != j:
            m[j], m[piv] = m[piv], m[j]
            det = -det
        det *= m[j][j]
        for i in range(j + 1, n):
            f = m[i][j] / m[j][j]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[j])]
    return det


def rank(m) -> int:
    """Rank of a rational matrix given as nested sequences."""
    rows = [[Fraction(x) for x in r] for r in m]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for j in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][j] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][j] != 0:
                f = rows[i][j] / rows[r][j]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def solve_rational(m, b):
    """Solve ``m x = b`` over Q.

    Returns the unique solution as a tuple of Fractions, or ``None`` when the
    system is inconsistent.  Raises ``ValueError`` if the solution is not
    unique.
    """
    rows = [[Fraction(x) for x in r] + [Fraction(y)] for r, y in zip(m, b)]
    ncols = len(rows[0]) - 1
    pivots = []
    r = 0
    for j in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][j] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][j]
        rows[r] = [a / pv for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][j] != 0:
                f = rows[i][j]
                rows[i] = [a - f * c for a, c in zip(rows[i], rows[r])]
        pivots.append(j)
        r += 1
    if any(all(a == 0 for a in row[:-1]) and row[-1] != 0 for row in rows):
        return None
    if len(pivots) < ncols:
        raise ValueError("solution not unique")
    x = [Fraction(0)] * ncols
    for i, j in enumerate(pivots):
        x[j] = rows[i][-1]
    return tuple(x)


def solve_integer(m, b):
    """Integer solution of a full-column-rank system, or ``None``."""
    x = solve_rational(m, b)
    if x is None or any(v.denominator != 1 for v in x):
        return None
    return tuple(int(v) for v in x)


def _xgcd(a: int, b: int):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(M: IntMatrix):
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular, ``U @ M == H``; ``H`` is in row
    echelon form with positive pivots and entries above each pivot reduced
    into ``[0, pivot)``.
    """
    if M.is_zero():
        raise InvariantError("nonzero matrix")
    m, n = M.rows, M.cols
    H = M.tolist()
    U = IntMatrix.identity(m).tolist()
    r = 0
    for j in range(n):
        if r == m:
            break
        # gcd-combine rows r..m-1 into row r for column j
        for i in range(r + 1, m):
            if H[i][j] == 0:
                continue
            g, s, t = _xgcd(H[r][j], H[i][j])
            a, b = H[r][j] // g, H[i][j] // g
            H[r], H[i] = (
                [s * x + t * y for x, y in zip(H[r], H[i])],
                [-b * x + a * y for x, y in zip(H[r], H[i])],
            )
            U[r], U[i] = (
                [s * x + t * y for x, y in zip(U[r], U[i])],
                [-b * x + a * y for x, y in zip(U[r], U[i])],
            )
        if H[r][j] == 0:
            continue
        if H[r][j] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        p = H[r][j]
        for i in range(r):
            q = H[i][j] // p
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return IntMatrix(H), IntMatrix(U)


@dataclass(frozen=True)
class SmithDecomposition:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def invariant_factors(self) -> list:
        k = min(self.D.rows, self.D.cols)
        return [self.D[i, i] for i in range(k) if self.D[i, i] != 0]


def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
    """Smith normal form ``U @ M @ V == D`` with the divisibility chain."""
    if M.is_zero():
        raise InvariantError("nonzero matrix")
    m, n = M.rows, M.cols
    D = M.tolist()
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()

    def col_op(j1, j2, a, b, c, d):
        # (col j1, col j2) <- (a*c1 + b*c2, c*c1 + d*c2)
        for mat in (D, V):
            for row in mat:
                x, y = row[j1], row[j2]
                row[j1], row[j2] = a * x + b * y, c * x + d * y

    def row_op(i1, i2, a, b, c, d):
        for mat in (D, U):
            x, y = mat[i1], mat[i2]
            mat[i1] = [a * p + b * q for p, q in zip(x, y)]
            mat[i2] = [c * p + d * q for p, q in zip(x, y)]

    t = 0
    while t < min(m, n):
        nz = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j] != 0]
        if not nz:
            break
        _, i0, j0 = min(nz)
        if i0 != t:
            row_op(t, i0, 0, 1, 1, 0)
        if j0 != t:
            col_op(t, j0, 0, 1, 1, 0)
        while True:
            changed = False
            for i in range(t + 1, m):
                if D[i][t] != 0:
                    if D[i][t] % D[t][t] == 0:
                        row_op(t, i, 1, 0, -(D[i][t] // D[t][t]), 1)
                    else:
                        g, s, u = _xgcd(D[t][t], D[i][t])
                        a, b = D[t][t] // g, D[i][t] // g
                        row_op(t, i, s, u, -b, a)
                    changed = True
            for j in range(t + 1, n):
                if D[t][j] != 0:
                    if D[t][j] % D[t][t] == 0:
                        col_op(t, j, 1, 0, -(D[t][j] // D[t][t]), 1)
                    else:
                        g, s, u = _xgcd(D[t][t], D[t][j])
                        a, b = D[t][t] // g, D[t][j] // g
                        col_op(t, j, s, u, -b, a)
                    changed = True
            if changed:
                continue
            p = D[t][t]
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            # fold the offending row into row t and repeat
            row_op(t, bad[0], 1, 1, 0, 1)
        if D[t][t] < 0:
            row_op(t, t, -1, 0, 0, -1)
        t += 1
    return SmithDecomposition(IntMatrix(U), IntMatrix(D), IntMatrix(V))


def integer_kernel(M: IntMatrix) -> IntMatrix:
    """Z-basis of ``{x : M x = 0}``, returned as the columns of a matrix."""
    H, U = hermite_normal_form(M.T)
    zero_rows = [i for i in range(H.rows) if all(x == 0 for x in H.row(i))]
    if not zero_rows:
        raise ValueError("trivial kernel")
    return IntMatrix.from_columns([U.row(i) for i in zero_rows])


def _inverse_unimodular(M: IntMatrix) -> IntMatrix:
    n = M.rows
    cols = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        x = solve_integer(M.tolist(), e)
        if x is None:
            raise ValueError("matrix is not unimodular")
        cols.append(x)
    return IntMatrix.from_columns(cols)


def complete_to_unimodular(v: Sequence[int]) -> IntMatrix:
    """Unimodular matrix whose first row is the primitive vector ``v``."""
    if not any(v):
        raise ValueError("zero vector")
    g = 0
    for x in v:
        g = gcd(g, x)
    if g != 1:
        raise ValueError("vector is not primitive")
    # column operations V with v @ V = e_1, then first row of V^-1 is v
    H, U = hermite_normal_form(IntMatrix([[x] for x in v]))
    # U @ v^T = (1, 0, ..., 0)^T, so v @ U^T = e_1
    return _inverse_unimodular(U.T)


def gcd_maximal_minors(B: IntMatrix) -> int:
    """Positive gcd of all maximal minors of an ``n x m`` matrix (n >= m)."""
    m = B.cols
    g = 0
    for rows in combinations(range(B.rows), m):
        g = gcd(g, B.submatrix(rows).det())
    if g == 0:
        raise InvariantError("rank(B) = 2", "all maximal minors vanish")
    return g


def gale_dual(B: IntMatrix) -> IntMatrix:
    """Integer matrix ``A`` with ``A @ B == 0``, full rank, first row all ones.

    The rows span the saturated lattice of integer vectors orthogonal to the
    columns of ``B``.
    """
    n, m = B.rows, B.cols
    if n <= m:
        raise InvariantError("n > 2", f"B has {n} rows")
    if B.rank() != m:
        raise InvariantError("rank(B) = 2", "rank-deficient B")
    if any(sum(B.column(j)) != 0 for j in range(m)):
        raise InvariantError("column sums", "columns of B must sum to zero")
    K = integer_kernel(B.T).T  # rows: Z-basis of the left kernel
    H, _ = hermite_normal_form(K)
    basis = [H.row(i) for i in range(H.rows) if any(H.row(i))]
    ones = (1,) * n
    lam = solve_integer([list(col) for col in zip(*basis)], ones)
    W = complete_to_unimodular(lam)
    A = W @ IntMatrix(basis)
    rest = [A.row(i) for i in range(1, A.rows)]
    if rest:
        Hr, _ = hermite_normal_form(IntMatrix(rest))
        rest = [Hr.row(i) for i in range(Hr.rows)]
    return IntMatrix([ones] + rest)


@dataclass(frozen=True)
class LatticeQuotient:
    """Finite group ``L / L_B`` with ``L = ker_Z(A)``.

    ``kernel_basis`` holds a Z-basis of ``L`` as columns, ``coords`` the
    integer matrix expressing the columns of ``B`` in that basis.
    """

    order: int
    invariant_factors: tuple
    coset_reps: tuple
    kernel_basis: IntMatrix
    coords: IntMatrix
    smith: SmithDecomposition

    def coset_index(self, u: Sequence[int]) -> int:
        """Index of the coset of ``u`` (a vector in ``L``) among ``coset_reps``."""
        w = solve_integer(self.kernel_basis.tolist(), u)
        if w is None:
            raise ValueError("vector is not in the saturated lattice")
        return self.coset_index_coords(w)

    def coset_index_coords(self, w: Sequence[int]) -> int:
        uw = self.smith.U @ w
        diag = [self.smith.D[i, i] for i in range(self.smith.D.rows)]
        key = tuple(x % d for x, d in zip(uw, diag))
        return self._index[key]

    @cached_property
    def _index(self):
        diag = [self.smith.D[i, i] for i in range(self.smith.D.rows)]
        keys = product(*[range(d) for d in diag])
        return {k: i for i, k in enumerate(keys)}


def lattice_quotient(B: IntMatrix, A: IntMatrix) -> LatticeQuotient:
    """Structure of ``ker_Z(A) / L_B`` with explicit coset representatives."""
    if not (A @ B).is_zero():
        raise InvariantError("A @ B = 0", "inconsistent A/B")
    K = integer_kernel(A)
    if K.cols != B.cols:
        raise InvariantError("A @ B = 0", "kernel rank does not match B")
    cols = []
    for j in range(B.cols):
        w = solve_integer(K.tolist(), B.column(j))
        if w is None:
            raise InvariantError("A @ B = 0", "B is not inside ker(A)")
        cols.append(w)
    Mc = IntMatrix.from_columns(cols)
    snf = smith_normal_form(Mc)
    diag = [snf.D[i, i] for i in range(snf.D.rows)]
    Uinv = _inverse_unimodular(snf.U)
    reps = []
    for key in product(*[range(d) for d in diag]):
        w = Uinv @ key
        reps.append(K @ w)
    order = 1
    for d in diag:
        order *= d
    return LatticeQuotient(
        order=order,
        invariant_factors=tuple(d for d in diag if d != 1),
        coset_reps=tuple(reps),
        kernel_basis=K,
        coords=Mc,
        smith=snf,
    )


def in_lattice(B: IntMatrix, u: Sequence[int]) -> bool:
    """Whether ``u`` lies in the lattice spanned by the columns of ``B``."""
    return solve_integer(B.tolist(), u) is not None
