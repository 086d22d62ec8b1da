"""Exact integer and rational linear algebra.

Everything here works on Python ints (or :class:`fractions.Fraction`) and
never rounds. Conventions:

* Hermite normal form is row-style: ``H = U @ M`` is in row echelon form,
  pivots are positive and entries above a pivot lie in ``[0, pivot)``;
  zero rows sit at the bottom.
* Smith normal form returns ``D = U @ M @ V`` with nonnegative diagonal
  ``d1 | d2 | ...``.
* Kernel vectors are primitive with first nonzero entry positive.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError, SingularMatrixError


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple = field(repr=False)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise InputError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise InputError(f"entry count does not match a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = tuple(tuple(_as_int(x) for x in r) for r in rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> "IntMatrix":
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls.from_rows([[0] * cols for _ in range(rows)], cols=cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.column(j) for j in range(self.cols)], cols=self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InputError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = other.columns()
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.entries], cols=other.cols
        )

    def apply(self, x: Sequence[int]) -> tuple:
        """Matrix-vector product ``M @ x``."""
        if len(x) != self.cols:
            raise InputError("vector length does not match matrix columns")
        return tuple(sum(a * b for a, b in zip(r, x)) for r in self.entries)

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines += [" ".join(str(x) for x in r) for r in self.entries]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "IntMatrix":
        tokens = text.split()
        if len(tokens) < 2:
            raise InputError("matrix text must start with 'rows cols'")
        try:
            rows, cols = int(tokens[0]), int(tokens[1])
            values = [int(t) for t in tokens[2:]]
        except ValueError as exc:
            raise InputError(f"non-integer token in matrix text: {exc}") from None
        if len(values) != rows * cols:
            raise InputError(f"expected {rows * cols} entries, found {len(values)}")
        return cls.from_rows([values[i * cols:(i + 1) * cols] for i in range(rows)], cols=cols)


def _as_int(x) -> int:
    if isinstance(x, bool):
        raise InputError("booleans are not matrix entries")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    raise InputError(f"non-integer matrix entry {x!r}")


def _coerce(M) -> IntMatrix:
    if isinstance(M, IntMatrix):
        return M
    return IntMatrix.from_rows(M)


@dataclass(frozen=True)
class UnimodularWitness:
    transform: IntMatrix
    determinant: int

    def __post_init__(self):
        if self.determinant not in (1, -1):
            raise InputError(f"unimodular witness must have determinant +-1, not {self.determinant}")
        if det_exact(self.transform) != self.determinant:
            raise InputError("witness determinant does not match its transform")

    @classmethod
    def of(cls, transform) -> "UnimodularWitness":
        transform = _coerce(transform)
        return cls(transform, det_exact(transform))


def det_exact(M) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    M = _coerce(M)
    if not M.is_square:
        raise InputError(f"determinant of non-square {M.rows}x{M.cols} matrix")
    n = M.rows
    if n == 0:
        return 1
    a = M.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def det_rational(rows: Sequence[Sequence]) -> Fraction:
    """Determinant over Q by Gaussian elimination on Fractions."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise InputError("determinant of non-square matrix")
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det


def inverse_rational(M) -> list[list[Fraction]]:
    M = _coerce(M)
    if not M.is_square:
        raise InputError("inverse of non-square matrix")
    n = M.rows
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M.entries)]
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            raise SingularMatrixError("matrix is singular")
        a[k], a[p] = a[p], a[k]
        piv = a[k][k]
        a[k] = [x / piv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [r[n:] for r in a]


def hnf(M) -> tuple[IntMatrix, UnimodularWitness]:
    """Row Hermite normal form ``H = U @ M`` with its unimodular transform."""
    M = _coerce(M)
    m, n = M.rows, M.cols
    H = M.tolist()
    U = IntMatrix.identity(m).tolist()
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(H[i][c]), i))
            if p != r:
                H[r], H[p] = H[p], H[r]
                U[r], U[p] = U[p], U[r]
            if len(nz) == 1:
                break
            piv = H[r][c]
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // piv
                    H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        piv = H[r][c]
        for i in range(r):
            q = H[i][c] // piv
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return IntMatrix.from_rows(H, cols=n), UnimodularWitness.of(IntMatrix.from_rows(U, cols=m))


def rank(M) -> int:
    H, _ = hnf(M)
    return sum(1 for row in H.entries if any(row))


def snf(M) -> tuple[IntMatrix, UnimodularWitness, UnimodularWitness]:
    """Smith normal form ``D = U @ M @ V``."""
    M = _coerce(M)
    m, n = M.rows, M.cols
    D = M.tolist()
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()

    def swap_cols(a, i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]

    def add_col(a, dst, src, q):
        # column dst -= q * column src
        for row in a:
            row[dst] -= q * row[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            if pi != t:
                D[t], D[pi] = D[pi], D[t]
                U[t], U[pi] = U[pi], U[t]
            if pj != t:
                swap_cols(D, t, pj)
                swap_cols(V, t, pj)
            piv = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // piv
                    D[i] = [x - q * y for x, y in zip(D[i], D[t])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[t])]
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // piv
                    add_col(D, j, t, q)
                    add_col(V, j, t, q)
                    dirty = dirty or D[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % piv), None
            )
            if bad is None:
                break
            # fold an offending row into row t; the next pass lowers the pivot
            D[t] = [x + y for x, y in zip(D[t], D[bad])]
            U[t] = [x + y for x, y in zip(U[t], U[bad])]
        if t < m and t < n and D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return (
        IntMatrix.from_rows(D, cols=n),
        UnimodularWitness.of(IntMatrix.from_rows(U, cols=m)),
        UnimodularWitness.of(IntMatrix.from_rows(V, cols=n)),
    )


def elementary_divisors(M) -> list[int]:
    D, _, _ = snf(M)
    return [D[i, i] for i in range(min(D.rows, D.cols)) if D[i, i] != 0]


def _primitive(v: Iterable[int]) -> tuple:
    v = list(v)
    g = 0
    for x in v:
        g = _gcd(g, x)
    if g > 1:
        v = [x // g for x in v]
    first = next((x for x in v if x), 0)
    if first < 0:
        v = [-x for x in v]
    return tuple(v)


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def integer_kernel(M) -> list[tuple]:
    """Basis of ``{x in Z^n : M x = 0}``, returned in Hermite-normal order."""
    M = _coerce(M)
    D, _, V = snf(M)
    r = sum(1 for i in range(min(D.rows, D.cols)) if D[i, i] != 0)
    raw = [V.transform.column(j) for j in range(r, M.cols)]
    if not raw:
        return []
    H, _ = hnf(IntMatrix.from_rows(raw, cols=M.cols))
    return [_primitive(row) for row in H.entries if any(row)]


def column_upper_triangularize(M) -> tuple[IntMatrix, UnimodularWitness]:
    """Unimodular ``W`` with ``M @ W`` upper triangular, for nonsingular square ``M``.

    Obtained from the row HNF of ``M^T`` with its columns reversed.
    """
    M = _coerce(M)
    if not M.is_square:
        raise InputError("column triangularization needs a square matrix")
    if det_exact(M) == 0:
        raise SingularMatrixError("matrix is singular; cannot triangularize")
    n = M.rows
    rev = IntMatrix.from_rows([[int(j == n - 1 - i) for j in range(n)] for i in range(n)], cols=n)
    _, U = hnf(M.transpose() @ rev)
    W = U.transform.transpose() @ rev
    T = M @ W
    if any(T[i, j] for i in range(n) for j in range(i)):
        raise SingularMatrixError("matrix is singular; cannot triangularize")
    return T, UnimodularWitness.of(W)
