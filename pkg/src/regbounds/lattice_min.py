"""Successive minima of a lattice under the Schinzel norm.

The norm has no inner product behind it, so minima are found by Euclidean
enumeration inside an envelope: ``||x||_2 <= ||x||_1 <= 2 delta(x)``. Every
lattice point carries exact integer coordinates with respect to the basis,
and independence is always decided on those integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from . import numeric
from .delta_norm import delta, delta_ball_volume, delta_float
from .errors import ConsistencyError, EnumerationCapError, InputError, SingularMatrixError
from .exact_linalg import (
    IntMatrix,
    UnimodularWitness,
    column_upper_triangularize,
    det_exact,
    inverse_rational,
    rank,
)

RADIUS_GROWTH_CAP = 2 ** 10


@dataclass(frozen=True)
class LatticePoint:
    coords: tuple
    vector: tuple
    delta: mpmath.mpf

    @property
    def norm2(self) -> mpmath.mpf:
        return mpmath.sqrt(mpmath.fsum(v * v for v in self.vector))


class LatticeInstance:
    """Lattice ``{A xi : xi in Z^N}``; the columns of ``A`` are the basis vectors."""

    def __init__(self, basis: Sequence[Sequence]):
        n = len(basis)
        if n == 0 or any(len(r) != n for r in basis):
            raise InputError("lattice basis must be a nonempty square matrix")
        self.dimension = n
        self.basis = tuple(tuple(numeric.to_mpf(x) for x in row) for row in basis)
        self.det = abs(mpmath.det(mpmath.matrix([list(r) for r in self.basis])))
        if self.det <= numeric.tolerance():
            raise SingularMatrixError("lattice basis is degenerate")

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "LatticeInstance":
        n = len(columns)
        return cls([[columns[j][i] for j in range(n)] for i in range(n)])

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.basis)

    def vector(self, coords: Sequence[int]) -> tuple:
        return tuple(mpmath.fsum(a * int(c) for a, c in zip(row, coords)) for row in self.basis)

    def point(self, coords: Sequence[int]) -> LatticePoint:
        coords = tuple(int(c) for c in coords)
        vec = self.vector(coords)
        return LatticePoint(coords, vec, delta(vec))

    def scaled(self, c) -> "LatticeInstance":
        c = numeric.to_mpf(c)
        return LatticeInstance([[c * x for x in row] for row in self.basis])

    def float_basis(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.basis], dtype=np.float64)


def _sign_normalized(coords) -> bool:
    first = next((c for c in coords if c), 0)
    return first > 0


def _enumerate_coords(basis: np.ndarray, radius: float) -> list[tuple]:
    """Integer coordinate vectors with ``||basis @ x||_2 <= radius`` (Fincke-Pohst).

    Runs in float64 with a slightly inflated radius; callers filter exactly.
    """
    n = basis.shape[1]
    bstar = np.zeros_like(basis)
    mu = np.zeros((n, n))
    B = np.zeros(n)
    for i in range(n):
        v = basis[:, i].copy()
        for j in range(i):
            mu[i, j] = basis[:, i] @ bstar[:, j] / B[j]
            v -= mu[i, j] * bstar[:, j]
        bstar[:, i] = v
        B[i] = v @ v
    if np.any(B <= 0):
        raise SingularMatrixError("degenerate basis in enumeration")
    r2 = (radius * (1 + 1e-9) + 1e-12) ** 2
    out: list[tuple] = []
    x = [0] * n

    def recurse(j: int, remaining: float):
        c = -sum(mu[i, j] * x[i] for i in range(j + 1, n))
        span = math.sqrt(max(remaining, 0.0) / B[j])
        lo, hi = math.ceil(c - span), math.floor(c + span)
        for xj in range(lo, hi + 1):
            rem = remaining - (xj - c) ** 2 * B[j]
            if rem < -1e-12 * r2:
                continue
            x[j] = xj
            if j == 0:
                out.append(tuple(x))
            else:
                recurse(j - 1, rem)
        x[j] = 0

    recurse(n - 1, r2)
    return [c for c in out if any(c) and _sign_normalized(c)]


def _ordered(points: list[LatticePoint]) -> list[LatticePoint]:
    """Sort by norm value; values within tolerance tie and fall back to coordinates."""
    points = sorted(points, key=lambda p: p.delta)
    tol = numeric.tolerance()
    out: list[LatticePoint] = []
    cluster: list[LatticePoint] = []
    for p in points:
        if cluster and p.delta - cluster[0].delta > tol:
            out.extend(sorted(cluster, key=lambda q: q.coords))
            cluster = []
        cluster.append(p)
    out.extend(sorted(cluster, key=lambda q: q.coords))
    return out


def enumerate_short_vectors(L: LatticeInstance, radius) -> list[LatticePoint]:
    """Nonzero lattice points of Euclidean length at most ``radius``, one per +- pair."""
    radius = numeric.to_mpf(radius)
    if radius <= 0:
        raise InputError("enumeration radius must be positive")
    tol = numeric.tolerance()
    pts = []
    for coords in _enumerate_coords(L.float_basis(), float(radius)):
        p = L.point(coords)
        if p.norm2 <= radius + tol:
            pts.append(p)
    return _ordered(pts)


@dataclass(frozen=True)
class MinimaResult:
    lambdas: tuple
    vectors: tuple
    det: mpmath.mpf

    @property
    def dimension(self) -> int:
        return len(self.lambdas)

    @property
    def product(self) -> mpmath.mpf:
        return mpmath.fprod(self.lambdas)

    @property
    def product_constant(self) -> Fraction:
        """``2^N (N!)^3 / (2N)!``, the factor bounding the product by ``|det A|``."""
        n = self.dimension
        return Fraction(2 ** n) / delta_ball_volume(n)

    @property
    def product_bound(self) -> mpmath.mpf:
        return numeric.to_mpf(self.product_constant) * self.det

    def minkowski_sides(self) -> tuple:
        """``(Vol(K_N) * prod(lambda), 2^N |det A|)``."""
        n = self.dimension
        return numeric.to_mpf(delta_ball_volume(n)) * self.product, mpmath.mpf(2) ** n * self.det

    def satisfies_bounds(self) -> bool:
        tol = numeric.tolerance()
        lhs, rhs = self.minkowski_sides()
        return self.product <= self.product_bound + tol and lhs <= rhs + tol


def _greedy_independent(points: list[LatticePoint], n: int) -> list[LatticePoint]:
    chosen: list[LatticePoint] = []
    for p in points:
        trial = [q.coords for q in chosen] + [p.coords]
        if rank(IntMatrix.from_rows(trial, cols=n)) == len(trial):
            chosen.append(p)
            if len(chosen) == n:
                break
    return chosen


def successive_minima_delta(L: LatticeInstance) -> MinimaResult:
    """Successive minima under the Schinzel norm, exact by enumeration."""
    n = L.dimension
    tol = numeric.tolerance()
    basis_f = L.float_basis()
    bound = min(delta(L.column(j)) for j in range(n))
    cap = bound * RADIUS_GROWTH_CAP
    while True:
        coords = _enumerate_coords(basis_f, 2 * float(bound))
        screen = float(bound) * (1 + 1e-9) + 1e-12
        if coords:
            arr = np.array(coords, dtype=np.float64)
            approx = delta_float(arr @ basis_f.T)
            coords = [c for c, d in zip(coords, approx) if d <= screen]
        pts = [p for p in (L.point(c) for c in coords) if p.delta <= bound + tol]
        chosen = _greedy_independent(_ordered(pts), n)
        if len(chosen) == n:
            break
        bound *= 2
        if bound > cap:
            raise EnumerationCapError(
                f"no {n} independent vectors within {RADIUS_GROWTH_CAP}x the initial radius"
            )
    return MinimaResult(tuple(p.delta for p in chosen), tuple(chosen), L.det)


@dataclass(frozen=True)
class MahlerWeylResult:
    basis: tuple
    witness: UnimodularWitness
    bounds: tuple

    def satisfies_bounds(self) -> bool:
        tol = numeric.tolerance()
        return all(b.delta <= bnd + tol for b, bnd in zip(self.basis, self.bounds))


def _round_half(q: Fraction) -> int:
    return math.floor(q + Fraction(1, 2))


def mahler_weyl_basis(L: LatticeInstance, independent: Sequence[LatticePoint]) -> MahlerWeylResult:
    """Exchange independent lattice points ``l_1..l_N`` for a basis ``b_1..b_N``.

    Each ``b_j`` lies in the span of ``l_1..l_j`` and satisfies
    ``delta(b_j) <= max(delta(l_j), (delta(l_1) + ... + delta(l_j)) / 2)``.
    """
    n = L.dimension
    if len(independent) != n:
        raise InputError(f"need {n} independent points, got {len(independent)}")
    C = IntMatrix.from_columns([p.coords for p in independent], rows=n)
    d = det_exact(C)
    if d == 0:
        raise InputError("input lattice points are linearly dependent")
    Cinv = inverse_rational(C)
    adj = IntMatrix.from_rows([[int(x * d) for x in row] for row in Cinv], cols=n)
    _, W = column_upper_triangularize(adj)
    X = W.transform.columns()
    cols_C = C.columns()

    def coeffs(x):
        return [sum(Cinv[i][k] * x[k] for k in range(n)) for i in range(n)]

    out_cols = []
    for j in range(n):
        x = list(X[j])
        t = coeffs(x)
        if t[j] < 0:
            x = [-v for v in x]
            t = [-v for v in t]
        for i in range(j):
            k = _round_half(t[i])
            if k:
                x = [a - k * b for a, b in zip(x, cols_C[i])]
                t[i] -= k
        if t[j] == 1:
            x = list(cols_C[j])
        out_cols.append(tuple(x))

    witness = UnimodularWitness.of(IntMatrix.from_columns(out_cols, rows=n))
    basis = tuple(L.point(c) for c in out_cols)
    deltas = [p.delta for p in independent]
    bounds = tuple(max(deltas[j], mpmath.fsum(deltas[: j + 1]) / 2) for j in range(n))
    result = MahlerWeylResult(basis, witness, bounds)
    if not result.satisfies_bounds():
        raise ConsistencyError("Mahler-Weyl basis exceeds its norm bounds")
    return result


def mahler_weyl_constant(n: int) -> Fraction:
    """``N!/2^(N-1)``: growth of the norm product when minima become a basis."""
    return Fraction(math.factorial(n), 2 ** (n - 1))
