"""Schinzel's norm, its determinant inequality, and the volume of its unit ball.

For ``x`` in R^N the norm is ``delta(x) = max(sum x_m^+, sum x_n^-)``,
which equals ``|sum x|/2 + sum|x|/2``. Its unit ball ``K_N`` has volume
``(2N)!/(N!)^3``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from . import numeric
from .errors import ConsistencyError, InputError
from .exact_linalg import det_exact, det_rational
from .rng import LANES, LaneGenerator


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def delta(x: Sequence) -> mpmath.mpf:
    """Schinzel norm of ``x``; both closed forms are evaluated and compared."""
    if len(x) == 0:
        raise InputError("delta needs a vector of dimension >= 1")
    xs = [numeric.to_mpf(v) for v in x]
    pos = mpmath.fsum(v for v in xs if v > 0)
    neg = mpmath.fsum(-v for v in xs if v < 0)
    max_form = max(pos, neg)
    half_form = (abs(mpmath.fsum(xs)) + mpmath.fsum(abs(v) for v in xs)) / 2
    tol = numeric.tolerance() * max(1, max_form)
    if abs(max_form - half_form) > tol:
        raise ConsistencyError(f"delta forms disagree: {max_form} vs {half_form}")
    return max_form


def delta_exact(x: Sequence) -> Fraction:
    """Schinzel norm over the rationals."""
    if len(x) == 0:
        raise InputError("delta needs a vector of dimension >= 1")
    xs = [Fraction(v) for v in x]
    return max(sum(v for v in xs if v > 0), sum(-v for v in xs if v < 0))


def delta_float(X: np.ndarray) -> np.ndarray:
    """Row-wise Schinzel norm in float64 (screening and sampling only)."""
    X = np.asarray(X, dtype=np.float64)
    pos = np.where(X > 0, X, 0.0).sum(axis=-1)
    neg = np.where(X < 0, -X, 0.0).sum(axis=-1)
    return np.maximum(pos, neg)


@dataclass(frozen=True)
class SchinzelResult:
    det: object
    bound: object
    holds: bool

    @property
    def margin(self):
        return numeric.to_mpf(self.bound) - abs(numeric.to_mpf(self.det))


def schinzel_bound(A: Sequence[Sequence]) -> SchinzelResult:
    """Compare ``|det A|`` with the product of the norms of the columns of ``A``.

    Rational input is handled exactly; anything else at working precision.
    """
    n = len(A)
    if n == 0 or any(len(row) != n for row in A):
        raise InputError("Schinzel bound needs a nonempty square matrix")
    columns = [[A[i][j] for i in range(n)] for j in range(n)]
    if all(_is_exact(x) for row in A for x in row):
        if all(isinstance(x, int) for row in A for x in row):
            det = det_exact(A)
        else:
            det = det_rational(A)
        bound = math.prod((delta_exact(c) for c in columns), start=Fraction(1))
        if bound.denominator == 1 and isinstance(det, int):
            bound = bound.numerator
        return SchinzelResult(det, bound, abs(det) <= bound)
    M = mpmath.matrix([[numeric.to_mpf(x) for x in row] for row in A])
    det = mpmath.det(M)
    bound = mpmath.fprod(delta(c) for c in columns)
    return SchinzelResult(det, bound, abs(det) <= bound + numeric.tolerance() * max(1, bound))


def delta_ball_volume(n: int) -> Fraction:
    """Exact volume ``(2n)!/(n!)^3`` of the unit ball of the norm in R^n."""
    if n < 1:
        raise InputError("dimension must be at least 1")
    return Fraction(math.factorial(2 * n), math.factorial(n) ** 3)


@dataclass(frozen=True)
class MonteCarloVolume:
    estimate: mpmath.mpf
    stderr: mpmath.mpf
    hits: int
    samples: int


def delta_ball_volume_mc(n: int, samples: int, seed: int) -> MonteCarloVolume:
    """Hit-or-miss estimate of the unit-ball volume over the box [-1, 1]^n.

    The box contains the ball because ``delta(x) <= 1`` forces ``|x_i| <= 1``.
    Streams follow the lane layout documented in :mod:`regbounds.rng`.
    """
    if n < 1 or samples < 1:
        raise InputError("dimension and sample count must be positive")
    gen = LaneGenerator(seed)
    hits = 0
    remaining = samples
    while remaining > 0:
        block = gen.uniform_block(n)
        inside = delta_float(block) <= 1.0
        take = min(remaining, LANES)
        hits += int(np.count_nonzero(inside[:take]))
        remaining -= take
    box = mpmath.mpf(2) ** n
    p = mpmath.mpf(hits) / samples
    stderr = box * mpmath.sqrt(p * (1 - p) / samples)
    return MonteCarloVolume(box * p, stderr, hits, samples)


def j_matrix(n: int) -> list[list[Fraction]]:
    """The (n+1) x n matrix ``J`` with ``delta(x) = ||J x||_1``."""
    if n < 1:
        raise InputError("dimension must be at least 1")
    half = Fraction(1, 2)
    rows = [[half * int(i == j) for j in range(n)] for i in range(n)]
    rows.append([-half] * n)
    return rows


def j_minor_square_sum(n: int) -> Fraction:
    """Sum over ``m`` of ``det(J with row m removed)**2``, exactly."""
    J = j_matrix(n)
    return sum(
        (det_rational(J[:m] + J[m + 1:]) ** 2 for m in range(n + 1)), start=Fraction(0)
    )


def j_matrix_identity_check(n: int) -> bool:
    return j_minor_square_sum(n) == Fraction(n + 1, 4 ** n)
