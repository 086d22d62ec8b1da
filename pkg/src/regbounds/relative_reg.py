"""Relative units and relative regulators of an extension ``l/k``.

The norm map on free unit quotients ``F_l -> F_k`` is given as an integer
matrix (column ``j`` holds the ``F_k`` exponents of the norm of the
``j``-th basis unit of ``l``). Relative units are its integer kernel.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import mpmath

from . import numeric
from .errors import ConsistencyError, InputError
from .exact_linalg import IntMatrix, det_exact, elementary_divisors, hnf, integer_kernel, rank
from .report import Check
from .sunit_model import BoundReport, SUnitSystem, Witness, height, regulator


class ExtensionData:
    def __init__(self, k_sys: SUnitSystem, l_sys: SUnitSystem, fiber_map: Mapping[str, str],
                 norm_matrix: IntMatrix, relative_degree: int, relative_units=None, label: str = ""):
        self.label = label
        self.k = k_sys
        self.l = l_sys
        self.relative_degree = int(relative_degree)
        self.fiber_map = dict(fiber_map)
        self.norm_matrix = norm_matrix
        self.declared_relative_units = None if relative_units is None else [tuple(v) for v in relative_units]
        self._validate()

    def _validate(self):
        k, l = self.k, self.l
        if not (k.all_archimedean and l.all_archimedean):
            raise InputError("extension data must be restricted to archimedean places")
        if self.relative_degree < 1 or l.degree != self.relative_degree * k.degree:
            raise InputError(f"[l:Q] = {l.degree} is not [l:k]*[k:Q] = {self.relative_degree}*{k.degree}")
        l_ids = {p.id for p in l.places}
        k_ids = {p.id for p in k.places}
        if set(self.fiber_map) != l_ids:
            raise InputError("fiber map must cover every archimedean place of l exactly")
        if not set(self.fiber_map.values()) <= k_ids:
            raise InputError("fiber map targets unknown places of k")
        for v in k.places:
            total = sum(w.local_degree for w in self.fiber(v.id))
            if total != self.relative_degree * v.local_degree:
                raise InputError(
                    f"local degrees over {v.id!r} sum to {total}, expected {self.relative_degree * v.local_degree}"
                )
        N = self.norm_matrix
        if (N.rows, N.cols) != (k.rank, l.rank):
            raise InputError(f"norm matrix must be {k.rank}x{l.rank}, got {N.rows}x{N.cols}")
        if rank(N) != k.rank:
            raise InputError("norm image has rank below r(k); its index in F_k is infinite")
        if self.relative_rank == 0:
            raise InputError("r(l/k) = 0 (CM extension): relative regulator is not defined here")

    @property
    def relative_rank(self) -> int:
        return self.l.rank - self.k.rank

    def fiber(self, v_id: str) -> list:
        return [w for w in self.l.places if self.fiber_map[w.id] == v_id]

    def selections(self):
        """All choices of one place of ``l`` above each place of ``k``."""
        fibers = [[w.id for w in self.fiber(v.id)] for v in self.k.places]
        for choice in itertools.product(*fibers):
            yield dict(zip((v.id for v in self.k.places), choice))

    def default_selection(self) -> dict:
        return next(self.selections())

    def norm_logs(self, exponents: Sequence[int]) -> tuple:
        """``log ||Norm(u)||_v`` over places of ``k`` for ``u`` given in ``F_l`` exponents."""
        k_exps = self.norm_matrix.apply(exponents)
        return self.k.log_row(k_exps)

    @classmethod
    def from_dict(cls, data: Mapping) -> "ExtensionData":
        for key in ("k", "l", "fiber_map", "relative_degree", "norm_matrix"):
            if key not in data:
                raise InputError(f"missing field {key!r}")
        k_sys = SUnitSystem.from_dict(data["k"])
        l_sys = SUnitSystem.from_dict(data["l"])
        N = parse_matrix_field(data["norm_matrix"], k_sys.rank, l_sys.rank)
        return cls(k_sys, l_sys, {str(a): str(b) for a, b in data["fiber_map"].items()}, N,
                   data["relative_degree"], data.get("relative_units"), label=str(data.get("label", "")))


def parse_matrix_field(value, rows: int, cols: int) -> IntMatrix:
    if isinstance(value, str):
        return IntMatrix.from_text(value)
    if isinstance(value, Mapping):
        value, rows, cols = value.get("entries", []), value.get("rows", rows), value.get("cols", cols)
    if not value:
        # an empty list cannot carry its column count; take it from the systems
        return IntMatrix.zeros(0, cols) if rows == 0 else IntMatrix.from_rows([])
    return IntMatrix.from_rows(value, cols=cols)


def check_norm_identity(ext: ExtensionData, l_logs: Mapping[str, object], norm_logs: Mapping[str, object]) -> bool:
    """``[l:k] * sum_{w|v} log|u|_w == log|Norm u|_v`` at every place ``v`` of ``k``.

    Inputs are unnormalized ``log ||.||`` values keyed by place id, so
    non-units (e.g. ``sqrt 2``) can be checked too.
    """
    tol = numeric.tolerance()
    dl, dk = ext.l.degree, ext.k.degree
    for v in ext.k.places:
        try:
            lhs = ext.relative_degree * mpmath.fsum(
                mpmath.mpf(w.local_degree) / dl * numeric.to_mpf(l_logs[w.id]) for w in ext.fiber(v.id)
            )
            rhs = mpmath.mpf(v.local_degree) / dk * numeric.to_mpf(norm_logs[v.id])
        except KeyError as exc:
            raise InputError(f"missing log value at place {exc}") from None
        if abs(lhs - rhs) > tol * max(1, abs(rhs)):
            return False
    return True


def norm_consistency(ext: ExtensionData) -> list:
    """Check the norm identity for every basis unit of ``l`` against the norm matrix."""
    out = []
    for j, name in enumerate(ext.l.basis):
        exps = tuple(int(i == j) for i in range(ext.l.rank))
        l_logs = dict(zip((w.id for w in ext.l.places), ext.l.log_row(name)))
        k_logs = dict(zip((v.id for v in ext.k.places), ext.norm_logs(exps)))
        out.append((name, check_norm_identity(ext, l_logs, k_logs)))
    return out


@dataclass(frozen=True)
class RelativeUnitBasis:
    vectors: tuple
    rows: tuple

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def exponents(self, coords: Sequence[int]) -> tuple:
        """``F_l`` exponents of ``prod eta_i ** coords_i``."""
        n = len(self.vectors[0])
        return tuple(sum(c * v[i] for c, v in zip(coords, self.vectors)) for i in range(n))


def relative_unit_kernel(ext: ExtensionData) -> RelativeUnitBasis:
    """Basis of the relative units as the integer kernel of the norm matrix."""
    N = ext.norm_matrix
    if N.rows == 0:
        vectors = [tuple(int(i == j) for i in range(N.cols)) for j in range(N.cols)]
    else:
        vectors = integer_kernel(N)
    if len(vectors) != ext.relative_rank:
        raise ConsistencyError(f"kernel has rank {len(vectors)}, expected r(l) - r(k) = {ext.relative_rank}")
    if ext.declared_relative_units is not None:
        declared = ext.declared_relative_units
        if any(N.apply(v) != (0,) * N.rows for v in declared):
            raise InputError("declared relative unit has nontrivial norm")
        if len(declared) != len(vectors) or \
                hnf(IntMatrix.from_rows(declared, cols=N.cols))[0] != hnf(IntMatrix.from_rows(vectors, cols=N.cols))[0]:
            raise InputError("declared relative units do not form a basis of the kernel")
        vectors = declared
    rows = tuple(ext.l.log_row(v) for v in vectors)
    return RelativeUnitBasis(tuple(vectors), rows)


def _relative_matrix(ext: ExtensionData, columns: Sequence[tuple], selection: Mapping[str, str]) -> mpmath.matrix:
    hats = set(selection.values())
    keep = [(i, w) for i, w in enumerate(ext.l.places) if w.id not in hats]
    return mpmath.matrix([[w.local_degree * col[i] for col in columns] for i, w in keep])


def _check_selection(ext, selection):
    for v_id, w_id in selection.items():
        if ext.fiber_map.get(w_id) != v_id:
            raise InputError(f"selected place {w_id!r} does not lie above {v_id!r}")


def relative_regulator(ext: ExtensionData, E: RelativeUnitBasis, selection=None) -> mpmath.mpf:
    """``|det M_{l/k}|``, cross-checked over every admissible selection."""
    if E.rank == 0:
        raise InputError("relative regulator needs r(l/k) > 0")
    selection = ext.default_selection() if selection is None else dict(selection)
    _check_selection(ext, selection)
    values = [abs(mpmath.det(_relative_matrix(ext, E.rows, s))) for s in ext.selections()]
    tol = numeric.tolerance() * max(1, max(values))
    if max(values) - min(values) > tol:
        raise ConsistencyError("relative regulator depends on the selected places")
    return abs(mpmath.det(_relative_matrix(ext, E.rows, selection)))


def relative_regulator_by_selection(ext: ExtensionData, E: RelativeUnitBasis) -> list:
    return [(s, abs(mpmath.det(_relative_matrix(ext, E.rows, s)))) for s in ext.selections()]


def image_index(ext: ExtensionData) -> int:
    """``[F_k : I_{l/k}]`` as the product of elementary divisors of the norm matrix."""
    out = 1
    for d in elementary_divisors(ext.norm_matrix):
        out *= d
    return out


def check_relative_upper_bound(ext: ExtensionData, E: RelativeUnitBasis, C, prefix: str = "") -> BoundReport:
    """Relative regulator times index against weighted heights of generators."""
    C = C if isinstance(C, IntMatrix) else IntMatrix.from_rows(C)
    r = E.rank
    if (C.rows, C.cols) != (r, r):
        raise InputError(f"generator matrix must be {r}x{r}")
    index = abs(det_exact(C))
    if index == 0:
        raise InputError("generators not multiplicatively independent")
    reg = relative_regulator(ext, E)
    lhs = reg * index
    eps = [E.exponents(C.column(j)) for j in range(r)]
    direct = abs(mpmath.det(_relative_matrix(ext, [ext.l.log_row(e) for e in eps], ext.default_selection())))
    d = ext.l.degree
    witnesses = []
    for j, e in enumerate(eps):
        witnesses.append(Witness(f"epsilon{j + 1}", e, C.column(j), d * height(ext.l, e)))
    rhs = mpmath.fprod(w.weighted_height for w in witnesses)
    checks = [
        Check.inequality(f"{prefix}relative_upper_bound", lhs, rhs, Fraction(1)),
        Check.identity(f"{prefix}relative_lhs_direct", lhs, direct, Fraction(1)),
    ]
    return BoundReport("relative_upper_bound", lhs, rhs, Fraction(1), witnesses, checks)


def costa_friedman(ext: ExtensionData, E: RelativeUnitBasis) -> tuple:
    """``([F_k : I] * Reg(k) * Reg(E), Reg(l))``."""
    lhs = image_index(ext) * regulator(ext.k) * relative_regulator(ext, E)
    return lhs, regulator(ext.l)


def costa_friedman_check(ext: ExtensionData, E: RelativeUnitBasis) -> bool:
    lhs, rhs = costa_friedman(ext, E)
    return abs(lhs - rhs) <= numeric.tolerance() * max(1, abs(rhs))
