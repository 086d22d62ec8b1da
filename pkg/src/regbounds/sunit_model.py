"""Places, S-unit systems, Weil heights and S-regulators.

A system stores, for every unit (a coset representative modulo torsion),
its row of ``log ||u||_v`` over the places of ``S``. Normalized absolute
values are ``|u|_v = ||u||_v ** (d_v / d)``.

The bound checks here verify, on concrete data:

* ``Reg_S * [U_S : A] <= prod_j d * h(alpha_j)`` for generators of ``A``;
* that successive minima of the log lattice of ``A`` give independent
  ``beta_j`` with ``prod d*h(beta_j) <= 2^r (r!)^3/(2r)! * Reg_S * [U_S : A]``;
* that those can be traded for a basis with constant ``2 (r!)^4/(2r)!``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import mpmath

from . import numeric
from .delta_norm import delta
from .errors import ConsistencyError, InputError, ProductFormulaError, SingularMatrixError
from .exact_linalg import IntMatrix, det_exact
from .lattice_min import LatticeInstance, mahler_weyl_basis, successive_minima_delta
from .report import Check

ARCHIMEDEAN = "archimedean"
NON_ARCHIMEDEAN = "non-archimedean"

# Smallest regulator of any number field (degree 6, discriminant -10051).
FRIEDMAN_CONSTANT = "0.2052"


@dataclass(frozen=True)
class Place:
    id: str
    local_degree: int
    kind: str = ARCHIMEDEAN

    def __post_init__(self):
        if self.local_degree < 1:
            raise InputError(f"place {self.id!r}: local degree must be >= 1")
        if self.kind not in (ARCHIMEDEAN, NON_ARCHIMEDEAN):
            raise InputError(f"place {self.id!r}: unknown kind {self.kind!r}")

    @property
    def archimedean(self) -> bool:
        return self.kind == ARCHIMEDEAN


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


class SUnitSystem:
    """Immutable S-unit data for one number field."""

    def __init__(self, degree: int, places: Sequence[Place], units: Mapping[str, Sequence],
                 basis: Sequence[str], label: str = ""):
        if degree < 1:
            raise InputError("degree must be a positive integer")
        self.label = label
        self.degree = degree
        self.places = tuple(places)
        if not self.places:
            raise InputError("S must contain at least one place")
        ids = [p.id for p in self.places]
        if len(set(ids)) != len(ids):
            raise InputError("duplicate place ids")
        arch = [p for p in self.places if p.archimedean]
        if arch and sum(p.local_degree for p in arch) != degree:
            raise InputError(
                f"archimedean local degrees sum to {sum(p.local_degree for p in arch)}, expected {degree}"
            )
        self._index = {pid: i for i, pid in enumerate(ids)}
        tol = numeric.tolerance()
        rows = {}
        for name, row in units.items():
            row = tuple(numeric.to_mpf(x) for x in row)
            if len(row) != len(self.places):
                raise InputError(f"unit {name!r}: expected {len(self.places)} log values")
            residual = mpmath.fsum(p.local_degree * x for p, x in zip(self.places, row))
            if abs(residual) > tol * max(1, max(abs(x) for x in row)):
                raise ProductFormulaError(name, numeric.fmt(residual, 10))
            rows[name] = row
        self.units = rows
        self.basis = tuple(basis)
        for name in self.basis:
            if name not in self.units:
                raise InputError(f"basis names unknown unit {name!r}")
        if len(self.basis) != self.rank:
            raise InputError(f"basis must have r = |S| - 1 = {self.rank} units, got {len(self.basis)}")
        if self.rank and abs(self._basis_det(0)) <= tol:
            raise SingularMatrixError("basis units are not multiplicatively independent")

    @property
    def rank(self) -> int:
        return len(self.places) - 1

    @property
    def all_archimedean(self) -> bool:
        return all(p.archimedean for p in self.places)

    def place_index(self, vhat) -> int:
        if vhat is None:
            return 0
        if isinstance(vhat, int) and not isinstance(vhat, bool):
            if not 0 <= vhat < len(self.places):
                raise InputError(f"place index {vhat} out of range")
            return vhat
        if vhat not in self._index:
            raise InputError(f"unknown place {vhat!r}")
        return self._index[vhat]

    def log_row(self, u) -> tuple:
        """Row of ``log ||u||_v``; ``u`` is a unit name or basis exponents."""
        if isinstance(u, str):
            if u not in self.units:
                raise InputError(f"unknown unit {u!r}")
            return self.units[u]
        exps = [int(e) for e in u]
        if len(exps) != self.rank:
            raise InputError(f"exponent vector must have length {self.rank}")
        basis_rows = [self.units[n] for n in self.basis]
        return tuple(
            mpmath.fsum(e * row[v] for e, row in zip(exps, basis_rows))
            for v in range(len(self.places))
        )

    def weighted_row(self, u, vhat=None) -> tuple:
        """``(d_v log ||u||_v)`` over ``v != vhat``."""
        skip = self.place_index(vhat)
        row = self.log_row(u)
        return tuple(p.local_degree * x for i, (p, x) in enumerate(zip(self.places, row)) if i != skip)

    def normalized_logs(self, u) -> tuple:
        """``log |u|_v = (d_v / d) log ||u||_v`` for every place of ``S``."""
        return tuple(mpmath.mpf(p.local_degree) / self.degree * x
                     for p, x in zip(self.places, self.log_row(u)))

    def basis_matrix(self, vhat=None) -> mpmath.matrix:
        """``M^(vhat)``: rows ``v != vhat``, column ``j`` is ``d_v log ||eta_j||_v``."""
        cols = [self.weighted_row(n, vhat) for n in self.basis]
        r = self.rank
        return mpmath.matrix([[cols[j][i] for j in range(r)] for i in range(r)])

    def _basis_det(self, vhat) -> mpmath.mpf:
        return mpmath.det(self.basis_matrix(vhat))

    def exponents_of(self, name: str) -> tuple:
        """Recover integer basis exponents of a named unit from its log row."""
        row = self.log_row(name)
        if self.rank == 0:
            if any(abs(x) > numeric.tolerance() for x in row):
                raise InputError(f"unit {name!r} is not torsion in a rank-0 system")
            return ()
        M = self.basis_matrix(0)
        rhs = mpmath.matrix(list(self.weighted_row(name, 0)))
        sol = mpmath.lu_solve(M, rhs)
        exps = tuple(int(mpmath.nint(sol[i])) for i in range(self.rank))
        fitted = self.log_row(exps)
        residual = max((abs(a - b) for a, b in zip(fitted, row)), default=mpmath.mpf(0))
        if residual > numeric.tolerance() * max(1, max(abs(x) for x in row)):
            raise InputError(
                f"unit {name!r} is not an integral combination of the basis (residual {numeric.fmt(residual, 8)})"
            )
        return exps

    @classmethod
    def from_dict(cls, data: Mapping) -> "SUnitSystem":
        """Build from the field-file schema (see :mod:`regbounds.io`)."""
        for key in ("degree", "places", "units", "basis"):
            if key not in data:
                raise InputError(f"missing field {key!r}")
        degree = data["degree"]
        if not isinstance(degree, int) or isinstance(degree, bool):
            raise InputError("field 'degree' must be an integer")
        places = []
        for i, p in enumerate(data["places"]):
            try:
                places.append(Place(str(p["id"]), int(p["local_degree"]), p.get("kind", ARCHIMEDEAN)))
            except KeyError as exc:
                raise InputError(f"field 'places[{i}]' is missing {exc}") from None
        units = {}
        for i, u in enumerate(data["units"]):
            if "name" not in u:
                raise InputError(f"field 'units[{i}]' is missing 'name'")
            name = str(u["name"])
            if name in units:
                raise InputError(f"duplicate unit name {name!r}")
            if "log_abs" in u:
                logs = u["log_abs"]
                missing = [p.id for p in places if p.id not in logs]
                if missing:
                    raise InputError(f"field 'units[{i}].log_abs' lacks places {missing}")
                extra = set(logs) - {p.id for p in places}
                if extra:
                    raise InputError(f"field 'units[{i}].log_abs' has places outside S: {sorted(extra)}")
                try:
                    units[name] = [numeric.to_mpf(str(logs[p.id])) for p in places]
                except (ValueError, TypeError):
                    raise InputError(f"field 'units[{i}].log_abs' has a non-decimal value") from None
            elif "rational" in u:
                units[name] = rational_log_row(u["rational"], places, degree, name)
            else:
                raise InputError(f"field 'units[{i}]' needs 'log_abs' or 'rational'")
        return cls(degree, places, units, [str(b) for b in data["basis"]], label=str(data.get("label", "")))


def rational_log_row(factorization: Mapping, places: Sequence[Place], degree: int, name: str = "?") -> list:
    """Log row of a signed rational given as ``{prime: exponent}``; the sign is torsion."""
    if degree != 1:
        raise InputError(f"unit {name!r}: rational units are only allowed over Q")
    exps = {}
    for key, e in factorization.items():
        if key == "sign":
            if e not in (1, -1):
                raise InputError(f"unit {name!r}: sign must be +1 or -1")
            continue
        try:
            p = int(key)
        except ValueError:
            raise InputError(f"unit {name!r}: {key!r} is not a prime") from None
        if not _is_prime(p):
            raise InputError(f"unit {name!r}: {p} is not a prime")
        exps[p] = int(e)
    by_id = {p.id: p for p in places}
    for p, e in exps.items():
        if e and str(p) not in by_id:
            raise InputError(f"unit {name!r} is not an S-unit: prime {p} is outside S")
    row = []
    for place in places:
        if place.archimedean:
            row.append(mpmath.fsum(e * mpmath.log(p) for p, e in exps.items()))
        else:
            p = int(place.id)
            row.append(-exps.get(p, 0) * mpmath.log(p))
    return row


def height(sys: SUnitSystem, u) -> mpmath.mpf:
    """Absolute logarithmic Weil height of a unit (name or basis exponents)."""
    logs = sys.normalized_logs(u)
    pos = mpmath.fsum(x for x in logs if x > 0)
    neg = mpmath.fsum(-x for x in logs if x < 0)
    half = mpmath.fsum(abs(x) for x in logs) / 2
    tol = numeric.tolerance() * max(1, pos)
    if abs(pos - neg) > tol or abs(pos - half) > tol:
        raise ProductFormulaError(str(u), numeric.fmt(pos - neg, 10))
    for vhat in range(len(logs)):
        rest = [x for i, x in enumerate(logs) if i != vhat]
        dropped = max(mpmath.fsum(x for x in rest if x > 0), mpmath.fsum(-x for x in rest if x < 0))
        if abs(dropped - pos) > tol:
            raise ConsistencyError(f"height of {u!r} changes when place {vhat} is dropped")
    return pos


def regulator(sys: SUnitSystem, vhat=None) -> mpmath.mpf:
    """``|det M^(vhat)|``, cross-checked against every other choice of ``vhat``.

    A rank-0 system has regulator 1 (empty determinant).
    """
    if sys.rank == 0:
        return mpmath.mpf(1)
    values = [abs(sys._basis_det(i)) for i in range(len(sys.places))]
    tol = numeric.tolerance() * max(1, max(values))
    if min(values) <= numeric.tolerance():
        raise SingularMatrixError("basis matrix is singular")
    if max(values) - min(values) > tol:
        raise ConsistencyError("regulator depends on the removed place")
    return values[sys.place_index(vhat)]


def regulator_by_place(sys: SUnitSystem) -> dict:
    if sys.rank == 0:
        return {p.id: mpmath.mpf(1) for p in sys.places}
    return {p.id: abs(sys._basis_det(i)) for i, p in enumerate(sys.places)}


@dataclass(frozen=True)
class SubgroupSpec:
    """Columns of ``B`` are the exponent vectors of generators w.r.t. the basis."""

    B: IntMatrix

    def __post_init__(self):
        if not self.B.is_square:
            raise InputError("subgroup matrix must be square")
        if self.B.rows and det_exact(self.B) == 0:
            raise InputError("generators not multiplicatively independent")

    @classmethod
    def of(cls, B) -> "SubgroupSpec":
        if not isinstance(B, IntMatrix):
            B = IntMatrix.from_rows(B)
        return cls(B)

    @property
    def rank(self) -> int:
        return self.B.rows

    def generator(self, j: int) -> tuple:
        return self.B.column(j)

    def exponents(self, coords: Sequence[int]) -> tuple:
        """Basis exponents of ``prod alpha_i ** coords_i``."""
        return self.B.apply(coords)


def subgroup_index(spec: SubgroupSpec) -> int:
    return abs(det_exact(spec.B))


def subgroup_from_units(sys: SUnitSystem, names: Sequence[str]) -> SubgroupSpec:
    columns = [sys.exponents_of(n) for n in names]
    return SubgroupSpec(IntMatrix.from_columns(columns, rows=sys.rank))


def _check_compatible(sys: SUnitSystem, spec: SubgroupSpec):
    if spec.rank != sys.rank:
        raise InputError(f"subgroup has rank {spec.rank}, system has rank {sys.rank}")
    if sys.rank == 0:
        raise InputError("bound checks need a system of positive rank")


def minima_constant(r: int) -> Fraction:
    """``2^r (r!)^3 / (2r)!``."""
    return Fraction(2 ** r * math.factorial(r) ** 3, math.factorial(2 * r))


def basis_constant(r: int) -> Fraction:
    """``2 (r!)^4 / (2r)!``."""
    return Fraction(2 * math.factorial(r) ** 4, math.factorial(2 * r))


@dataclass(frozen=True)
class Witness:
    label: str
    exponents: tuple
    coords: tuple
    weighted_height: mpmath.mpf


@dataclass
class BoundReport:
    """``pass`` iff ``lhs <= rhs + tol``; ``rhs`` includes ``constant``."""

    name: str
    lhs: mpmath.mpf
    rhs: mpmath.mpf
    constant: object
    witnesses: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    unimodular: object = None

    @property
    def main(self) -> Check:
        return self.checks[0]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _alpha_lattice(sys: SUnitSystem, spec: SubgroupSpec, vhat) -> LatticeInstance:
    cols = [sys.weighted_row(spec.generator(j), vhat) for j in range(spec.rank)]
    return LatticeInstance.from_columns(cols)


def _friedman_checks(sys, index, weighted, prefix):
    checks = []
    if not (sys.all_archimedean and sys.rank >= 1):
        return checks, None
    c = numeric.to_mpf(FRIEDMAN_CONSTANT)
    prod = mpmath.fprod(weighted)
    checks.append(Check.inequality(f"{prefix}friedman_floor", c, prod / index, FRIEDMAN_CONSTANT))
    best = max(range(len(weighted)), key=lambda j: weighted[j])
    if len(weighted) > 1:
        # the existential single-unit form is only asserted in rank 1
        return checks, best
    checks.append(Check.inequality(f"{prefix}friedman_single[alpha{best + 1}]", c, weighted[best], FRIEDMAN_CONSTANT))
    return checks, best


def check_upper_bound(sys: SUnitSystem, spec: SubgroupSpec, vhat=None, prefix: str = "") -> BoundReport:
    """Regulator times index against the product of weighted generator heights."""
    _check_compatible(sys, spec)
    d, r = sys.degree, sys.rank
    reg = regulator(sys)
    index = subgroup_index(spec)
    lhs = reg * index
    direct = _alpha_lattice(sys, spec, vhat).det
    witnesses = []
    weighted = []
    for j in range(r):
        wh = d * height(sys, spec.generator(j))
        weighted.append(wh)
        coords = tuple(int(i == j) for i in range(r))
        witnesses.append(Witness(f"alpha{j + 1}", spec.generator(j), coords, wh))
    rhs = mpmath.fprod(weighted)
    checks = [
        Check.inequality(f"{prefix}upper_bound", lhs, rhs, Fraction(1)),
        Check.identity(f"{prefix}upper_lhs_direct", lhs, direct, Fraction(1)),
    ]
    fchecks, _ = _friedman_checks(sys, index, weighted, prefix)
    checks += fchecks
    return BoundReport("upper_bound", lhs, rhs, Fraction(1), witnesses, checks)


def _minima(sys: SUnitSystem, spec: SubgroupSpec, vhat):
    L = _alpha_lattice(sys, spec, vhat)
    return L, successive_minima_delta(L)


def _witnesses_from_points(sys, spec, points, label):
    d = sys.degree
    witnesses = []
    for j, p in enumerate(points):
        exps = spec.exponents(p.coords)
        wh = d * height(sys, exps)
        if abs(wh - p.delta) > numeric.tolerance() * max(1, wh):
            raise ConsistencyError(f"norm of lattice point {p.coords} differs from its weighted height")
        witnesses.append(Witness(f"{label}{j + 1}", exps, p.coords, wh))
    return witnesses


def reduce_subgroup(sys: SUnitSystem, spec: SubgroupSpec, vhat=None, prefix: str = "") -> BoundReport:
    """Independent elements of small height product found from successive minima."""
    _check_compatible(sys, spec)
    r = sys.rank
    reg_index = regulator(sys) * subgroup_index(spec)
    _, minima = _minima(sys, spec, vhat)
    witnesses = _witnesses_from_points(sys, spec, minima.vectors, "beta")
    product = mpmath.fprod(w.weighted_height for w in witnesses)
    const = minima_constant(r)
    F = IntMatrix.from_columns([w.coords for w in witnesses], rows=r)
    checks = [
        Check.inequality(f"{prefix}minima_bound", product, numeric.to_mpf(const) * reg_index, const),
        Check.inequality(f"{prefix}minima_lower", reg_index, product, Fraction(1)),
        Check.identity(f"{prefix}minima_lattice_det", minima.det, reg_index, Fraction(1)),
    ]
    if r == 2:
        checks.append(Check.identity(f"{prefix}minima_form_basis", abs(det_exact(F)), 1, Fraction(4, 3)))
    return BoundReport("minima_bound", product, numeric.to_mpf(const) * reg_index, const, witnesses, checks)


def small_basis(sys: SUnitSystem, spec: SubgroupSpec, vhat=None, prefix: str = "") -> BoundReport:
    """A basis of the subgroup with controlled height product."""
    _check_compatible(sys, spec)
    r = sys.rank
    reg_index = regulator(sys) * subgroup_index(spec)
    L, minima = _minima(sys, spec, vhat)
    mw = mahler_weyl_basis(L, minima.vectors)
    witnesses = _witnesses_from_points(sys, spec, mw.basis, "gamma")
    product = mpmath.fprod(w.weighted_height for w in witnesses)
    const = basis_constant(r)
    det_w = det_exact(mw.witness.transform)
    checks = [
        Check.inequality(f"{prefix}basis_bound", product, numeric.to_mpf(const) * reg_index, const),
        Check.identity(f"{prefix}basis_unimodular", abs(det_w), 1, Fraction(1)),
        Check.flag(f"{prefix}basis_steps", mw.satisfies_bounds()),
    ]
    report = BoundReport("basis_bound", product, numeric.to_mpf(const) * reg_index, const, witnesses, checks)
    report.unimodular = mw.witness
    return report
