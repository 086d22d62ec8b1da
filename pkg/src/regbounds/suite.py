"""Corpus-driven verification of every bound and identity in the toolkit.

A corpus directory holds data files and, optionally, ``manifest.json``::

    {"global": {"volume_dims": [1, 2], "mc_samples": 100000,
                "j_dims": [1, 2, 3], "schinzel_random": 200},
     "entries": [{"kind": "field", "path": "q_s23.json",
                  "expected": {"regulator": {"value": "0.76...", "tol": "1e-30"},
                               "height:6": {"value": "1.79...", "tol": "1e-30"}},
                  "subgroups": ["subgroups/s23_6_23.mat"]}, ...]}

Without a manifest, files are discovered by suffix (``.json``, ``.mat``,
``.lat``) and checked without golden values.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import mpmath

from . import numeric
from .delta_norm import (
    delta_ball_volume,
    delta_ball_volume_mc,
    j_minor_square_sum,
    schinzel_bound,
)
from .errors import InputError, RegboundsError
from .exact_linalg import IntMatrix, rank
from .io import parse_input
from .lattice_min import successive_minima_delta
from .relative_reg import (
    ExtensionData,
    check_relative_upper_bound,
    costa_friedman,
    image_index,
    norm_consistency,
    relative_regulator,
    relative_regulator_by_selection,
    relative_unit_kernel,
)
from .report import Check, Report
from .sunit_model import (
    SubgroupSpec,
    SUnitSystem,
    check_upper_bound,
    height,
    reduce_subgroup,
    regulator,
    regulator_by_place,
    small_basis,
)

KINDS = ("field", "extension", "matrix", "lattice")
_SUFFIX_KIND = {".json": None, ".mat": "matrix", ".lat": "lattice"}


@dataclass
class CorpusEntry:
    kind: str
    path: Path
    expected: dict = field(default_factory=dict)
    subgroups: list = field(default_factory=list)

    @property
    def name(self) -> str:
        return self.path.stem


def bundled_corpus() -> Path:
    return Path(str(resources.files("regbounds") / "corpus"))


def load_corpus(corpus_dir) -> tuple[list[CorpusEntry], dict]:
    corpus_dir = Path(corpus_dir)
    if not corpus_dir.is_dir():
        raise InputError(f"corpus directory not found: {corpus_dir}")
    manifest = corpus_dir / "manifest.json"
    if not manifest.exists():
        entries = []
        for p in sorted(corpus_dir.iterdir()):
            if p.suffix in _SUFFIX_KIND and p.is_file():
                kind = _SUFFIX_KIND[p.suffix]
                if kind is None:
                    kind = "extension" if '"fiber_map"' in p.read_text(encoding="utf-8") else "field"
                entries.append(CorpusEntry(kind, p))
        return entries, {}
    try:
        data = json.loads(manifest.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f"manifest.json: {exc.msg} (line {exc.lineno})") from None
    entries = []
    for i, e in enumerate(data.get("entries", [])):
        kind = e.get("kind")
        if kind not in KINDS:
            raise InputError(f"manifest entry {i}: unknown kind {kind!r}")
        path = corpus_dir / e["path"]
        if not path.exists():
            raise InputError(f"manifest entry {i}: missing file {path}")
        entries.append(CorpusEntry(kind, path, dict(e.get("expected", {})),
                                   [corpus_dir / s for s in e.get("subgroups", [])]))
    return entries, dict(data.get("global", {}))


def _golden(name, value, spec) -> Check:
    expected, tol = spec["value"], spec.get("tol", "0")
    if isinstance(value, int) and Fraction(tol) == 0:
        return Check.identity(name, value, int(expected))
    return Check.identity(name, value, numeric.to_mpf(expected), tol=numeric.to_mpf(tol))


def _guard(report: Report, name: str, fn):
    try:
        fn()
    except (RegboundsError, ValueError, ArithmeticError) as exc:
        report.add(Check.failure(name, f"{type(exc).__name__}: {exc}"))


def _global_checks(report: Report, cfg: dict, seed: int):
    for n in cfg.get("volume_dims", []):
        def vol(n=n):
            exact = delta_ball_volume(n)
            mc = delta_ball_volume_mc(n, int(cfg.get("mc_samples", 100_000)), seed)
            report.add(Check.inequality(f"volume_mc[N={n}]", abs(mc.estimate - numeric.to_mpf(exact)),
                                        3 * mc.stderr, exact, tol=mpmath.mpf(0)))
        _guard(report, f"volume_mc[N={n}]", vol)
    for n in cfg.get("j_dims", []):
        _guard(report, f"j_identity[N={n}]", lambda n=n: report.add(
            Check.identity(f"j_identity[N={n}]", j_minor_square_sum(n), Fraction(n + 1, 4 ** n))))
    count = int(cfg.get("schinzel_random", 0))
    if count:
        def batch():
            rng = random.Random(seed)
            worst = None
            for _ in range(count):
                n = rng.randint(1, 6)
                A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
                res = schinzel_bound(A)
                ratio = Fraction(abs(res.det), res.bound) if res.bound else Fraction(0)
                if worst is None or ratio > worst:
                    worst = ratio
            report.add(Check.inequality(f"schinzel_random[count={count}]", worst, 1))
        _guard(report, "schinzel_random", batch)


def _field_checks(report: Report, entry: CorpusEntry, sys: SUnitSystem):
    pre = entry.name
    values = list(regulator_by_place(sys).values())
    report.add(Check.identity(f"{pre}:regulator_invariance", max(values), min(values)))
    reg = regulator(sys)
    for key, spec in entry.expected.items():
        if key == "regulator":
            report.add(_golden(f"{pre}:regulator", reg, spec))
        elif key.startswith("height:"):
            unit = key.split(":", 1)[1]
            _guard(report, f"{pre}:height[{unit}]",
                   lambda unit=unit, spec=spec: report.add(_golden(f"{pre}:height[{unit}]", height(sys, unit), spec)))
    for name in sys.units:
        def unit_check(name=name):
            h = height(sys, name)
            exps = sys.exponents_of(name)
            report.add(Check.identity(f"{pre}:height_repr[{name}]", h, height(sys, exps)))
        _guard(report, f"{pre}:height_repr[{name}]", unit_check)
    if sys.rank == 0:
        return
    subgroups = [(p.stem, SubgroupSpec(parse_input(p, "matrix"))) for p in entry.subgroups] or \
        [("identity", SubgroupSpec(IntMatrix.identity(sys.rank)))]
    for label, spec in subgroups:
        tag = f"{pre}[{label}]:"
        for op in (check_upper_bound, reduce_subgroup, small_basis):
            _guard(report, f"{tag}{op.__name__}", lambda op=op: report.extend(op(sys, spec, prefix=tag).checks))


def _extension_checks(report: Report, entry: CorpusEntry, ext: ExtensionData):
    pre = entry.name
    for name, ok in norm_consistency(ext):
        report.add(Check.flag(f"{pre}:norm_identity[{name}]", ok))
    E = relative_unit_kernel(ext)
    N = ext.norm_matrix
    in_kernel = all(N.apply(v) == (0,) * N.rows for v in E.vectors)
    full = rank(IntMatrix.from_rows(E.vectors, cols=N.cols)) == ext.relative_rank
    report.add(Check.flag(f"{pre}:relative_kernel", in_kernel and full, f"rank={E.rank}"))
    values = [v for _, v in relative_regulator_by_selection(ext, E)]
    report.add(Check.identity(f"{pre}:relative_invariance", max(values), min(values)))
    reg_e = relative_regulator(ext, E)
    for key, spec in entry.expected.items():
        if key == "relative_regulator":
            report.add(_golden(f"{pre}:relative_regulator", reg_e, spec))
        elif key == "image_index":
            report.add(_golden(f"{pre}:image_index", image_index(ext), spec))
    lhs, rhs = costa_friedman(ext, E)
    report.add(Check.identity(f"{pre}:costa_friedman", lhs, rhs))
    subgroups = [(p.stem, parse_input(p, "matrix")) for p in entry.subgroups] or \
        [("identity", IntMatrix.identity(E.rank))]
    for label, C in subgroups:
        tag = f"{pre}[{label}]:"
        _guard(report, f"{tag}relative_upper_bound",
               lambda C=C, tag=tag: report.extend(check_relative_upper_bound(ext, E, C, prefix=tag).checks))


def _matrix_checks(report: Report, entry: CorpusEntry, M: IntMatrix):
    res = schinzel_bound(M.tolist())
    report.add(Check.inequality(f"{entry.name}:schinzel", abs(res.det), res.bound))


def _lattice_checks(report: Report, entry: CorpusEntry, L):
    res = successive_minima_delta(L)
    report.add(Check.inequality(f"{entry.name}:minima_product", res.product, res.product_bound, res.product_constant))
    lhs, rhs = res.minkowski_sides()
    report.add(Check.inequality(f"{entry.name}:minkowski", lhs, rhs, Fraction(2 ** L.dimension)))


_HANDLERS = {
    "field": (SUnitSystem, _field_checks),
    "extension": (ExtensionData, _extension_checks),
    "matrix": (IntMatrix, _matrix_checks),
    "lattice": (object, _lattice_checks),
}


def run_entry(report: Report, entry: CorpusEntry):
    def go():
        obj = parse_input(entry.path, entry.kind)
        expected_type, handler = _HANDLERS[entry.kind]
        if not isinstance(obj, expected_type):
            raise InputError(f"{entry.path.name} is not a {entry.kind} file")
        handler(report, entry, obj)
    _guard(report, f"{entry.name}:parse", go)


def run_suite(corpus_dir=None, precision: int = numeric.DEFAULT_PRECISION, seed: int = 0,
              tolerance=None) -> Report:
    """Run every check over a corpus; entry errors become FAIL lines."""
    report = Report()
    with numeric.working_precision(precision, tolerance):
        entries, cfg = load_corpus(corpus_dir if corpus_dir is not None else bundled_corpus())
        if not entries and not cfg:
            report.warn("empty corpus: nothing to check")
            return report
        _global_checks(report, cfg, seed)
        for entry in entries:
            run_entry(report, entry)
    return report
