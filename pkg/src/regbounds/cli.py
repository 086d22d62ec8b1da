"""Command-line front end: ``regbounds <command> [args] --precision --tolerance --seed``.

Exit status is 0 when every check passes, 1 when a check fails and 2 for
unusable input.
"""
from __future__ import annotations

import functools
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import numeric
from .delta_norm import (
    delta,
    delta_ball_volume,
    delta_ball_volume_mc,
    j_minor_square_sum,
    schinzel_bound,
)
from .errors import InputError, RegboundsError
from .exact_linalg import IntMatrix
from .io import parse_input
from .lattice_min import LatticeInstance, successive_minima_delta
from .relative_reg import (
    ExtensionData,
    check_relative_upper_bound,
    costa_friedman,
    image_index,
    relative_regulator,
    relative_unit_kernel,
)
from .report import Check, Report
from .suite import run_suite
from .sunit_model import (
    SubgroupSpec,
    SUnitSystem,
    check_upper_bound,
    height,
    reduce_subgroup,
    regulator,
    regulator_by_place,
    small_basis,
    subgroup_from_units,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class Settings:
    def __init__(self, precision=None, tolerance=None, seed=None):
        self.precision = precision
        self.tolerance = tolerance
        self.seed = seed

    def merged(self, precision, tolerance, seed) -> "Settings":
        return Settings(
            precision if precision is not None else self.precision,
            tolerance if tolerance is not None else self.tolerance,
            seed if seed is not None else self.seed,
        )


def _numeric_options(f):
    f = click.option("--seed", type=int, default=None, help="RNG seed (default 0).")(f)
    f = click.option("--tolerance", type=str, default=None,
                     help="Comparison tolerance (default 2^(-precision/2)).")(f)
    f = click.option("--precision", type=int, default=None,
                     help=f"Working precision in bits (default {numeric.DEFAULT_PRECISION}).")(f)
    return f


def _command(f):
    """Resolve numeric settings, run ``f`` at that precision and map errors to exit codes."""

    @_numeric_options
    @click.pass_context
    @functools.wraps(f)
    def wrapper(ctx, precision, tolerance, seed, **kwargs):
        root = ctx.find_root().obj or Settings()
        s = root.merged(precision, tolerance, seed)
        bits = s.precision if s.precision is not None else numeric.DEFAULT_PRECISION
        try:
            tol = None if s.tolerance is None else numeric.to_mpf(s.tolerance)
        except (ValueError, TypeError):
            _fail_input(f"invalid tolerance {s.tolerance!r}")
        if tol is not None and tol <= 0:
            _fail_input("tolerance must be positive")
        if bits < numeric.MIN_PRECISION:
            _fail_input(f"precision must be at least {numeric.MIN_PRECISION} bits")
        try:
            with numeric.working_precision(bits, tol):
                status = f(seed=s.seed if s.seed is not None else 0, **kwargs)
        except InputError as exc:
            _fail_input(str(exc))
        except RegboundsError as exc:
            click.echo(f"ERROR {type(exc).__name__}: {exc}", err=True)
            ctx.exit(EXIT_FAIL)
        ctx.exit(status or EXIT_OK)

    return wrapper


def _fail_input(message: str):
    click.echo(f"ERROR {message}", err=True)
    sys.exit(EXIT_INPUT)


def _emit(report: Report) -> int:
    """Render inside the active precision so digits match the computation."""
    click.echo(report.render(), nl=False)
    return report.exit_status


def _status(passed: bool) -> str:
    return "PASS" if passed else "FAIL"


@click.group()
@_numeric_options
@click.version_option(package_name="regbounds")
@click.pass_context
def cli(ctx, precision, tolerance, seed):
    """Check regulator, height and lattice bounds over S-unit data."""
    ctx.obj = Settings(precision, tolerance, seed)


# ---- delta -----------------------------------------------------------------

@cli.group("delta")
def delta_group():
    """The norm delta(x) = max(sum of positive parts, sum of negative parts)."""


@delta_group.command("norm", context_settings={"ignore_unknown_options": True})
@click.argument("entries", nargs=-1, required=True)
@_command
def delta_norm_cmd(entries, seed):
    """Print delta of a vector given as decimal entries."""
    try:
        values = [numeric.to_mpf(e) for e in entries]
    except ValueError:
        raise InputError("entries must be decimal numbers") from None
    click.echo(f"DELTA {numeric.fmt(delta(values))}")


@delta_group.command("vol")
@click.argument("n", type=int)
@click.option("--mc", "samples", type=int, default=None, help="Also run a hit-or-miss estimate.")
@_command
def delta_vol_cmd(n, samples, seed):
    """Exact unit-ball volume in dimension N, optionally with a Monte Carlo estimate."""
    exact = delta_ball_volume(n)
    line = f"VOL N={n} exact={numeric.fmt(exact)}"
    if samples is None:
        click.echo(line)
        return EXIT_OK
    est = delta_ball_volume_mc(n, samples, seed)
    err = abs(est.estimate - numeric.to_mpf(exact))
    ok = err <= 3 * est.stderr
    click.echo(f"{line} mc={numeric.fmt(est.estimate)} stderr={numeric.fmt(est.stderr)}"
               f" samples={samples} seed={seed} {_status(ok)}")
    return EXIT_OK if ok else EXIT_FAIL


@delta_group.command("jcheck")
@click.argument("n", type=int)
@_command
def delta_jcheck_cmd(n, seed):
    """Sum of squared maximal minors of J against (N+1)/4^N."""
    report = Report()
    report.add(Check.identity(f"j_identity[N={n}]", j_minor_square_sum(n), Fraction(n + 1, 4 ** n)))
    return _emit(report)


# ---- schinzel --------------------------------------------------------------

@cli.group("schinzel")
def schinzel_group():
    """|det A| against the product of column norms."""


@schinzel_group.command("check")
@click.argument("path", type=click.Path(path_type=Path))
@_command
def schinzel_check_cmd(path, seed):
    """Check a square matrix file (``rows cols`` then entries)."""
    M = parse_input(path, "matrix")
    res = schinzel_bound(M.tolist())
    click.echo(f"SCHINZEL det={numeric.fmt(res.det)} bound={numeric.fmt(res.bound)} {_status(res.holds)}")
    return EXIT_OK if res.holds else EXIT_FAIL


# ---- minima ----------------------------------------------------------------

@cli.command("minima")
@click.argument("path", type=click.Path(path_type=Path))
@_command
def minima_cmd(path, seed):
    """Successive minima of a lattice file under delta, with both volume bounds."""
    L = parse_input(path, "lattice")
    if not isinstance(L, LatticeInstance):
        raise InputError(f"{path} is not a lattice file")
    res = successive_minima_delta(L)
    for j, p in enumerate(res.vectors, 1):
        coords = ",".join(map(str, p.coords))
        click.echo(f"LAMBDA j={j} delta={numeric.fmt(p.delta)} coords=({coords})")
    click.echo(f"PRODUCT {numeric.fmt(res.product)}")
    click.echo(f"BOUND {numeric.fmt(res.product_bound)} const={numeric.fmt(res.product_constant)}"
               f" det={numeric.fmt(res.det)}")
    ok = res.satisfies_bounds()
    click.echo(_status(ok))
    return EXIT_OK if ok else EXIT_FAIL


# ---- fields ----------------------------------------------------------------

def _field(path) -> SUnitSystem:
    return parse_input(path, "field")


@cli.command("regulator")
@click.argument("path", type=click.Path(path_type=Path))
@click.option("--place", default=None, help="Place whose row is removed (default: the first).")
@_command
def regulator_cmd(path, place, seed):
    """S-regulator of a field file, checked for independence of the removed row."""
    sys_ = _field(path)
    reg = regulator(sys_, place)
    click.echo(f"REGULATOR {numeric.fmt(reg)} rank={sys_.rank}")
    values = list(regulator_by_place(sys_).values())
    report = Report()
    report.add(Check.identity("regulator_invariance", max(values), min(values)))
    return _emit(report)


def _unit_arg(sys_: SUnitSystem, unit: str):
    if unit in sys_.units:
        return unit
    try:
        exps = tuple(int(t) for t in unit.split(","))
    except ValueError:
        raise InputError(f"unknown unit {unit!r}; give a unit name or comma-separated exponents") from None
    if len(exps) != sys_.rank:
        raise InputError(f"exponent vector needs {sys_.rank} entries")
    return exps


@cli.command("height")
@click.argument("path", type=click.Path(path_type=Path))
@click.argument("unit")
@_command
def height_cmd(path, unit, seed):
    """Weil height of UNIT (a unit name or exponents over the basis)."""
    sys_ = _field(path)
    click.echo(f"HEIGHT {numeric.fmt(height(sys_, _unit_arg(sys_, unit)))}")


_VERIFIERS = {"upper": check_upper_bound, "reduce": reduce_subgroup, "basis": small_basis}


@cli.command("verify")
@click.argument("which", type=click.Choice(sorted(_VERIFIERS)))
@click.argument("path", type=click.Path(path_type=Path))
@click.option("--subgroup", "subgroup", type=click.Path(path_type=Path), default=None,
              help="Matrix file whose columns give generator exponents.")
@click.option("--generators", default=None, help="Comma-separated unit names generating the subgroup.")
@_command
def verify_cmd(which, path, subgroup, generators, seed):
    """Check one of the subgroup bounds (upper, reduce, basis) for a field file."""
    sys_ = _field(path)
    if subgroup is not None and generators is not None:
        raise InputError("give either --subgroup or --generators, not both")
    if subgroup is not None:
        spec = SubgroupSpec(parse_input(subgroup, "matrix"))
    elif generators is not None:
        spec = subgroup_from_units(sys_, [g.strip() for g in generators.split(",") if g.strip()])
    else:
        spec = SubgroupSpec(IntMatrix.identity(sys_.rank))
    result = _VERIFIERS[which](sys_, spec)
    for w in result.witnesses:
        coords = ",".join(map(str, w.coords))
        exps = ",".join(map(str, w.exponents))
        click.echo(f"WITNESS {w.label} coords=({coords}) exponents=({exps})"
                   f" weighted_height={numeric.fmt(w.weighted_height)}")
    if result.unimodular is not None:
        click.echo(f"UNIMODULAR {result.unimodular.transform.to_text().strip().replace(chr(10), ';')}"
                   f" det={result.unimodular.determinant}")
    report = Report()
    report.extend(result.checks)
    return _emit(report)


# ---- relative --------------------------------------------------------------

@cli.command("relative")
@click.argument("path", type=click.Path(path_type=Path))
@click.option("--subgroup", type=click.Path(path_type=Path), default=None,
              help="Matrix file of generator exponents over the relative-unit basis.")
@_command
def relative_cmd(path, subgroup, seed):
    """Relative regulator, Costa-Friedman identity and relative height bound."""
    ext = parse_input(path, "extension")
    if not isinstance(ext, ExtensionData):
        raise InputError(f"{path} is not an extension file")
    E = relative_unit_kernel(ext)
    for v in E.vectors:
        click.echo(f"RELATIVE_UNIT ({','.join(map(str, v))})")
    click.echo(f"RELATIVE_REGULATOR {numeric.fmt(relative_regulator(ext, E))}")
    click.echo(f"IMAGE_INDEX {image_index(ext)}")
    report = Report()
    lhs, rhs = costa_friedman(ext, E)
    report.add(Check.identity("costa_friedman", lhs, rhs))
    C = parse_input(subgroup, "matrix") if subgroup is not None else IntMatrix.identity(E.rank)
    report.extend(check_relative_upper_bound(ext, E, C).checks)
    return _emit(report)


# ---- suite -----------------------------------------------------------------

@cli.command("suite")
@click.argument("corpus", type=click.Path(path_type=Path), required=False)
@_command
def suite_cmd(corpus, seed):
    """Run every check over a corpus directory (default: the bundled corpus)."""
    report = run_suite(corpus, numeric.precision(), seed, numeric.tolerance_override())
    return _emit(report)


def main(argv=None):
    cli.main(args=argv, prog_name="regbounds")


if __name__ == "__main__":
    main()
