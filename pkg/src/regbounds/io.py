"""Reading field, extension, matrix and lattice files.

Field file (JSON)::

    {"label": "...", "degree": 2,
     "places": [{"id": "r1", "local_degree": 1, "kind": "archimedean"}, ...],
     "units": [{"name": "eps", "log_abs": {"r1": "0.88...", "r2": "-0.88..."}},
               {"name": "6", "rational": {"2": 1, "3": 1, "sign": 1}}],
     "basis": ["eps"]}

Extension file (JSON): ``k`` and ``l`` field blocks, ``fiber_map``
``{w_id: v_id}``, ``relative_degree``, ``norm_matrix`` (list of rows) and
optionally ``relative_units`` (exponent vectors in the basis of ``l``).

Matrix text: ``rows cols`` then row-major integers. Lattice text: ``N``
then ``N`` rows of ``N`` decimal strings; columns are basis vectors.
"""
from __future__ import annotations

import json
import re
from pathlib import Path

from .errors import InputError, ProductFormulaError
from .exact_linalg import IntMatrix
from .lattice_min import LatticeInstance
from .relative_reg import ExtensionData
from .sunit_model import SUnitSystem


def _line_of(text: str, needle: str) -> int | None:
    for n, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return n
    return None


def _annotate(exc: InputError, text: str) -> InputError:
    msg = str(exc)
    needle = None
    if isinstance(exc, ProductFormulaError):
        needle = f'"{exc.unit}"'
    else:
        m = re.search(r"field '([A-Za-z_]+)", msg) or re.search(r"unit '([^']+)'", msg)
        if m:
            needle = f'"{m.group(1)}"'
    line = _line_of(text, needle) if needle else None
    where = f" (line {line})" if line else ""
    if isinstance(exc, ProductFormulaError):
        return InputError(msg + where)
    return type(exc)(msg + where)


def read_text(path) -> str:
    path = Path(path)
    try:
        return path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except UnicodeDecodeError:
        raise InputError(f"{path} is not valid UTF-8") from None


def parse_json_input(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg} (line {exc.lineno})") from None
    if not isinstance(data, dict):
        raise InputError("top-level JSON value must be an object")
    try:
        if "k" in data and "l" in data:
            return ExtensionData.from_dict(data)
        return SUnitSystem.from_dict(data)
    except InputError as exc:
        raise _annotate(exc, text) from None


def parse_lattice_text(text: str) -> LatticeInstance:
    tokens = text.split()
    if not tokens:
        raise InputError("empty lattice file")
    try:
        n = int(tokens[0])
    except ValueError:
        raise InputError("lattice file must start with the dimension N") from None
    values = tokens[1:]
    if len(values) != n * n:
        raise InputError(f"lattice file: expected {n * n} basis entries, found {len(values)}")
    for v in values:
        try:
            float(v)
        except ValueError:
            raise InputError(f"lattice file: {v!r} is not a decimal number") from None
    return LatticeInstance([values[i * n:(i + 1) * n] for i in range(n)])


def parse_input(path, kind: str | None = None):
    """Parse any supported file; ``kind`` forces field/extension/matrix/lattice."""
    text = read_text(path)
    if kind is None:
        stripped = text.lstrip()
        if stripped.startswith("{"):
            kind = "json"
        else:
            first = stripped.splitlines()[0].split() if stripped else []
            kind = "lattice" if len(first) == 1 else "matrix"
    if kind in ("json", "field", "extension"):
        obj = parse_json_input(text)
        if kind == "field" and not isinstance(obj, SUnitSystem):
            raise InputError(f"{path}: expected a field file")
        if kind == "extension" and not isinstance(obj, ExtensionData):
            raise InputError(f"{path}: expected an extension file")
        return obj
    if kind == "matrix":
        return IntMatrix.from_text(text)
    if kind == "lattice":
        return parse_lattice_text(text)
    raise InputError(f"unknown input kind {kind!r}")
