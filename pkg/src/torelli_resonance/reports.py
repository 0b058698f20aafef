"""Machine-readable verification reports and the group-algebra input format.

Reports are plain JSON objects with sorted keys.  Rationals travel as
``"p/q"`` strings (integers as ``"p"``), never as floats.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from math import comb
from typing import Any, Mapping

import numpy as np

from .exact_linalg import ExactMatrix, as_rational
from .resonance_engine import GroupAlgebraData
from .symplectic_rep import Weight
from .torus_dynamics import TorsionPoint

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_GUARD = 3
EXIT_MISMATCH = 4

# Every verdict names the mathematical statement it checks.
ANCHORS = {
    "verify-resonance": "torelli-resonance: R(T_3) = H^1(T_3); R(T_g) = 0 for g >= 4",
    "alexander": "infinitesimal-alexander: b(G) = coker(delta_3 + id (x) del), finite iff R(G) trivial",
    "orbit": "torsion-orbits: torsion points of T(L) have finite D-orbits",
    "invariance": "torsion-invariance: torsion subsets of T(L) are D-invariant",
    "crosscheck": "infinitesimal-alexander-resonance: W_k(G) minus 0 equals R_k(G) minus 0",
}


class InputError(ValueError):
    """Malformed input document; ``line``/``column`` are set for JSON syntax errors."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


def rational_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> int | Fraction:
    """Exact rational from "p/q", "p" or an int; floats and bools are rejected."""
    if isinstance(s, bool) or isinstance(s, float):
        raise ValueError(f"not an exact rational: {s!r}")
    if isinstance(s, int):
        return s
    if not isinstance(s, str):
        raise ValueError(f"not an exact rational: {s!r}")
    text = s.strip()
    num, _, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if den else 1
    except ValueError:
        raise ValueError(f"not an exact rational: {s!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {s!r}")
    return as_rational(Fraction(p, q))


def to_jsonable(obj: Any) -> Any:
    """Recursively convert evidence values to JSON types (rationals as strings)."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return rational_str(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Weight):
        return str(obj)
    if isinstance(obj, TorsionPoint):
        return [rational_str(x) for x in obj]
    if isinstance(obj, Mapping):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in obj]
        return sorted(items, key=json.dumps) if isinstance(obj, (set, frozenset)) else items
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@dataclass
class VerificationReport:
    command: str
    parameters: dict
    verdict: Any
    evidence: dict
    seed: int | None = None
    wall_time: float = 0.0
    anchor: str = ""

    def __post_init__(self):
        if not self.anchor:
            self.anchor = ANCHORS[self.command]

    def to_dict(self) -> dict:
        from . import __version__

        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "parameters": to_jsonable(self.parameters),
            "anchor": self.anchor,
            "verdict": to_jsonable(self.verdict),
            "evidence": to_jsonable(self.evidence),
            "seed": self.seed,
            "wall_time": round(float(self.wall_time), 6),
            "version": __version__,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def dumps(doc: Mapping) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def strip_wall_time(doc: Mapping) -> dict:
    return {k: v for k, v in doc.items() if k != "wall_time"}


# ---------------------------------------------------------------------------
# AlgebraInputFile


def algebra_from_dict(doc: Any) -> GroupAlgebraData:
    """Validate an AlgebraInputFile document and build the GroupAlgebraData."""
    if not isinstance(doc, dict):
        raise InputError("top level must be a JSON object")
    missing = [k for k in ("n", "h2", "del") if k not in doc]
    if missing:
        raise InputError(f"missing field(s): {', '.join(missing)}")
    n, h2 = doc["n"], doc["h2"]
    for name, v in (("n", n), ("h2", h2)):
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise InputError(f'"{name}" must be a non-negative integer')
    if n < 1:
        raise InputError('"n" must be positive')
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise InputError('"label" must be a string')
    triplets = doc["del"]
    if not isinstance(triplets, list):
        raise InputError('"del" must be a list of [row, col, "p/q"] triplets')
    N = comb(n, 2)
    cols: list[dict] = [{} for _ in range(h2)]
    for pos, t in enumerate(triplets):
        if not (isinstance(t, list) and len(t) == 3):
            raise InputError(f'del[{pos}] is not a [row, col, "p/q"] triplet')
        row, col, val = t
        if isinstance(row, bool) or not isinstance(row, int) or not 0 <= row < N:
            raise InputError(f"del[{pos}]: row {row!r} outside 0..{N - 1}")
        if isinstance(col, bool) or not isinstance(col, int) or not 0 <= col < h2:
            raise InputError(f"del[{pos}]: column {col!r} outside 0..{h2 - 1}")
        try:
            x = parse_rational(val)
        except ValueError as exc:
            raise InputError(f"del[{pos}]: {exc}") from None
        v = cols[col].get(row, 0) + x
        if v:
            cols[col][row] = v
        else:
            cols[col].pop(row, None)
    return GroupAlgebraData(n, h2, ExactMatrix(N, h2, cols), label)


def loads_algebra(text: str) -> GroupAlgebraData:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return algebra_from_dict(doc)


def load_algebra(path: str) -> GroupAlgebraData:
    with open(path, encoding="utf-8") as fh:
        return loads_algebra(fh.read())


def algebra_to_dict(data: GroupAlgebraData) -> dict:
    triplets = sorted([r, c, rational_str(x)] for r, c, x in data.delta.triplets())
    return {"n": data.n, "h2": data.m, "del": triplets, "label": data.label}


def load_schema(name: str) -> dict:
    """A shipped JSON schema: ``"report"`` or ``"algebra_input"``."""
    text = resources.files(__package__).joinpath("schemas", f"{name}.schema.json").read_text(encoding="utf-8")
    return json.loads(text)
