"""Deterministic JSON serialization for every file format the CLI speaks.

Floats are always written with 17 significant digits (lossless for float64
round trips), complex scalars as [re, im] pairs, matrices row-major in the
canonical index order, and moment maps keyed by "[n1,n2]" strings.  The
writer emits keys in construction order and never consults hash ordering,
so identical data produces byte-identical files.
"""

from __future__ import annotations

import dataclasses
import json
import math
from typing import Any

import numpy as np

from .asymptotics import ExpansionReport, Type1Report
from .examples import ExampleSpec
from .hankel_pair import HankelPair, Moments1D, VerdictReport
from .indexcore import Index, build_index_set, set_size
from .realization import Realization, ScalarMoments
from .tolerances import DEFAULT_TOL, Tolerances

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    """Input file does not match the expected schema."""


# ----------------------------------------------------------------------------
# Writer
# ----------------------------------------------------------------------------


def format_float(x: float) -> str:
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        raise ValueError("cannot serialize non-finite float")
    return format(x, ".17g")


def _render(obj: Any, out: list[str], indent: int) -> None:
    pad = " " * indent
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        items = list(obj.items())
        for i, (key, val) in enumerate(items):
            out.append(pad + "  " + json.dumps(str(key)) + ": ")
            _render(val, out, indent + 2)
            out.append(",\n" if i + 1 < len(items) else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        flat = all(isinstance(x, (bool, int, float, str, np.integer, np.floating)) for x in obj)
        if flat:
            out.append("[" + ", ".join(_scalar(x) for x in obj) + "]")
            return
        out.append("[\n")
        for i, val in enumerate(obj):
            out.append(pad + "  ")
            _render(val, out, indent + 2)
            out.append(",\n" if i + 1 < len(obj) else "\n")
        out.append(pad + "]")
    else:
        out.append(_scalar(obj))


def _scalar(obj: Any) -> str:
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if obj is None:
        return "null"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def dumps(obj: Any) -> str:
    out: list[str] = []
    _render(obj, out, 0)
    out.append("\n")
    return "".join(out)


def dump(obj: Any, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(obj))


# ----------------------------------------------------------------------------
# Primitive converters
# ----------------------------------------------------------------------------


def complex_pair(x: complex) -> list[float]:
    x = complex(x)
    return [x.real, x.imag]


def vector_obj(v: np.ndarray) -> list[list[float]]:
    return [complex_pair(x) for x in v]


def matrix_obj(a: np.ndarray) -> list[list[list[float]]]:
    return [[complex_pair(x) for x in row] for row in np.asarray(a, dtype=complex)]


def index_key(n: Index) -> str:
    return f"[{n[0]},{n[1]}]"


def _parse_index(key: str) -> Index:
    try:
        n1, n2 = json.loads(key)
        return (int(n1), int(n2))
    except Exception:
        raise SchemaError(f"bad index key {key!r}; expected \"[n1,n2]\"") from None


def _parse_complex(entry, where: str) -> complex:
    if not (isinstance(entry, (list, tuple)) and len(entry) == 2):
        raise SchemaError(f"{where}: complex entries must be [re, im] pairs")
    return complex(float(entry[0]), float(entry[1]))


def _parse_matrix(obj, size: int, where: str) -> np.ndarray:
    if not isinstance(obj, list) or len(obj) != size:
        raise SchemaError(f"{where}: expected {size} rows")
    a = np.empty((size, size), dtype=complex)
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != size:
            raise SchemaError(f"{where}: row {i} must have {size} entries")
        for j, entry in enumerate(row):
            a[i, j] = _parse_complex(entry, f"{where}[{i}][{j}]")
    return a


def _parse_vector(obj, dim: int, where: str) -> np.ndarray:
    if not isinstance(obj, list) or len(obj) != dim:
        raise SchemaError(f"{where}: expected {dim} entries")
    return np.array([_parse_complex(x, where) for x in obj], dtype=complex)


def tolerances_obj(tol: Tolerances) -> dict:
    return {f.name: getattr(tol, f.name) for f in dataclasses.fields(tol)}


def tolerances_from_obj(obj) -> Tolerances:
    if obj is None:
        return DEFAULT_TOL
    if not isinstance(obj, dict):
        raise SchemaError("tol must be an object")
    known = {f.name for f in dataclasses.fields(Tolerances)}
    unknown = set(obj) - known
    if unknown:
        raise SchemaError(f"unknown tolerance fields: {sorted(unknown)}")
    return Tolerances(**{k: float(v) for k, v in obj.items()})


def _check_version(obj: dict, where: str) -> None:
    version = obj.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise SchemaError(f"{where}: schema_version {version} unsupported (expected {SCHEMA_VERSION})")


# ----------------------------------------------------------------------------
# Hankel pairs
# ----------------------------------------------------------------------------


def pair_obj(pair: HankelPair) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "hankel_pair",
        "N": pair.N,
        "order": [list(n) for n in pair.index_set],
        "a1": matrix_obj(pair.a1),
        "a2": matrix_obj(pair.a2),
        "tol": tolerances_obj(pair.tol),
    }


def pair_from_obj(obj) -> HankelPair:
    if not isinstance(obj, dict):
        raise SchemaError("hankel pair file must contain an object")
    _check_version(obj, "hankel_pair")
    try:
        N = int(obj["N"])
    except KeyError:
        raise SchemaError("hankel_pair: missing field 'N'") from None
    size = set_size(N)
    canonical = [list(n) for n in build_index_set(N)]
    if "order" in obj and obj["order"] != canonical:
        raise SchemaError("hankel_pair: 'order' does not match the canonical index layout")
    tol = tolerances_from_obj(obj.get("tol"))
    try:
        a1 = _parse_matrix(obj["a1"], size, "a1")
        a2 = _parse_matrix(obj["a2"], size, "a2")
    except KeyError as exc:
        raise SchemaError(f"hankel_pair: missing field {exc}") from None
    try:
        return HankelPair(N, a1, a2, tol)
    except ValueError as exc:
        raise SchemaError(f"hankel_pair: {exc}") from None


# ----------------------------------------------------------------------------
# Realizations
# ----------------------------------------------------------------------------


def realization_obj(r: Realization) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "realization",
        "dim": r.dim,
        "N": r.N,
        "Y": matrix_obj(r.Y),
        "A": matrix_obj(r.A),
        "alpha": vector_obj(r.alpha),
        "moments": {index_key(n): vector_obj(r.moments[n]) for n in r.index_set},
        "tol": tolerances_obj(r.tol),
    }


def realization_from_obj(obj) -> Realization:
    if not isinstance(obj, dict):
        raise SchemaError("realization file must contain an object")
    _check_version(obj, "realization")
    try:
        N = int(obj["N"])
        dim = int(obj["dim"])
    except KeyError as exc:
        raise SchemaError(f"realization: missing field {exc}") from None
    tol = tolerances_from_obj(obj.get("tol"))
    try:
        Y = _parse_matrix(obj["Y"], dim, "Y") if dim else np.zeros((0, 0), dtype=complex)
        A = _parse_matrix(obj["A"], dim, "A") if dim else np.zeros((0, 0), dtype=complex)
        alpha = _parse_vector(obj["alpha"], dim, "alpha")
        moments_obj = obj["moments"]
    except KeyError as exc:
        raise SchemaError(f"realization: missing field {exc}") from None
    if not isinstance(moments_obj, dict):
        raise SchemaError("realization: 'moments' must be an object")
    moments = {}
    for key, value in moments_obj.items():
        n = _parse_index(key)
        moments[n] = _parse_vector(value, dim, f"moments[{key}]")
    try:
        return Realization(N, Y, A, alpha, moments, tol)
    except ValueError as exc:
        raise SchemaError(f"realization: {exc}") from None


# ----------------------------------------------------------------------------
# Example specs, 1d moments, residue maps
# ----------------------------------------------------------------------------


def spec_obj(spec: ExampleSpec) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "example_spec",
        "terms": [list(t) for t in spec.terms],
    }


def spec_from_obj(obj) -> ExampleSpec:
    if not isinstance(obj, dict) or "terms" not in obj:
        raise SchemaError("example spec file must contain an object with a 'terms' field")
    _check_version(obj, "example_spec")
    terms = obj["terms"]
    if not isinstance(terms, list):
        raise SchemaError("example_spec: 'terms' must be a list of [w, lambda, t] triples")
    clean = []
    for i, term in enumerate(terms):
        if not (isinstance(term, list) and len(term) == 3):
            raise SchemaError(f"example_spec: term {i} must be a [w, lambda, t] triple")
        clean.append(tuple(float(x) for x in term))
    try:
        return ExampleSpec(tuple(clean))
    except ValueError as exc:
        raise SchemaError(f"example_spec: {exc}") from None


def moments1d_obj(m: Moments1D) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "moments_1d",
        "rho": list(m.rho),
    }


def moments1d_from_obj(obj) -> Moments1D:
    if not isinstance(obj, dict) or "rho" not in obj:
        raise SchemaError("moment file must contain an object with a 'rho' field")
    _check_version(obj, "moments_1d")
    rho = obj["rho"]
    if not isinstance(rho, list):
        raise SchemaError("moments_1d: 'rho' must be a list of reals")
    try:
        return Moments1D(tuple(float(x) for x in rho))
    except ValueError as exc:
        raise SchemaError(f"moments_1d: {exc}") from None


def residues_obj(residues: dict[Index, float]) -> dict:
    ordered = sorted(residues, key=lambda n: (n[0] + n[1], -n[0]))
    return {index_key(n): float(residues[n]) for n in ordered}


def residues_from_obj(obj) -> dict[Index, float]:
    if isinstance(obj, dict) and "residues" in obj:
        obj = obj["residues"]
    if not isinstance(obj, dict):
        raise SchemaError("residue file must contain a '[n1,n2]' -> value mapping")
    return {_parse_index(key): float(val) for key, val in obj.items()}


def scalar_moments_obj(sm: ScalarMoments) -> dict:
    return {
        str(k): {index_key(n): sm.levels[k][n] for n in sorted(sm.levels[k], key=lambda n: -n[0])}
        for k in sorted(sm.levels)
    }


# ----------------------------------------------------------------------------
# Reports
# ----------------------------------------------------------------------------


def verdict_obj(report: VerdictReport) -> dict:
    return {
        "passed": report.passed,
        "conditions": [
            {
                "name": c.name,
                "passed": c.passed,
                "margin": c.margin,
                "vacuous": c.vacuous,
                "witness": c.witness,
            }
            for c in report.conditions
        ],
    }


def expansion_obj(report: ExpansionReport) -> dict:
    return {
        "order": report.order,
        "residues": residues_obj(report.residues),
        "certified": report.certified,
        "rays": [
            {
                "b": list(v.b),
                "aperture": v.aperture,
                "final_scaled_error": v.final_scaled_error,
                "tail_monotone": v.tail_monotone,
                "below_threshold": v.below_threshold,
                "certified": v.certified,
            }
            for v in report.ray_verdicts
        ],
        "decay_table": [
            {"b": list(row.b), "s": row.s, "scaled_error": row.scaled_error}
            for row in report.decay_table
        ],
        "diagnostics": _clean(report.diagnostics),
    }


def type1_obj(report: Type1Report) -> dict:
    return {
        "estimate": complex_pair(report.estimate),
        "is_type1": report.is_type1,
        "samples": [{"s": s, "value": complex_pair(v)} for s, v in report.samples],
    }


def _clean(obj):
    """Make diagnostics JSON-ready (string keys, plain scalars)."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    return obj


# ----------------------------------------------------------------------------
# File loading
# ----------------------------------------------------------------------------


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(
            f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror or exc}") from None
