"""JSON (de)serialization of measures, grids and reports.

The measure document is the canonical on-disk format used by the CLI.
Schema version 1::

    {"schema": 1,
     "domain": "half_line" | "line",
     "metadata": {"name": ..., "positive": ...},        # optional
     "atoms": [{"location": 1.0, "weight": {"re": 1.0, "im": 0.0}}],
     "pieces": [{"family": "power_window",
                 "support": [0.0, 1.0],
                 "params": {...},
                 "left_exponent": 0.0,
                 "right_exponent": 0.0}]}

Complex numbers are ``{"re": x, "im": y}`` objects; plain numbers are
accepted on input for real values.  Grid specifications are
``{"kind": "log" | "linear" | "chebyshev", "from": a, "to": b, "n": n}``.
"""

from __future__ import annotations

import json
import math

import numpy as np

from . import measures as ms
from . import quadrature as qd

SCHEMA_VERSION = 1

_FAMILIES = ("power_window", "power_tail", "exp_tail", "tabulated")


class DocumentError(ValueError):
    """Malformed measure or grid document; message carries the location."""


def _encode_number(x):
    if isinstance(x, complex):
        if x.imag == 0.0:
            return float(x.real)
        return {"re": float(x.real), "im": float(x.imag)}
    return float(x)


def _decode_number(obj, where):
    if isinstance(obj, dict):
        try:
            return complex(float(obj["re"]), float(obj.get("im", 0.0)))
        except (KeyError, TypeError, ValueError):
            raise DocumentError(f"{where}: expected {{'re','im'}} object")
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise DocumentError(f"{where}: expected a number")
    return float(obj)


def _encode_bound(x):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x)


def _decode_bound(obj, where):
    if obj in ("inf", "+inf"):
        return math.inf
    if obj == "-inf":
        return -math.inf
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return float(obj)
    raise DocumentError(f"{where}: expected a number or 'inf'/'-inf'")


def measure_to_dict(mu, name=None):
    """Serializable document for ``mu``."""
    doc = {
        "schema": SCHEMA_VERSION,
        "domain": mu.domain,
        "atoms": [{"location": a.location, "weight": _encode_number(a.weight)}
                  for a in mu.atoms],
        "pieces": [],
    }
    for piece in mu.pieces:
        params = {}
        for key, val in piece.params.items():
            if key in ("grid", "values"):
                params[key] = [_encode_number(complex(v)) for v in
                               np.asarray(val).tolist()]
            else:
                params[key] = _encode_number(val)
        doc["pieces"].append({
            "family": piece.family,
            "support": [_encode_bound(piece.support[0]),
                        _encode_bound(piece.support[1])],
            "params": params,
            "left_exponent": piece.left_exponent,
            "right_exponent": piece.right_exponent,
        })
    metadata = {"positive": mu.is_positive}
    if name is not None:
        metadata["name"] = name
    doc["metadata"] = metadata
    return doc


def measure_from_dict(doc, where="measure"):
    """Measure from a schema-1 document; raises DocumentError with the
    offending location on malformed input."""
    if not isinstance(doc, dict):
        raise DocumentError(f"{where}: expected an object")
    schema = doc.get("schema", SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise DocumentError(f"{where}.schema: unsupported version {schema!r}")
    domain = doc.get("domain", ms.HALF_LINE)
    if domain not in (ms.HALF_LINE, ms.LINE):
        raise DocumentError(f"{where}.domain: unknown domain {domain!r}")
    atoms = []
    for i, rec in enumerate(doc.get("atoms", [])):
        loc = _decode_number(rec.get("location"), f"{where}.atoms[{i}].location")
        wt = _decode_number(rec.get("weight", 1.0), f"{where}.atoms[{i}].weight")
        if isinstance(loc, complex):
            raise DocumentError(f"{where}.atoms[{i}].location: must be real")
        atoms.append(ms.Atom(loc, wt))
    pieces = []
    for i, rec in enumerate(doc.get("pieces", [])):
        here = f"{where}.pieces[{i}]"
        family = rec.get("family")
        if family not in _FAMILIES:
            raise DocumentError(f"{here}.family: unknown family {family!r}")
        support = rec.get("support")
        if not (isinstance(support, (list, tuple)) and len(support) == 2):
            raise DocumentError(f"{here}.support: expected [lo, hi]")
        lo = _decode_bound(support[0], f"{here}.support[0]")
        hi = _decode_bound(support[1], f"{here}.support[1]")
        raw = rec.get("params")
        if not isinstance(raw, dict):
            raise DocumentError(f"{here}.params: expected an object")
        params = {}
        for key, val in raw.items():
            if key in ("grid", "values"):
                if not isinstance(val, list):
                    raise DocumentError(f"{here}.params.{key}: expected a list")
                vals = [_decode_number(v, f"{here}.params.{key}[{j}]")
                        for j, v in enumerate(val)]
                if key == "grid":
                    params[key] = tuple(float(np.real(v)) for v in vals)
                else:
                    vv = np.asarray(vals)
                    if not np.iscomplexobj(vv) or not vv.imag.any():
                        vals = [float(np.real(v)) for v in vals]
                    params[key] = tuple(vals)
            else:
                params[key] = _decode_number(val, f"{here}.params.{key}")
        try:
            pieces.append(ms.DensityPiece(
                support=(lo, hi), family=family, params=params,
                left_exponent=float(rec.get("left_exponent", 0.0)),
                right_exponent=float(rec.get("right_exponent", 0.0))))
        except (ValueError, KeyError) as exc:
            raise DocumentError(f"{here}: {exc}")
    try:
        return ms.Measure(domain=domain, atoms=tuple(atoms),
                          pieces=tuple(pieces))
    except ValueError as exc:
        raise DocumentError(f"{where}: {exc}")


def save_measure(mu, path, name=None):
    with open(path, "w") as fh:
        json.dump(measure_to_dict(mu, name=name), fh, indent=2)


def load_measure(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}")
    return measure_from_dict(doc, where=str(path))


def grid_from_spec(spec, where="grid"):
    """Grid array from ``{"kind", "from", "to", "n"}`` (or a JSON string)."""
    if isinstance(spec, str):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"{where}: invalid JSON ({exc.msg})")
    if not isinstance(spec, dict):
        raise DocumentError(f"{where}: expected an object")
    kind = spec.get("kind", "linear")
    try:
        lo = float(spec["from"])
        hi = float(spec["to"])
        n = int(spec["n"])
    except (KeyError, TypeError, ValueError):
        raise DocumentError(f"{where}: needs numeric 'from', 'to' and 'n'")
    if n < 1 or not hi > lo:
        raise DocumentError(f"{where}: need n >= 1 and to > from")
    if kind == "linear":
        return np.linspace(lo, hi, n)
    if kind == "log":
        if lo <= 0:
            raise DocumentError(f"{where}: log grid needs from > 0")
        return np.geomspace(lo, hi, n)
    if kind == "chebyshev":
        return qd.chebyshev_grid(lo, hi, n)
    raise DocumentError(f"{where}.kind: unknown kind {kind!r}")


def parse_complex(text, where="z"):
    """Complex number from the CLI form ``re,im`` (or a bare real)."""
    parts = str(text).split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise DocumentError(f"{where}: expected 're,im', got {text!r}")
