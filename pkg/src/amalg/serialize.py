"""JSON manifests: parsing, validation and exact serialization.

Scalars travel as strings (``"3/4"``, ``"-2"``, ``"0.125"``), as integer
pairs ``[p, q]`` or as JSON integers.  JSON floats are refused at parse
time, so no binary float ever reaches the library.  Output scalars are
always ``"p/q"`` strings.
"""

from __future__ import annotations

import json
from typing import Any

import jsonschema
from gmpy2 import mpq

from .lattice import (
    MPQ,
    ALVec,
    FiniteAL,
    FiniteSup,
    FinVec,
    ModelSpace,
    SeqLim,
    SeqVec,
    SpaceMismatch,
    SumVec,
    SupDirectSum,
    check,
    q,
)
from .products import ProductTensor
from .weights import FinWeight, SeqWeight, SumWeight, check_weight

SCHEMA_VERSION = 1


class ManifestError(ValueError):
    """The manifest is not valid JSON or does not match the schema."""


_SCALAR = {
    "oneOf": [
        {"type": "string", "pattern": r"^\s*[+-]?(\d+(/\d+)?|\d*\.\d+|\d+\.\d*)\s*$"},
        {"type": "integer"},
        {
            "type": "array",
            "prefixItems": [{"type": "integer"}, {"type": "integer", "not": {"const": 0}}],
            "minItems": 2,
            "maxItems": 2,
        },
    ]
}
_SCALARS = {"type": "array", "items": {"$ref": "#/$defs/scalar"}}

SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schemaVersion"],
    "properties": {
        "schemaVersion": {"const": SCHEMA_VERSION},
        "space": {"$ref": "#/$defs/space"},
        "codomain": {"$ref": "#/$defs/space"},
        "weight": {},
        "tensor": {
            "type": "object",
            "oneOf": [
                {"required": ["entries"]},
                {"required": ["dim", "flat"]},
            ],
            "properties": {
                "entries": {"type": "array"},
                "dim": {"type": "integer", "minimum": 1},
                "flat": _SCALARS,
            },
        },
        "operator": {
            "type": "object",
            "required": ["matrix"],
            "properties": {"matrix": {"type": "array", "items": _SCALARS}},
        },
        "vectors": {"type": "object"},
        "nakano": {
            "type": "object",
            "properties": {
                "family": {"type": "array"},
                "staircases": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["prefix", "front", "tail"],
                        "properties": {
                            "prefix": _SCALARS,
                            "front": {"$ref": "#/$defs/scalar"},
                            "tail": {"$ref": "#/$defs/scalar"},
                        },
                    },
                },
            },
        },
        "params": {"type": "object"},
    },
    "$defs": {
        "scalar": _SCALAR,
        "space": {
            "type": "object",
            "required": ["kind"],
            "oneOf": [
                {
                    "properties": {
                        "kind": {"const": "FiniteSup"},
                        "dualWeights": {**_SCALARS, "minItems": 1},
                    },
                    "required": ["dualWeights"],
                },
                {
                    "properties": {"kind": {"const": "SeqLim"}, "theta": {"$ref": "#/$defs/scalar"}},
                    "required": ["theta"],
                },
                {
                    "properties": {
                        "kind": {"const": "FiniteAL"},
                        "n": {"type": "integer", "minimum": 0},
                        "hasNonatomicBand": {"type": "boolean"},
                    },
                    "required": ["n"],
                },
                {
                    "properties": {
                        "kind": {"const": "SupDirectSum"},
                        "left": {"$ref": "#/$defs/space"},
                        "right": {"$ref": "#/$defs/space"},
                    },
                    "required": ["left", "right"],
                },
            ],
        },
    },
}


def _no_floats(text: str):
    raise ManifestError(f"binary float {text!r} in manifest; write it as a string such as \"1/3\"")


def loads(text: str) -> dict:
    try:
        doc = json.loads(text, parse_float=_no_floats, parse_constant=_no_floats)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"invalid JSON: {exc}") from exc
    validate(doc)
    return doc


def validate(doc: Any) -> None:
    try:
        jsonschema.validate(doc, SCHEMA, cls=jsonschema.Draft202012Validator)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ManifestError(f"schema violation at {where}: {exc.message}") from exc


# --------------------------------------------------------------------------
# scalars


def parse_scalar(v) -> mpq:
    if isinstance(v, list):
        if len(v) != 2 or not all(type(a) is int for a in v) or v[1] == 0:
            raise ManifestError(f"bad integer pair {v!r}")
        return mpq(v[0], v[1])
    if isinstance(v, bool) or isinstance(v, float):
        raise ManifestError(f"not an exact scalar: {v!r}")
    try:
        return q(v)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ManifestError(f"not an exact scalar: {v!r}") from exc


def dump_scalar(v) -> str:
    if isinstance(v, float):
        return repr(v)
    v = q(v)
    return f"{v.numerator}/{v.denominator}"


def _scalars(vs) -> tuple:
    if not isinstance(vs, list):
        raise ManifestError(f"expected a list of scalars, got {vs!r}")
    return tuple(parse_scalar(v) for v in vs)


# --------------------------------------------------------------------------
# spaces


def parse_space(d: dict) -> ModelSpace:
    kind = d["kind"]
    try:
        if kind == "FiniteSup":
            return FiniteSup(_scalars(d["dualWeights"]))
        if kind == "SeqLim":
            return SeqLim(parse_scalar(d["theta"]))
        if kind == "FiniteAL":
            return FiniteAL(d["n"], bool(d.get("hasNonatomicBand", False)))
        if kind == "SupDirectSum":
            return SupDirectSum(parse_space(d["left"]), parse_space(d["right"]))
    except (KeyError, TypeError) as exc:
        raise ManifestError(f"bad space description {d!r}") from exc
    except ValueError as exc:
        raise ManifestError(str(exc)) from exc
    raise ManifestError(f"unknown space kind {kind!r}")


def dump_space(space: ModelSpace) -> dict:
    if isinstance(space, FiniteSup):
        return {"kind": "FiniteSup", "dualWeights": [dump_scalar(c) for c in space.weights]}
    if isinstance(space, SeqLim):
        return {"kind": "SeqLim", "theta": dump_scalar(space.theta)}
    if isinstance(space, FiniteAL):
        return {"kind": "FiniteAL", "n": space.n, "hasNonatomicBand": space.band}
    return {"kind": "SupDirectSum", "left": dump_space(space.left), "right": dump_space(space.right)}


# --------------------------------------------------------------------------
# vectors


def parse_vec(space: ModelSpace, d):
    try:
        if isinstance(space, FiniteSup):
            v = FinVec(_scalars(d))
        elif isinstance(space, SeqLim):
            v = SeqVec(_scalars(d.get("prefix", [])), parse_scalar(d["tail"]))
        elif isinstance(space, FiniteAL):
            v = ALVec(_scalars(d["atoms"]), parse_scalar(d.get("mass", 0)))
        else:
            v = SumVec(parse_vec(space.left, d["left"]), parse_vec(space.right, d["right"]))
        check(space, v)
    except (KeyError, TypeError, AttributeError, SpaceMismatch) as exc:
        raise ManifestError(f"bad vector {d!r} for {space.kind}: {exc}") from exc
    return v


def dump_vec(space: ModelSpace, v):
    if isinstance(space, FiniteSup):
        return [dump_scalar(a) for a in v.coords]
    if isinstance(space, SeqLim):
        return {"prefix": [dump_scalar(a) for a in v.prefix], "tail": dump_scalar(v.tail)}
    if isinstance(space, FiniteAL):
        return {"atoms": [dump_scalar(a) for a in v.atoms], "mass": dump_scalar(v.mass)}
    return {"left": dump_vec(space.left, v.left), "right": dump_vec(space.right, v.right)}


# --------------------------------------------------------------------------
# weights


def parse_weight(space: ModelSpace, d):
    try:
        if isinstance(space, (FiniteSup, FiniteAL)):
            w = FinWeight(_scalars(d))
        elif isinstance(space, SeqLim):
            w = SeqWeight(_scalars(d.get("prefix", [])), parse_scalar(d["tail"]), parse_scalar(d["limit"]))
        else:
            w = SumWeight(parse_weight(space.left, d["left"]), parse_weight(space.right, d["right"]))
        check_weight(space, w)
    except (KeyError, TypeError, AttributeError, SpaceMismatch) as exc:
        raise ManifestError(f"bad weight {d!r} for {space.kind}: {exc}") from exc
    return w


def dump_weight(space: ModelSpace, w):
    if isinstance(w, FinWeight):
        return [dump_scalar(a) for a in w.values]
    if isinstance(w, SeqWeight):
        return {
            "prefix": [dump_scalar(a) for a in w.prefix],
            "tail": dump_scalar(w.tail),
            "limit": dump_scalar(w.limit),
        }
    return {"left": dump_weight(space.left, w.left), "right": dump_weight(space.right, w.right)}


# --------------------------------------------------------------------------
# tensors and operators


def parse_tensor(d: dict) -> ProductTensor:
    try:
        if "entries" in d:
            ent = d["entries"]
            return ProductTensor(tuple(tuple(_scalars(row) for row in plane) for plane in ent))
        dim = d["dim"]
        flat = _scalars(d["flat"])
        if len(flat) != dim ** 3:
            raise ManifestError(f"a {dim}-dimensional tensor needs {dim ** 3} entries, got {len(flat)}")
        return ProductTensor.from_flat(dim, flat)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ManifestError):
            raise
        raise ManifestError(f"bad tensor: {exc}") from exc


def dump_tensor(B: ProductTensor) -> dict:
    return {"entries": [[[dump_scalar(v) for v in row] for row in plane] for plane in B.entries]}


def parse_matrix(rows) -> tuple:
    return tuple(_scalars(r) for r in rows)


def is_exact(v) -> bool:
    return type(v) is MPQ


def dumps(doc: dict, as_json: bool = True) -> str:
    """Deterministic rendering: sorted keys, fixed indentation."""
    if as_json:
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    return render_text(doc)


def render_text(doc: dict, indent: int = 0) -> str:
    lines = []
    pad = " " * indent
    width = max((len(k) for k in doc), default=0)
    for key in sorted(doc):
        val = doc[key]
        if isinstance(val, dict) and val:
            lines.append(f"{pad}{key}:")
            lines.append(render_text(val, indent + 2).rstrip("\n"))
        elif isinstance(val, list) and val and all(isinstance(v, dict) for v in val):
            lines.append(f"{pad}{key}:")
            for item in val:
                lines.append(render_text(item, indent + 2).rstrip("\n"))
                lines.append(f"{pad}  --")
        else:
            lines.append(f"{pad}{key.ljust(width)}  {json.dumps(val, sort_keys=True)}")
    return "\n".join(lines) + "\n"
