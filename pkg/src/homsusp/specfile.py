"""JSON spec files: schema, validation and conversion to variety objects."""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from .analyzer import FactoredSuspension
from .danielewski import DanielewskiSurface
from .geometry import SuspensionTower
from .parsing import parse_polynomial
from .poly import VariableContext

_NAME = {"type": "string", "pattern": "^[A-Za-z_][A-Za-z_0-9]*$"}
_EXPR = {"type": "string", "minLength": 1}

SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "homsusp variety spec",
    "oneOf": [
        {
            "type": "object",
            "properties": {
                "kind": {"const": "tower"},
                "base_vars": {"type": "array", "items": _NAME, "minItems": 1},
                "levels": {"type": "array", "items": _EXPR},
                "pair_names": {
                    "type": "array",
                    "items": {"type": "array", "items": _NAME, "minItems": 2, "maxItems": 2},
                },
            },
            "required": ["kind", "base_vars", "levels"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "danielewski"},
                "n": {"type": "integer", "minimum": 1},
                "f": _EXPR,
            },
            "required": ["kind", "n", "f"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "factored_suspension"},
                "vars": {"type": "array", "items": _NAME, "minItems": 1},
                "factors": {"type": "array", "items": _EXPR, "minItems": 2},
                "variable_witness": {"oneOf": [{"type": "array", "items": _EXPR}, {"type": "null"}]},
                "irreducibility_attested": {"type": "boolean"},
            },
            "required": ["kind", "vars", "factors"],
            "additionalProperties": False,
        },
    ],
}


def validate(doc: dict) -> None:
    """Raise :class:`jsonschema.ValidationError` for malformed documents."""
    jsonschema.validate(doc, SCHEMA)


def from_document(doc: dict):
    validate(doc)
    kind = doc["kind"]
    if kind == "tower":
        base = tuple(doc["base_vars"])
        k = len(doc["levels"])
        pairs = [tuple(p) for p in doc.get("pair_names", [])] or [(f"u{i}", f"v{i}") for i in range(1, k + 1)]
        if len(pairs) != k:
            raise ValueError(f"{k} levels but {len(pairs)} pair names")
        levels = []
        for i, text in enumerate(doc["levels"]):
            ctx = VariableContext(base + tuple(n for p in pairs[:i] for n in p))
            levels.append(parse_polynomial(text, ctx))
        return SuspensionTower(base, tuple(levels), tuple(pairs))
    if kind == "danielewski":
        return DanielewskiSurface(doc["n"], parse_polynomial(doc["f"], ["y"]))
    ctx = VariableContext(doc["vars"])
    witness = doc.get("variable_witness")
    return FactoredSuspension(
        ctx.names,
        tuple(parse_polynomial(t, ctx) for t in doc["factors"]),
        None if witness is None else tuple(parse_polynomial(t, ctx) for t in witness),
        bool(doc.get("irreducibility_attested", False)),
    )


def load(path) -> object:
    with open(Path(path), encoding="utf-8") as fh:
        return from_document(json.load(fh))
