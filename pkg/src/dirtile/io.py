"""JSON documents for patches, edge reversals and reflection schemes.

Writers are deterministic: the same value always produces the same bytes.
Readers check the document shape first and report the offending field.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any, Optional

import jsonschema

from .alignment import EdgeReversal, ReflectionScheme
from .coxeter import CoxeterParams, InvalidParams
from .dihedral import element_name, format_signs, parse_element, parse_signs
from .mgon import MGonCategory
from .patch import Edge, Tile, TilingPatch, Vertex
from .reversal_closed import ReversalClosedSubset


class SchemaError(ValueError):
    pass


_SIGNS = {"type": "string", "pattern": "^[+-]{3,}$"}
_ID = {"type": "integer", "minimum": 0}
_ID_OR_NULL = {"anyOf": [_ID, {"type": "null"}]}

PATCH_SCHEMA = {
    "type": "object",
    "required": ["m", "n", "code", "radius", "vertices", "edges", "tiles"],
    "properties": {
        "m": {"type": "integer", "minimum": 3},
        "n": {"type": "integer", "minimum": 3},
        "code": _SIGNS,
        "radius": {"type": "integer", "minimum": 0},
        "base_tile": _ID,
        "reflective": {"type": "boolean"},
        "vertices": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "edges", "interior"],
                "properties": {
                    "id": _ID,
                    "edges": {"type": "array", "items": _ID_OR_NULL},
                    "interior": {"type": "boolean"},
                },
            },
        },
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "src", "tgt", "tiles", "interior"],
                "properties": {
                    "id": _ID,
                    "src": _ID,
                    "tgt": _ID,
                    "tiles": {"type": "array", "minItems": 2, "maxItems": 2, "items": _ID_OR_NULL},
                    "interior": {"type": "boolean"},
                },
            },
        },
        "tiles": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "edges", "color", "word"],
                "properties": {
                    "id": _ID,
                    "edges": {"type": "array", "items": _ID},
                    "color": {"enum": [1, -1]},
                    "word": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                },
            },
        },
    },
}

REVERSAL_SCHEMA = {
    "type": "object",
    "required": ["patch", "values"],
    "properties": {
        "patch": {"type": "string"},
        "patch_sha256": {"type": "string"},
        "values": {
            "type": "array",
            "items": {
                "type": "array",
                "minItems": 2,
                "maxItems": 2,
                "prefixItems": [_ID, {"enum": [1, -1]}],
            },
        },
    },
}

SCHEME_SCHEMA = {
    "type": "object",
    "required": ["base", "target", "n", "gamma", "phi"],
    "properties": {
        "base": _SIGNS,
        "target": _SIGNS,
        "n": {"type": "integer", "minimum": 3},
        "gamma": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "phi": {"type": "array", "items": _SIGNS},
    },
}


def _check(doc: Any, schema: dict, what: str) -> None:
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as err:
        where = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise SchemaError(f"{what}: field {where}: {err.message}") from None


def _one_line(value: Any) -> str:
    return json.dumps(value, separators=(", ", ": "), ensure_ascii=True)


def dumps(doc: dict) -> str:
    """JSON with one top-level field per line and one table row per line."""
    parts = []
    for key, value in doc.items():
        if isinstance(value, list) and value and isinstance(value[0], (dict, list)):
            rows = ",\n".join("  " + _one_line(v) for v in value)
            parts.append(f" {_one_line(key)}: [\n{rows}\n ]")
        else:
            parts.append(f" {_one_line(key)}: {_one_line(value)}")
    return "{\n" + ",\n".join(parts) + "\n}\n"


def loads(text: str, what: str = "document") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError(f"{what}: line {err.lineno} column {err.colno}: {err.msg}") from None


# --- patches ------------------------------------------------------------


def patch_to_doc(patch: TilingPatch) -> dict:
    return {
        "m": patch.m,
        "n": patch.n,
        "code": format_signs(patch.category.code),
        "radius": patch.radius,
        "base_tile": patch.base_tile,
        "reflective": patch.reflective,
        "vertices": [
            {"id": v.id, "edges": list(v.edges), "interior": v.interior} for v in patch.vertices
        ],
        "edges": [
            {"id": e.id, "src": e.src, "tgt": e.tgt, "tiles": list(e.tiles), "interior": e.interior}
            for e in patch.edges
        ],
        "tiles": [
            {"id": t.id, "edges": list(t.edges), "color": t.color, "word": list(t.word)}
            for t in patch.tiles
        ],
    }


def _in_order(rows: list, table: str) -> None:
    for k, row in enumerate(rows):
        if row["id"] != k:
            raise SchemaError(f"patch: field {table}/{k}/id: expected {k}, got {row['id']}")


def patch_from_doc(doc: Any) -> TilingPatch:
    _check(doc, PATCH_SCHEMA, "patch")
    try:
        params = CoxeterParams(doc["m"], doc["n"])
    except InvalidParams as err:
        raise SchemaError(f"patch: field m/n: {err}") from None
    code = parse_signs(doc["code"])
    if len(code) != params.m:
        raise SchemaError(f"patch: field code: length {len(code)} but m={params.m}")
    for table in ("vertices", "edges", "tiles"):
        _in_order(doc[table], table)
    for k, t in enumerate(doc["tiles"]):
        if len(t["edges"]) != params.m:
            raise SchemaError(f"patch: field tiles/{k}/edges: expected {params.m} entries")
    vertices = tuple(Vertex(v["id"], tuple(v["edges"]), v["interior"]) for v in doc["vertices"])
    edges = tuple(
        Edge(e["id"], e["src"], e["tgt"], tuple(e["tiles"]), e["interior"]) for e in doc["edges"]
    )
    tiles = tuple(Tile(t["id"], tuple(t["edges"]), t["color"], tuple(t["word"])) for t in doc["tiles"])
    return TilingPatch(
        params,
        MGonCategory(code),
        vertices,
        edges,
        tiles,
        doc.get("base_tile", 0),
        doc["radius"],
        doc.get("reflective", True),
    )


def write_patch(patch: TilingPatch, path) -> None:
    Path(path).write_text(dumps(patch_to_doc(patch)))


def read_patch(path) -> TilingPatch:
    return patch_from_doc(loads(Path(path).read_text(), str(path)))


def patch_digest(patch: TilingPatch) -> str:
    return hashlib.sha256(dumps(patch_to_doc(patch)).encode()).hexdigest()


# --- edge reversals -----------------------------------------------------


def reversal_to_doc(tau: EdgeReversal, patch_ref: str) -> dict:
    return {
        "patch": patch_ref,
        "patch_sha256": patch_digest(tau.patch),
        "values": [[e, v] for e, v in enumerate(tau.values)],
    }


def reversal_from_doc(doc: Any, patch: TilingPatch) -> EdgeReversal:
    _check(doc, REVERSAL_SCHEMA, "edge reversal")
    digest = doc.get("patch_sha256")
    if digest is not None and digest != patch_digest(patch):
        raise SchemaError("edge reversal: field patch_sha256: does not match the referenced patch")
    values: list[Optional[int]] = [None] * len(patch.edges)
    for k, (e, v) in enumerate(doc["values"]):
        if e >= len(values):
            raise SchemaError(f"edge reversal: field values/{k}: edge {e} not in patch")
        if values[e] is not None:
            raise SchemaError(f"edge reversal: field values/{k}: edge {e} listed twice")
        values[e] = v
    missing = [e for e, v in enumerate(values) if v is None]
    if missing:
        raise SchemaError(f"edge reversal: field values: edges {missing[:5]} have no value")
    return EdgeReversal(patch, tuple(values))


def write_reversal(tau: EdgeReversal, path, patch_path) -> None:
    path = Path(path)
    ref = Path(patch_path)
    try:
        ref = ref.resolve().relative_to(path.resolve().parent)
    except ValueError:
        ref = ref.resolve()
    path.write_text(dumps(reversal_to_doc(tau, ref.as_posix())))


def read_reversal(path, patch: Optional[TilingPatch] = None) -> EdgeReversal:
    path = Path(path)
    doc = loads(path.read_text(), str(path))
    _check(doc, REVERSAL_SCHEMA, "edge reversal")
    if patch is None:
        patch = read_patch(path.parent / doc["patch"])
    return reversal_from_doc(doc, patch)


# --- schemes ------------------------------------------------------------


def scheme_to_doc(scheme: ReflectionScheme) -> dict:
    return {
        "base": format_signs(scheme.base.code),
        "target": format_signs(scheme.target.code),
        "n": scheme.n,
        "gamma": [element_name(s) for s in scheme.gamma.sorted()],
        "phi": [format_signs(c) for c in scheme.phi],
    }


def scheme_from_doc(doc: Any) -> ReflectionScheme:
    _check(doc, SCHEME_SCHEMA, "scheme")
    base = MGonCategory(parse_signs(doc["base"]))
    target = MGonCategory(parse_signs(doc["target"]))
    m = base.m
    if target.m != m:
        raise SchemaError(f"scheme: field target: length {target.m}, base has {m}")
    if len(doc["phi"]) != m:
        raise SchemaError(f"scheme: field phi: expected {m} codes, got {len(doc['phi'])}")
    for k, text in enumerate(doc["phi"]):
        if len(text) != m:
            raise SchemaError(f"scheme: field phi/{k}: length {len(text)}, expected {m}")
    gamma = []
    for k, name in enumerate(doc["gamma"]):
        try:
            gamma.append(parse_element(name, m))
        except ValueError as err:
            raise SchemaError(f"scheme: field gamma/{k}: {err}") from None
    subset = ReversalClosedSubset(m, target.code, frozenset(gamma))
    return ReflectionScheme(base, target, doc["n"], subset, tuple(parse_signs(c) for c in doc["phi"]))


def write_scheme(scheme: ReflectionScheme, path) -> None:
    Path(path).write_text(dumps(scheme_to_doc(scheme)))


def read_scheme(path) -> ReflectionScheme:
    return scheme_from_doc(loads(Path(path).read_text(), str(path)))
