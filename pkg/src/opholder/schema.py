"""JSON schemas for verdict records and campaign reports.

Records are what :meth:`VerdictRecord.to_json` emits; a report wraps them
with the campaign config and summary.
"""

MATRIX = {
    "type": "object",
    "required": ["dim", "entries"],
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "entries": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        },
    },
    "additionalProperties": False,
}

NORM = {
    "type": "object",
    "required": ["kind"],
    "properties": {
        "kind": {"enum": ["schatten", "kyfan", "qnorm"]},
        "p": {"type": "number", "minimum": 1},
        "k": {"type": "integer", "minimum": 1},
        "base": {"$ref": "#/$defs/norm"},
    },
    "additionalProperties": False,
}

_SIDE = {"oneOf": [{"type": "number"}, {"$ref": "#/$defs/matrix"}]}

RECORD = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "VerdictRecord",
    "type": "object",
    "required": ["inequality_id", "lhs", "rhs", "gap", "tolerance", "pass", "params", "seed"],
    "properties": {
        "inequality_id": {"type": "string", "pattern": r"^[a-z_]+(\[m=\d+\])?$"},
        "lhs": _SIDE,
        "rhs": _SIDE,
        "gap": {"type": "number"},
        "tolerance": {"type": "number", "minimum": 0},
        "pass": {"type": "boolean"},
        "params": {
            "type": "object",
            "properties": {"norm": {"$ref": "#/$defs/norm"}},
        },
        "seed": {"type": ["integer", "null"], "minimum": 0},
    },
    "additionalProperties": False,
    "$defs": {"matrix": MATRIX, "norm": NORM},
}

REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "CampaignReport",
    "type": "object",
    "required": ["config", "records", "summary"],
    "properties": {
        "config": {"type": "object"},
        "records": {"type": "array", "items": {"$ref": "#/$defs/record"}},
        "summary": {
            "type": "object",
            "required": ["total", "failures", "per_inequality"],
            "properties": {
                "total": {"type": "integer", "minimum": 0},
                "failures": {"type": "integer", "minimum": 0},
            },
        },
    },
    "$defs": {"record": {k: v for k, v in RECORD.items() if k not in ("$schema", "$defs")},
              "matrix": MATRIX, "norm": NORM},
}
