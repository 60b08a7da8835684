"""Schema-checked readers for the henon-qh export formats.

This package consumes only exported files; no dynamics computation happens
here.  Every reader validates the schema tag before touching the payload and
raises SchemaError naming the offending field or file.
"""

from __future__ import annotations

import json

import numpy as np

SCHEMA_PREFIX = "henon-qh/1:"


class SchemaError(Exception):
    """Input file does not conform to the expected versioned schema."""


def read_csv(path, expected_kind):
    """Parse a schema-tagged CSV into a dict of named numpy columns."""
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines or not lines[0].startswith("# schema="):
        raise SchemaError(f"{path}: missing '# schema=' header line")
    tag = lines[0][len("# schema="):]
    if tag != SCHEMA_PREFIX + expected_kind:
        raise SchemaError(f"{path}: schema is {tag!r}, expected "
                          f"{SCHEMA_PREFIX + expected_kind!r}")
    if len(lines) < 2:
        raise SchemaError(f"{path}: missing column header line")
    names = lines[1].split(",")
    rows = [ln.split(",") for ln in lines[2:] if ln]
    for i, row in enumerate(rows):
        if len(row) != len(names):
            raise SchemaError(f"{path}: row {i + 3} has {len(row)} cells, "
                              f"expected {len(names)}")
    cols = {}
    for j, name in enumerate(names):
        raw = [row[j] for row in rows]
        try:
            cols[name] = np.array([float(v) for v in raw])
        except ValueError:
            cols[name] = np.array(raw)
    return cols


def read_json(path, expected_kind):
    with open(path) as fh:
        doc = json.load(fh)
    tag = doc.get("schema")
    if tag != SCHEMA_PREFIX + expected_kind:
        raise SchemaError(f"{path}: field 'schema' is {tag!r}, expected "
                          f"{SCHEMA_PREFIX + expected_kind!r}")
    return doc


def require_columns(cols, names, path):
    for n in names:
        if n not in cols:
            raise SchemaError(f"{path}: missing column {n!r}")
