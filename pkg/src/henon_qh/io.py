"""Run configuration and deterministic CSV/JSON output helpers."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np

from .maps import MapSpecError, map_from_dict, quadratic_henon

SCHEMA_VERSION = "henon-qh/1"


class ConfigError(Exception):
    """Invalid run configuration (bad JSON, bad field, bad value)."""


_DEFAULTS = {
    "map": {"a": 0.5, "c": -6.0},
    "saddles": {"n_max_period": 1, "grid": 32},
    "green": {"box": 8.0, "resolution": 60, "n_max": 400},
    "uniformize": {"order": 40, "sides": ["unstable", "stable"]},
    "family": {"n_max_period": 1, "kind": "saddle", "recentered_samples": 12,
               "recentered_order": 12},
    "growth": {"r_min": 0.3, "r_max": 3.0, "r_count": 9},
    "disks": {"radius": 0.5, "rays": 128},
    "intersections": {"radius_u": 12.0, "radius_s": 100.0, "seeds": 7,
                      "resid_tol": 1e-9},
    "tangency": {"k": 1, "c": 0.5, "delta": 1e-3, "n_min": 1, "n_max": 8},
    "stratify": {"threshold": 1e-5, "radius": 1e-6},
}


@dataclass
class RunConfig:
    map: object
    sections: dict = field(default_factory=dict)
    seed: int = 0
    jobs: int = 1

    def section(self, name):
        out = dict(_DEFAULTS.get(name, {}))
        out.update(self.sections.get(name, {}))
        return out


def load_config(path, seed=0, jobs=1):
    """Parse a JSON run configuration; defaults fill anything omitted."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise exc
    try:
        raw = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    known = set(_DEFAULTS) | {"map"}
    for key in raw:
        if key not in known:
            raise ConfigError(f"{path}: unknown section {key!r} "
                              f"(known: {sorted(known)})")
    mp = raw.get("map", _DEFAULTS["map"])
    try:
        if "factors" in mp:
            f = map_from_dict(mp)
        else:
            f = quadratic_henon(complex(*_pair(mp.get("a", 0.5))),
                                complex(*_pair(mp.get("c", -6.0))))
    except (MapSpecError, TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: bad map section: {exc}") from exc
    sections = {k: v for k, v in raw.items() if k != "map"}
    for name, sec in sections.items():
        if not isinstance(sec, dict):
            raise ConfigError(f"{path}: section {name!r} must be an object")
        for key in sec:
            if key not in _DEFAULTS[name]:
                raise ConfigError(
                    f"{path}: unknown key {key!r} in section {name!r} "
                    f"(known: {sorted(_DEFAULTS[name])})")
    return RunConfig(map=f, sections=sections, seed=seed, jobs=jobs)


def _pair(v):
    if isinstance(v, (list, tuple)):
        return float(v[0]), float(v[1])
    return float(v), 0.0


def fmt(x):
    """Shortest round-trippable decimal form of a float."""
    return "%.17g" % float(x)


def write_csv(path, schema, header, rows):
    """CSV with a schema comment line; floats rendered round-trippably."""
    lines = [f"# schema={SCHEMA_VERSION}:{schema}", ",".join(header)]
    for row in rows:
        cells = []
        for v in row:
            if isinstance(v, (bool, np.bool_)):
                cells.append("1" if v else "0")
            elif isinstance(v, (int, np.integer)):
                cells.append(str(int(v)))
            elif isinstance(v, str):
                cells.append(v)
            else:
                cells.append(fmt(v))
        lines.append(",".join(cells))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_json(path, schema, payload):
    doc = {"schema": f"{SCHEMA_VERSION}:{schema}"}
    doc.update(payload)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True, default=_jsonify)
        fh.write("\n")


def _jsonify(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    raise TypeError(f"not JSON-serializable: {type(v)}")


def ensure_outdir(path):
    os.makedirs(path, exist_ok=True)
    return path
