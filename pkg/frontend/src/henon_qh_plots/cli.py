"""Command-line rendering of figure specs.

`render` consumes one JSON figure spec; `render-all` renders every figure
kind whose inputs exist in a results directory.  Exit codes: 0 success,
2 invalid spec or schema mismatch, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .figures import FIGURE_KINDS
from .io import SchemaError


def _load_spec(path):
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON at line {exc.lineno}: "
                              f"{exc.msg}") from exc
    for field in ("kind", "inputs", "output"):
        if field not in doc:
            raise SchemaError(f"{path}: missing field {field!r}")
    kind = doc["kind"]
    if kind not in FIGURE_KINDS:
        raise SchemaError(f"{path}: field 'kind' is {kind!r}, expected one "
                          f"of {sorted(FIGURE_KINDS)}")
    _, required = FIGURE_KINDS[kind]
    for name in required:
        if name not in doc["inputs"]:
            raise SchemaError(f"{path}: field 'inputs.{name}' is required "
                              f"for kind {kind!r}")
    return doc


def render_spec(doc):
    func, _ = FIGURE_KINDS[doc["kind"]]
    func(doc["inputs"], doc["output"], doc.get("style"))


_DEFAULT_INPUTS = {
    "growth": {"growth_csv": "growth.csv", "growth_json": "growth.json"},
    "angles": {"intersections_csv": "intersections.csv"},
    "strata": {"strata_csv": "strata.csv"},
    "disks": {"disk_samples_csv": "disk_samples.csv"},
}


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="henon-qh-plots",
        description="Render figures from henon-qh export files.")
    sub = parser.add_subparsers(dest="command", required=True)
    p1 = sub.add_parser("render")
    p1.add_argument("--spec", required=True)
    p2 = sub.add_parser("render-all")
    p2.add_argument("--results", required=True)
    p2.add_argument("--out", required=True)
    args = parser.parse_args(argv)
    try:
        if args.command == "render":
            render_spec(_load_spec(args.spec))
            print(f"rendered 1 figure from {args.spec}")
        else:
            os.makedirs(args.out, exist_ok=True)
            done = 0
            for kind, inputs in sorted(_DEFAULT_INPUTS.items()):
                paths = {k: os.path.join(args.results, v)
                         for k, v in inputs.items()}
                primary = paths[FIGURE_KINDS[kind][1][0]]
                if not os.path.exists(primary):
                    continue
                paths = {k: v for k, v in paths.items()
                         if os.path.exists(v)}
                render_spec({"kind": kind, "inputs": paths,
                             "output": os.path.join(args.out,
                                                    f"{kind}.png")})
                done += 1
            print(f"rendered {done} figures into {args.out}")
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
