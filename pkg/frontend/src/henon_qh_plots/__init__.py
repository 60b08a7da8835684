"""Figure rendering for henon-qh export files."""

from .figures import (
    FIGURE_KINDS,
    render_angles,
    render_disks,
    render_growth,
    render_strata,
)
from .io import SchemaError, read_csv, read_json

__all__ = [
    "FIGURE_KINDS",
    "SchemaError",
    "read_csv",
    "read_json",
    "render_angles",
    "render_disks",
    "render_growth",
    "render_strata",
]

__version__ = "1.0.0"
