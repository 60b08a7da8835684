"""Figure builders: each takes input paths and writes one deterministic PNG."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .io import read_csv, read_json, require_columns  # noqa: E402

_METADATA = {"Software": "henon-qh-plots"}
_DPI = 120


def _save(fig, output):
    fig.savefig(output, dpi=_DPI, metadata=_METADATA)
    plt.close(fig)


def render_growth(inputs, output, style=None):
    """m(r) and M(r) against r with a vertical marker at kappa."""
    style = style or {}
    cols = read_csv(inputs["growth_csv"], "growth")
    require_columns(cols, ["r", "m", "M"], inputs["growth_csv"])
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(cols["r"], cols["m"], marker="o", label="m(r)")
    ax.plot(cols["r"], cols["M"], marker="s", label="M(r)")
    if "growth_json" in inputs:
        doc = read_json(inputs["growth_json"], "growth-summary")
        kappa = doc.get("kappa")
        if kappa is not None:
            ax.axvline(kappa, color="k", linestyle="--",
                       label=f"kappa = {kappa:.4f}")
    ax.set_xscale(style.get("xscale", "log"))
    ax.set_xlabel("r")
    ax.set_ylabel("circle max of G along the curve")
    ax.legend()
    ax.set_title("Growth functions of the curve family")
    fig.tight_layout()
    _save(fig, output)


def render_angles(inputs, output, style=None):
    """Histogram of tangent angles at detected intersections."""
    style = style or {}
    path = inputs["intersections_csv"]
    cols = read_csv(path, "intersections")
    require_columns(cols, ["angle", "mu"], path)
    fig, ax = plt.subplots(figsize=(6, 4))
    angles = np.asarray(cols["angle"], dtype=float)
    if angles.size == 0:
        ax.annotate("no intersections found", (0.5, 0.5),
                    xycoords="axes fraction", ha="center", va="center")
        ax.set_xlim(0, np.pi / 2)
        ax.set_ylim(0, 1)
    else:
        ax.hist(angles, bins=int(style.get("bins", 18)),
                range=(0.0, np.pi / 2), edgecolor="black")
        ax.axvline(angles.min(), color="r", linestyle=":",
                   label=f"min angle = {angles.min():.3f}")
        ax.legend()
    ax.set_xlabel("Hermitian tangent angle (rad)")
    ax.set_ylabel("count")
    ax.set_title("Intersection angles")
    fig.tight_layout()
    _save(fig, output)


def render_strata(inputs, output, style=None):
    """Table of (m_s, m_u) strata with sample counts."""
    path = inputs["strata_csv"]
    cols = read_csv(path, "strata")
    require_columns(cols, ["m_s", "m_u", "count"], path)
    n = len(cols["count"])
    fig, ax = plt.subplots(figsize=(4, 1.2 + 0.4 * max(n, 1)))
    ax.axis("off")
    cells = [[f"{int(cols['m_s'][i])}", f"{int(cols['m_u'][i])}",
              f"{int(cols['count'][i])}"] for i in range(n)]
    if not cells:
        cells = [["-", "-", "0"]]
    table = ax.table(cellText=cells,
                     colLabels=["m_s", "m_u", "samples"],
                     loc="center", cellLoc="center")
    table.scale(1.0, 1.4)
    ax.set_title("Vanishing-order strata")
    fig.tight_layout()
    _save(fig, output)


def render_disks(inputs, output, style=None):
    """Disk boundary samples in a C^2 projection, colored by escape rate."""
    style = style or {}
    path = inputs["disk_samples_csv"]
    cols = read_csv(path, "disk-samples")
    color_by = style.get("color_by", "gminus")
    require_columns(cols, ["re_x", "re_y", color_by], path)
    fig, ax = plt.subplots(figsize=(6, 5))
    sc = ax.scatter(cols["re_x"], cols["re_y"],
                    c=np.abs(cols[color_by]), s=12, cmap="viridis")
    fig.colorbar(sc, ax=ax, label=f"|{color_by}|")
    ax.set_xlabel("Re x")
    ax.set_ylabel("Re y")
    ax.set_title("Local disk boundaries on the manifolds")
    fig.tight_layout()
    _save(fig, output)


FIGURE_KINDS = {
    "growth": (render_growth, ["growth_csv"]),
    "angles": (render_angles, ["intersections_csv"]),
    "strata": (render_strata, ["strata_csv"]),
    "disks": (render_disks, ["disk_samples_csv"]),
}
