"""Command-line entry points.

Every subcommand reads one JSON configuration file, writes deterministic
CSV/JSON artifacts into --out, and prints a one-line summary.  Exit codes:
0 success, 2 invalid configuration or arguments, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import family as fam
from . import intersect as ix
from .green import green_batch
from .io import ConfigError, ensure_outdir, fmt, load_config, write_csv, \
    write_json
from .saddles import find_saddles
from .uniformize import circle_max_green, linearize, normalize


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.jobs is None:
        args.jobs = int(os.environ.get("HENON_QH_JOBS", "1"))
    try:
        cfg = load_config(args.config, seed=args.seed, jobs=args.jobs)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 3
    try:
        out = ensure_outdir(args.out)
    except OSError as exc:
        print(f"error: cannot create output directory: {exc}",
              file=sys.stderr)
        return 3
    try:
        args.func(cfg, out)
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return 3
    return 0


def _build_parser():
    p = argparse.ArgumentParser(
        prog="henon-qh",
        description="Numerical diagnostics for complex quadratic-like "
                    "polynomial diffeomorphisms of C^2.")
    sub = p.add_subparsers(dest="command", required=True)
    cmds = {
        "saddles": cmd_saddles,
        "green": cmd_green,
        "uniformize": cmd_uniformize,
        "family-report": cmd_family_report,
        "growth": cmd_growth,
        "local-disks": cmd_local_disks,
        "intersections": cmd_intersections,
        "tangency-report": cmd_tangency_report,
        "stratify": cmd_stratify,
        "qh-report": cmd_qh_report,
    }
    for name, func in cmds.items():
        q = sub.add_parser(name)
        q.add_argument("--config", required=True)
        q.add_argument("--out", required=True)
        q.add_argument("--jobs", type=int, default=None)
        q.add_argument("--seed", type=int, default=0)
        q.set_defaults(func=func)
    return p


def _saddle_rows(saddles):
    rows = []
    for idx, s in enumerate(saddles):
        for pos, z in enumerate(s.cycle):
            rows.append([s.period, idx, pos, z[0].real, z[0].imag,
                         z[1].real, z[1].imag, s.nu_s.real, s.nu_s.imag,
                         s.nu_u.real, s.nu_u.imag, s.residual])
    return rows


_SADDLE_HEADER = ["period", "cycle", "position", "re_x", "im_x", "re_y",
                  "im_y", "re_nu_s", "im_nu_s", "re_nu_u", "im_nu_u",
                  "residual"]


def _find_all_saddles(cfg):
    sec = cfg.section("saddles")
    out = []
    for N in range(1, int(sec["n_max_period"]) + 1):
        out.extend(find_saddles(cfg.map, N, grid=int(sec["grid"]),
                                seed=cfg.seed))
    return out


def cmd_saddles(cfg, out):
    saddles = _find_all_saddles(cfg)
    write_csv(os.path.join(out, "saddles.csv"), "saddles",
              _SADDLE_HEADER, _saddle_rows(saddles))
    write_json(os.path.join(out, "saddles.json"), "saddles-summary", {
        "count": len(saddles),
        "periods": sorted({s.period for s in saddles}),
        "max_residual": max((s.residual for s in saddles), default=0.0),
    })
    print(f"saddles: {len(saddles)} cycles -> {out}/saddles.csv")


def cmd_green(cfg, out):
    sec = cfg.section("green")
    box, res = float(sec["box"]), int(sec["resolution"])
    xs = np.linspace(-box, box, res)
    X, Y = np.meshgrid(xs, xs)
    Z = np.stack([X.ravel().astype(complex), Y.ravel().astype(complex)],
                 axis=-1)
    gp = green_batch(cfg.map, Z, n_max=int(sec["n_max"]))
    gm = green_batch(cfg.map.inverse(), Z, n_max=int(sec["n_max"]))
    rows = [[Z[i, 0].real, Z[i, 1].real, gp[0][i], gm[0][i],
             bool(gp[2][i]), bool(gm[2][i])] for i in range(Z.shape[0])]
    write_csv(os.path.join(out, "green.csv"), "green",
              ["x", "y", "gplus", "gminus", "escaped_fwd", "escaped_bwd"],
              rows)
    print(f"green: {len(rows)} grid points -> {out}/green.csv")


def cmd_uniformize(cfg, out):
    sec = cfg.section("uniformize")
    saddles = _find_all_saddles(cfg)
    payload = []
    for idx, s in enumerate(saddles):
        for side in sec["sides"]:
            xi = normalize(linearize(cfg.map, s, side=side,
                                     T=int(sec["order"])))
            payload.append({
                "cycle": idx,
                "period": s.period,
                "side": side,
                "base": [xi.base[0], xi.base[1]],
                "nu": complex(xi.nu),
                "alpha": xi.alpha,
                "r_valid": xi.r_valid,
                "coeffs": xi.coeffs,
            })
    write_json(os.path.join(out, "uniformize.json"), "uniformize",
               {"curves": payload})
    print(f"uniformize: {len(payload)} curves -> {out}/uniformize.json")


def _build_family(cfg, side="unstable"):
    sec = cfg.section("family")
    if sec["kind"] == "recentered":
        anchors = _find_all_saddles(cfg)
        return fam.build_recentered_family(
            cfg.map, anchors[0], samples=int(sec["recentered_samples"]),
            T=int(sec["recentered_order"]), side=side, seed=cfg.seed)
    return fam.build_saddle_family(cfg.map, int(sec["n_max_period"]),
                                   side=side, seed=cfg.seed)


def cmd_family_report(cfg, out):
    F = _build_family(cfg)
    members = []
    for i, m in enumerate(F.members):
        members.append({
            "index": i,
            "base": [m.base[0], m.base[1]],
            "unit_growth": circle_max_green(m, 1.0),
        })
    write_json(os.path.join(out, "family.json"), "family", {
        "kind": F.kind, "side": F.side, "count": len(F.members),
        "members": members, "source": F.source,
    })
    print(f"family-report: {len(F.members)} members -> {out}/family.json")


def _growth(cfg, F):
    sec = cfg.section("growth")
    r_grid = np.geomspace(float(sec["r_min"]), float(sec["r_max"]),
                          int(sec["r_count"]))
    return fam.growth_profile(F, r_grid)


def _write_growth(out, gp):
    rows = [[gp.r_grid[i], gp.m_of_r[i], gp.M_of_r[i]]
            for i in range(len(gp.r_grid))]
    write_csv(os.path.join(out, "growth.csv"), "growth",
              ["r", "m", "M"], rows)
    write_json(os.path.join(out, "growth.json"), "growth-summary", {
        "kappa": gp.kappa,
        "lambdas": [x for x in gp.lambdas],
        "min_abs_lambda": float(np.nanmin(gp.lambdas))
        if np.any(~np.isnan(gp.lambdas)) else None,
    })


def cmd_growth(cfg, out):
    gp = _growth(cfg, _build_family(cfg))
    _write_growth(out, gp)
    print(f"growth: kappa={fmt(gp.kappa)} -> {out}/growth.csv")


def _write_disks(cfg, out, F):
    sec = cfg.section("disks")
    rows, sample_rows = [], []
    for i, m in enumerate(F.members):
        d = fam.local_disk(m, float(sec["radius"]), rays=int(sec["rays"]))
        rows.append([i, d.r, d.area, d.rho_in, d.rho_out, d.star_shaped])
        zeta = d.t_boundary * np.exp(1j * d.theta)
        pts = m.evaluate(zeta)
        gp = green_batch(cfg.map, pts)
        gm = green_batch(cfg.map.inverse(), pts)
        for j in range(0, len(zeta), max(1, len(zeta) // 64)):
            sample_rows.append([i, zeta[j].real, zeta[j].imag,
                                pts[j, 0].real, pts[j, 0].imag,
                                pts[j, 1].real, pts[j, 1].imag,
                                gp[0][j], gm[0][j]])
    write_csv(os.path.join(out, "disks.csv"), "disks",
              ["member", "r", "area", "rho_in", "rho_out", "star_shaped"],
              rows)
    write_csv(os.path.join(out, "disk_samples.csv"), "disk-samples",
              ["member", "re_zeta", "im_zeta", "re_x", "im_x", "re_y",
               "im_y", "gplus", "gminus"], sample_rows)
    return rows


def cmd_local_disks(cfg, out):
    rows = _write_disks(cfg, out, _build_family(cfg))
    print(f"local-disks: {len(rows)} disks -> {out}/disks.csv")


def _intersections(cfg):
    sec = cfg.section("intersections")
    saddles = _find_all_saddles(cfg)
    T = int(cfg.section("uniformize")["order"])
    U = [normalize(linearize(cfg.map, s, "unstable", T=T)) for s in saddles]
    S = [normalize(linearize(cfg.map, s, "stable", T=T)) for s in saddles]
    return ix.transversality_report(
        U, S, float(sec["radius_u"]), float(sec["radius_s"]),
        seeds=int(sec["seeds"]), resid_tol=float(sec["resid_tol"]))


def _write_intersections(out, rep):
    rows = []
    for (i, j), r in zip(rep["pairs"], rep["records"]):
        rows.append([i, j, r.zeta_u.real, r.zeta_u.imag, r.zeta_s.real,
                     r.zeta_s.imag, r.point[0].real, r.point[0].imag,
                     r.point[1].real, r.point[1].imag, r.residual,
                     r.angle, r.mu, r.tangency_order, r.mu_agreement])
    write_csv(os.path.join(out, "intersections.csv"), "intersections",
              ["curve_u", "curve_s", "re_zeta_u", "im_zeta_u", "re_zeta_s",
               "im_zeta_s", "re_x", "im_x", "re_y", "im_y", "residual",
               "angle", "mu", "tangency_order", "mu_agreement"], rows)


def cmd_intersections(cfg, out):
    rep = _intersections(cfg)
    _write_intersections(out, rep)
    print(f"intersections: {rep['count']} found, verdict={rep['verdict']} "
          f"-> {out}/intersections.csv")


def cmd_tangency_report(cfg, out):
    sec = cfg.section("tangency")
    saddles = _find_all_saddles(cfg)
    lam = [abs(s.nu_u) for s in saddles]
    s = saddles[int(np.argmin(lam))]
    rep = ix.tangency_decay_experiment(
        cfg.map, s, int(sec["k"]), range(int(sec["n_min"]),
                                         int(sec["n_max"]) + 1),
        c=complex(sec["c"]), delta=float(sec["delta"]))
    write_json(os.path.join(out, "tangency.json"), "tangency", {
        "k": rep["k"],
        "n_list": list(rep["n_list"]),
        "exponents": {str(j): e for j, e in rep["exponents"].items()},
        "law_residual_max": float(rep["law_residuals"][1:, :].max()),
        "raw_top_growth_rate": rep["raw_top_growth_rate"],
        "kappa_reference": float(min(lam)),
        "expected_j1_exponent": float(-2 * np.log(min(lam))),
    })
    print(f"tangency-report: k={rep['k']} -> {out}/tangency.json")


def _strata(cfg):
    sec = cfg.section("stratify")
    Fu = _build_family(cfg, side="unstable")
    Fs = _build_family(cfg, side="stable")
    points = [m.base for m in Fu.members]
    return fam.stratify(Fu, Fs, points, float(sec["radius"]),
                        threshold=float(sec["threshold"]))


def _write_strata(out, table):
    rows = [[r["m_s"], r["m_u"], r["count"]] for r in table["rows"]]
    write_csv(os.path.join(out, "strata.csv"), "strata",
              ["m_s", "m_u", "count"], rows)


def cmd_stratify(cfg, out):
    table = _strata(cfg)
    _write_strata(out, table)
    print(f"stratify: {len(table['rows'])} strata -> {out}/strata.csv")


def cmd_qh_report(cfg, out):
    """Full pipeline: saddles, growth, disks, intersections, strata, verdict."""
    saddles = _find_all_saddles(cfg)
    write_csv(os.path.join(out, "saddles.csv"), "saddles",
              _SADDLE_HEADER, _saddle_rows(saddles))
    F = _build_family(cfg)
    gp = _growth(cfg, F)
    _write_growth(out, gp)
    disk_rows = _write_disks(cfg, out, F)
    rep = _intersections(cfg)
    _write_intersections(out, rep)
    table = _strata(cfg)
    _write_strata(out, table)
    lam_ok = gp.lambdas[~np.isnan(gp.lambdas)]
    strata = [(r["m_s"], r["m_u"]) for r in table["rows"]]
    quasi_hyperbolic = (gp.kappa > 1.0 and rep["verdict"] != "tangencies-present")
    uniformly_hyperbolic = (quasi_hyperbolic and strata == [(1, 1)]
                            and rep["verdict"] == "transverse")
    write_json(os.path.join(out, "report.json"), "qh-report", {
        "map": {"degree": cfg.map.degree,
                "jacobian": complex(cfg.map.jac_det)},
        "kappa": gp.kappa,
        "min_abs_lambda": float(lam_ok.min()) if lam_ok.size else None,
        "min_disk_area": min((r[2] for r in disk_rows), default=None),
        "intersections": rep["count"],
        "min_angle": rep["min_angle"],
        "mu_histogram": {str(k): v for k, v in rep["mu_histogram"].items()},
        "strata": [{"m_s": a, "m_u": b} for a, b in strata],
        "strata_skipped": table["skipped"],
        "quasi_hyperbolic": quasi_hyperbolic,
        "uniformly_hyperbolic": uniformly_hyperbolic,
    })
    print(f"qh-report: kappa={fmt(gp.kappa)} strata={strata} "
          f"verdict={rep['verdict']} -> {out}/report.json")


if __name__ == "__main__":
    sys.exit(main())
