"""Finite samples of the invariant curve families and their growth data.

Two families are built: the saddle family (one normalized unstable
parametrization per cycle point) and the recentered family (one curve, the
unstable manifold of an anchor saddle, reparametrized around points of it
that stay bounded).  Growth functions, the expansion constant kappa, local
disks with areas, backward-contraction diagnostics, vanishing orders and the
stratification table are all computed from these finite samples; infima and
suprema over members stand in for the infima/suprema over the full families.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import series as js
from .green import green_batch, escape_time_batch
from .saddles import Saddle, classify, find_saddles
from .uniformize import (
    SeriesParametrization,
    circle_max_green,
    find_unit_growth_radius,
    lambda_of,
    linearize,
    normalize,
)


@dataclass
class RecenteredParametrization:
    """psi_y(zeta) = xi_q(alpha * zeta + zeta_y) for a point y on W^u(q)."""

    parent: SeriesParametrization
    zeta0: complex
    alpha: float
    coeffs: np.ndarray        # jet of psi_y at 0, for order estimates
    side: str = "unstable"

    @property
    def base(self):
        return self.coeffs[0]

    @property
    def map_view(self):
        return self.parent.map_view

    def __call__(self, zeta):
        return self.evaluate(zeta)

    def evaluate(self, zeta):
        zeta = np.asarray(zeta, dtype=complex)
        return self.parent.evaluate(self.alpha * zeta + self.zeta0)


@dataclass
class CurveFamily:
    """A finite stand-in for an invariant family of parametrized curves."""

    kind: str                 # "saddle" | "recentered"
    side: str                 # "unstable" | "stable"
    f: object                 # the underlying forward map
    members: list             # list of parametrization objects
    source: dict = field(default_factory=dict)


@dataclass
class GrowthProfile:
    r_grid: np.ndarray
    m_of_r: np.ndarray
    M_of_r: np.ndarray
    kappa: float
    lambdas: np.ndarray       # per-member |lambda_x| where defined (else nan)


@dataclass
class LocalDisk:
    owner: object
    r: float
    theta: np.ndarray
    t_boundary: np.ndarray    # zeta-plane boundary radius per ray
    area: float
    rho_in: float
    rho_out: float
    star_shaped: bool


@dataclass
class OrderEstimate:
    at: np.ndarray
    tau: int
    gamma: float
    evidence: list            # (member index, first-order, |a_tau|)


def _cycles_of(f, n_max_period, grid, seed):
    sads = []
    for N in range(1, n_max_period + 1):
        sads.extend(find_saddles(f, N, grid=grid, seed=seed))
    return sads


def build_saddle_family(f, N_max, T=40, side="unstable", grid=32, seed=0,
                        saddles=None, n_max=80):
    """Normalized parametrizations at every cycle point of every saddle of
    period <= N_max."""
    if N_max < 1:
        return CurveFamily(kind="saddle", side=side, f=f, members=[],
                           source={"N_max": N_max})
    if saddles is None:
        saddles = _cycles_of(f, N_max, grid, seed)
    members = []
    for s in saddles:
        for i in range(s.period):
            si = s if i == 0 else classify(f, np.roll(s.cycle, -i, axis=0))
            xi = linearize(f, si, side=side, T=T)
            members.append(normalize(xi, n_max=n_max))
    return CurveFamily(kind="saddle", side=side, f=f, members=members,
                       source={"N_max": N_max, "n_saddles": len(saddles)})


def _recenter_jet(psi: SeriesParametrization, zeta0, alpha, T):
    """Jet of zeta -> psi(alpha * zeta + zeta0), built inside the validity
    disk and pushed out with the functional equation."""
    k = psi._extension_depth(abs(zeta0) + abs(alpha))
    nu_k = psi.nu**k
    jet = js.jet_shift(psi.coeffs, zeta0 / nu_k)
    jet = js.jet_scale_arg(jet, alpha / nu_k)
    jet = jet[: T + 1]
    for _ in range(k * psi.period):
        jet = js.jet_apply_map(psi.map_view, jet, T)
    return jet


def build_recentered_family(f, q: Saddle, samples=32, T=12, side="unstable",
                            annulus=(0.25, 1.5), lattice=(12, 24), n_max=80,
                            membership_budget=20, seed=0):
    """Recentered parametrizations of W^u(q) at bounded-orbit points.

    Candidate recentering parameters are an annulus lattice in the zeta-plane
    of the normalized uniformization; candidates are ranked by forward escape
    time and the longest-bounded `samples` of them are kept (finite-budget
    proxy for membership in K+).  Fewer returned members than requested is a
    report, not an error.
    """
    xi = normalize(linearize(f, q, side=side, T=max(T, 40)), n_max=n_max)
    view = xi.map_view
    n_r, n_t = lattice
    rr = np.geomspace(annulus[0], annulus[1], n_r)
    tt = np.linspace(0, 2 * np.pi, n_t, endpoint=False)
    Z = (rr[:, None] * np.exp(1j * tt)[None, :]).ravel()
    pts = np.concatenate([xi.evaluate(rr_i * np.exp(1j * tt)) for rr_i in rr])
    times = escape_time_batch(view, pts, n_max=4 * membership_budget)
    times[times < 0] = np.iinfo(times.dtype).max
    # Longest-surviving lattice points sit closest to the Cantor slice
    # W^u cap K+ in the zeta-plane; pull them onto it by local descent of
    # the escape-rate function before accepting them as members.
    order = np.argsort(-times, kind="stable")[: 3 * samples]
    cell = 0.5 * (rr[1] / rr[0] - 1.0) * annulus[0]
    members = []
    seen = []
    for idx in order:
        if len(members) >= samples:
            break
        zeta0 = _descend_to_bounded(xi, complex(Z[idx]), cell, n_max=n_max)
        if escape_time_batch(view, xi.evaluate(np.asarray([zeta0])),
                             n_max=membership_budget)[0] >= 0:
            continue
        if any(abs(zeta0 - s) < 1e-6 for s in seen):
            continue
        seen.append(zeta0)
        m_of = lambda r: circle_max_green(
            _ShiftedView(xi, zeta0), r, n_max=n_max)
        try:
            alpha = find_unit_growth_radius(m_of)
        except Exception:
            continue
        jet = _recenter_jet(xi, zeta0, alpha, T)
        members.append(RecenteredParametrization(
            parent=xi, zeta0=zeta0, alpha=float(alpha), coeffs=jet, side=side))
    return CurveFamily(kind="recentered", side=side, f=f, members=members,
                       source={"anchor_period": q.period,
                               "anchor_base": [q.base[0], q.base[1]],
                               "requested": samples, "found": len(members)})


def _descend_to_bounded(xi, zeta0, scale, scale_floor=1e-13, max_rounds=200,
                        n_max=120):
    """Pattern search minimizing G+ along the curve in the zeta-plane.

    Drives zeta0 toward the bounded slice of the curve's parameter plane;
    the escape rate is continuous there while escape time is not, so it is
    the better objective.  The step shrinks only when the current point is
    already the local 5x5 minimizer.
    """
    offs = np.linspace(-1.0, 1.0, 5)
    grid = (offs[:, None] + 1j * offs[None, :]).ravel()
    center = int(np.argmin(np.abs(grid)))
    z = zeta0
    for _ in range(max_rounds):
        cand = z + scale * grid
        vals = green_batch(xi.map_view, xi.evaluate(cand),
                           n_max=n_max, tol=0.0)[0]
        j = int(np.argmin(vals))
        if j == center:
            scale /= 3.0
            if scale < scale_floor:
                break
        else:
            z = complex(cand[j])
    return z


@dataclass
class _ShiftedView:
    """Evaluation-only curve zeta -> parent(zeta + zeta0) for normalization."""

    parent: SeriesParametrization
    zeta0: complex

    @property
    def map_view(self):
        return self.parent.map_view

    def evaluate(self, zeta):
        return self.parent.evaluate(np.asarray(zeta, dtype=complex) + self.zeta0)


def _member_lambdas(fam: CurveFamily):
    """|lambda_x| per member, matching each member to the member at f(x).

    Only saddle families are f-closed; recentered members return nan.
    """
    out = np.full(len(fam.members), np.nan)
    if fam.kind != "saddle":
        return out
    view = fam.members[0].map_view if fam.members else None
    bases = np.array([m.base for m in fam.members]) if fam.members else None
    for i, m in enumerate(fam.members):
        fx = view.evaluate(m.base)
        d = np.max(np.abs(bases - fx), axis=1)
        j = int(np.argmin(d))
        if d[j] < 1e-6:
            out[i] = abs(lambda_of(view, m, fam.members[j]))
    return out


def growth_profile(fam: CurveFamily, r_grid, n_max=80):
    """Per-radius inf/sup of m_psi over members, kappa with M(kappa) = deg."""
    if not fam.members:
        raise ValueError("empty family")
    r_grid = np.asarray(r_grid, dtype=float)
    table = np.array([[circle_max_green(m, r, n_max=n_max) for r in r_grid]
                      for m in fam.members])
    m_of_r = table.min(axis=0)
    M_of_r = table.max(axis=0)
    deg = fam.f.degree

    def M(r):
        return max(circle_max_green(m, r, n_max=n_max) for m in fam.members)

    kappa = find_unit_growth_radius(M, target=float(deg))
    return GrowthProfile(r_grid=r_grid, m_of_r=m_of_r, M_of_r=M_of_r,
                         kappa=float(kappa), lambdas=_member_lambdas(fam))


def local_disk(psi, r, rays=256, star_tol=1e-9):
    """Trace the component of psi^{-1}(B(x, r)) around 0 by radial marching.

    Area is integrated with multiplicity: int |psi'|^2 over the traced
    star-shaped region in polar coordinates.
    """
    x = psi.base if hasattr(psi, "base") else psi.evaluate(np.zeros(1))[0]
    theta = np.linspace(0, 2 * np.pi, rays, endpoint=False)
    dirs = np.exp(1j * theta)

    def dist(ts, ds):
        pts = psi.evaluate(ts * ds)
        return np.max(np.abs(pts - x), axis=-1)

    # March outward until each ray first leaves the ball.
    t_lo = np.zeros(rays)
    t_hi = np.full(rays, np.nan)
    step = np.full(rays, 0.02 * _scale_guess(psi, r))
    t = step.copy()
    for _ in range(4000):
        todo = np.isnan(t_hi)
        if not np.any(todo):
            break
        d = dist(t[todo], dirs[todo])
        out = d >= r
        idx = np.flatnonzero(todo)
        t_hi[idx[out]] = t[idx[out]]
        t_lo[idx[~out]] = t[idx[~out]]
        t[idx[~out]] *= 1.05
    if np.any(np.isnan(t_hi)):
        raise RuntimeError("disk boundary not found; radius too large?")
    for _ in range(60):
        mid = 0.5 * (t_lo + t_hi)
        out = dist(mid, dirs) >= r
        t_hi[out] = mid[out]
        t_lo[~out] = mid[~out]
    t_b = 0.5 * (t_lo + t_hi)

    # Star-shapedness check: along each ray the first crossing should be the
    # only one below t_b; sample interior points for monotone distance.
    frac = np.linspace(0.05, 0.95, 19)
    inner = dist((t_b[None, :] * frac[:, None]).ravel(),
                 np.tile(dirs, len(frac))).reshape(len(frac), rays)
    star = bool(np.all(inner < r + star_tol))

    # Quadrature: Gauss-Legendre in the radial direction, trapezoid in theta.
    gl_x, gl_w = np.polynomial.legendre.leggauss(16)
    area = 0.0
    for xg, wg in zip(gl_x, gl_w):
        rho = 0.5 * (xg + 1.0) * t_b
        zeta = rho * dirs
        dpsi = _deriv_on(psi, zeta)
        integrand = np.sum(np.abs(dpsi) ** 2, axis=-1) * rho
        area += wg * np.sum(integrand * (0.5 * t_b))
    area *= 2 * np.pi / rays
    return LocalDisk(owner=psi, r=float(r), theta=theta, t_boundary=t_b,
                     area=float(area), rho_in=float(t_b.min()),
                     rho_out=float(t_b.max()), star_shaped=star)


def _scale_guess(psi, r):
    d = np.linalg.norm(psi.coeffs[1]) if psi.coeffs.shape[0] > 1 else 1.0
    return r / max(d, 1e-12)


def _deriv_on(psi, zeta):
    if isinstance(psi, RecenteredParametrization):
        inner = psi.alpha * np.asarray(zeta, dtype=complex) + psi.zeta0
        return psi.alpha * _deriv_on(psi.parent, inner)
    zeta = np.asarray(zeta, dtype=complex)
    flat = zeta.ravel()
    out = np.empty(flat.shape + (2,), dtype=complex)
    for i, zv in enumerate(flat):
        _, d = psi.evaluate_with_derivative(zv)
        out[i] = d
    return out.reshape(zeta.shape + (2,))


def contraction_check(fam: CurveFamily, profile: GrowthProfile, r,
                      n_back=16, pair_offsets=(0.3, 0.55)):
    """Propositions-2.2/2.3 diagnostics on the member with slowest expansion.

    Returns a dict report; violations are data, not exceptions.
    """
    lam = profile.lambdas
    ok = ~np.isnan(lam)
    i = int(np.flatnonzero(ok)[np.argmin(lam[ok])])
    psi = fam.members[i]
    view = psi.map_view
    kappa = profile.kappa

    disks = [local_disk(m, r, rays=64) for m in fam.members]
    rho1 = min(d.rho_in for d in disks)
    rho2 = max(d.rho_out for d in disks)
    N_thresh = int(np.ceil(np.log(rho2 / rho1) / np.log(kappa))) + 1

    disk_i = disks[i]
    z1 = pair_offsets[0] * disk_i.rho_in
    z2 = pair_offsets[1] * disk_i.rho_in
    # Backward orbits of points on the curve are psi(zeta / nu^n); taking
    # them through the series rather than iterating the inverse map keeps
    # the orbit exactly on the manifold (plain-coordinate inverse iteration
    # amplifies off-manifold round-off by 1/|nu_s| per step).
    ns = np.arange(n_back + 1)
    w1 = psi.evaluate(z1 / psi.nu**ns)
    w2 = psi.evaluate(z2 / psi.nu**ns)
    dists = np.linalg.norm(w1 - w2, axis=1)
    lo = max(4, n_back // 3)
    slope = np.polyfit(ns[lo:], np.log(dists[lo:]), 1)[0] / psi.period
    # Forward escape of a recentered neighbor (Prop 2.3 mechanics).
    zeta_p = 0.5 * disk_i.rho_in
    predicted = int(np.ceil(np.log(rho2 / zeta_p) / np.log(kappa)))
    yp = psi.evaluate(np.asarray([zeta_p]))[0]
    xb = psi.base.copy()
    observed = None
    for n in range(1, 400):
        yp = view.evaluate(yp)
        xb = view.evaluate(xb)
        if np.linalg.norm(yp - xb) > r:
            observed = n
            break
    return {
        "member_index": i,
        "kappa": kappa,
        "min_abs_lambda": float(lam[ok].min()),
        "backward_decay_exponent": float(slope),
        "expected_exponent": float(-np.log(kappa)),
        "rho1": rho1,
        "rho2": rho2,
        "reinsertion_threshold_N": N_thresh,
        "forward_escape_predicted": predicted * psi.period,
        "forward_escape_observed": observed,
    }


def estimate_tau(fam: CurveFamily, x, radius, threshold=1e-5):
    """Vanishing-order estimate at x from members based nearby.

    tau is the max over nearby members of the first coefficient index that is
    non-negligible relative to the member's largest coefficient; gamma is the
    smallest such leading magnitude among members attaining tau.
    """
    x = np.asarray(x, dtype=complex)
    evidence = []
    for i, m in enumerate(fam.members):
        if np.max(np.abs(m.base - x)) > radius:
            continue
        mags = np.linalg.norm(m.coeffs[1:], axis=1)
        big = float(np.max(mags)) if mags.size else 0.0
        if big == 0.0:
            continue
        first = int(np.argmax(mags > threshold * big)) + 1
        evidence.append((i, first, float(mags[first - 1])))
    if not evidence:
        return None
    tau = max(e[1] for e in evidence)
    gamma = min(e[2] for e in evidence if e[1] == tau)
    return OrderEstimate(at=x, tau=tau, gamma=gamma, evidence=evidence)


def stratify(fam_u: CurveFamily, fam_s: CurveFamily, sample_points, radius,
             threshold=1e-5):
    """Aggregate (tau_s, tau_u) over sample points into a stratum table.

    Returns a sorted list of rows {"m_s", "m_u", "count"} plus the list of
    per-point estimates; points with no nearby members in either family are
    skipped and counted separately.
    """
    table = {}
    skipped = 0
    details = []
    for x in sample_points:
        eu = estimate_tau(fam_u, x, radius, threshold)
        es = estimate_tau(fam_s, x, radius, threshold)
        if eu is None or es is None:
            skipped += 1
            continue
        key = (es.tau, eu.tau)
        table[key] = table.get(key, 0) + 1
        details.append((np.asarray(x), es, eu))
    rows = [{"m_s": k[0], "m_u": k[1], "count": v}
            for k, v in sorted(table.items())]
    return {"rows": rows, "skipped": skipped, "details": details}
