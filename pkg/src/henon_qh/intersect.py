"""Heteroclinic intersections between parametrized curves in C^2.

Curves (unstable and stable parametrizations, or synthetic polynomial test
curves) are intersected with a two-variable complex Newton iteration over a
seed grid.  At each intersection we record the Hermitian angle between
tangents and an intersection multiplicity mu estimated two independent ways:
modal root counting under random normal perturbations and the argument
principle applied to the normal component of the curve difference along an
implicitly aligned tangential direction.  A tangency of order k appears as
mu = k + 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import series as js


@dataclass(frozen=True)
class PolynomialCurve:
    """Synthetic parametrized curve zeta -> sum a_k zeta^k, for testing."""

    coeffs: np.ndarray        # (T+1, 2) complex

    @property
    def base(self):
        return self.coeffs[0]

    def evaluate(self, zeta):
        return js.jet_eval(self.coeffs, np.asarray(zeta, dtype=complex))

    def evaluate_with_derivative(self, zeta):
        v = js.jet_eval(self.coeffs, np.asarray([zeta], dtype=complex))[0]
        d = js.jet_eval_deriv(self.coeffs, np.asarray([zeta], dtype=complex))[0]
        return v, d


def polynomial_curve(coeffs):
    return PolynomialCurve(coeffs=np.asarray(coeffs, dtype=complex))


@dataclass
class IntersectionRecord:
    zeta_u: complex
    zeta_s: complex
    point: np.ndarray
    residual: float
    angle: float              # Hermitian angle between tangents, [0, pi/2]
    mu: int
    tangency_order: int       # mu - 1
    mu_agreement: bool        # perturbation count == winding count
    flags: list = field(default_factory=list)


def _value_and_tangent(curve, zeta):
    if hasattr(curve, "evaluate_with_derivative"):
        return curve.evaluate_with_derivative(zeta)
    v = curve.evaluate(np.asarray([zeta], dtype=complex))[0]
    h = 1e-7
    vp = curve.evaluate(np.asarray([zeta + h], dtype=complex))[0]
    return v, (vp - v) / h


def hermitian_angle(u, v):
    """Angle in [0, pi/2] between complex lines C*u and C*v in C^2."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0 or nv == 0:
        raise ValueError("zero tangent vector")
    c = abs(np.vdot(u, v)) / (nu * nv)
    return float(np.arccos(min(c, 1.0)))


def _newton_pair(cu, cs, z1, z2, steps=300, tol=1e-13, bail=None):
    """Newton for psi_u(z1) = psi_s(z2); returns (z1, z2, residual)."""
    for _ in range(steps):
        if bail is not None and (abs(z1) > bail[0] or abs(z2) > bail[1]):
            return z1, z2, np.inf
        vu, du = _value_and_tangent(cu, z1)
        vs, ds = _value_and_tangent(cs, z2)
        H = vu - vs
        r = float(np.linalg.norm(H))
        J = np.column_stack([du, -ds])
        try:
            step = np.linalg.solve(J, -H)
        except np.linalg.LinAlgError:
            # Singular tangent pairing (tangential intersection): fall back
            # to a least-squares step.
            step = np.linalg.lstsq(J, -H, rcond=None)[0]
        if not np.all(np.isfinite(step)):
            return z1, z2, np.inf
        z1 = z1 + step[0]
        z2 = z2 + step[1]
        if np.abs(step).max() < tol:
            break
    vu, _ = _value_and_tangent(cu, z1)
    vs, _ = _value_and_tangent(cs, z2)
    return z1, z2, float(np.linalg.norm(vu - vs))


def _seed_grid(radius, n):
    rr = radius * np.geomspace(0.5 ** n, 1.0, 2 * n)
    tt = np.linspace(0, 2 * np.pi, 2 * n, endpoint=False)
    z = (rr[:, None] * np.exp(1j * tt)[None, :]).ravel()
    return np.concatenate([[0.0 + 0.0j], z])


def find_intersections(curve_u, curve_s, radius_u, radius_s, seeds=6,
                       resid_tol=1e-9, dedup_tol=1e-8, max_seeds=200):
    """All Newton-converged intersection pairs within the given disks.

    Seeding: both curves are sampled on polar lattices and the closest
    image pairs (plus every pair when the lattices are small) start a
    two-variable Newton iteration on psi_u(z1) - psi_s(z2) = 0.
    """
    zs1 = _seed_grid(radius_u, seeds)
    zs2 = _seed_grid(radius_s, seeds)
    pu = curve_u.evaluate(zs1)
    ps = curve_s.evaluate(zs2)
    d = np.linalg.norm(pu[:, None, :] - ps[None, :, :], axis=-1).ravel()
    order = np.argsort(d, kind="stable")
    if order.size > max_seeds:
        order = order[:max_seeds]
    pairs = [(zs1[k // len(zs2)], zs2[k % len(zs2)]) for k in order]
    found = []
    bail = (8.0 * radius_u, 8.0 * radius_s)
    for a, b in pairs:
        z1, z2, r = _newton_pair(curve_u, curve_s, a, b, bail=bail)
        if r > resid_tol:
            continue
        if abs(z1) > radius_u or abs(z2) > radius_s:
            continue
        if any(abs(z1 - f[0]) < dedup_tol and abs(z2 - f[1]) < dedup_tol
               for f in found):
            continue
        found.append((z1, z2, r))
    found.sort(key=lambda f: (f[0].real, f[0].imag, f[1].real, f[1].imag))
    records = []
    for z1, z2, r in found:
        vu, du = _value_and_tangent(curve_u, z1)
        _, ds = _value_and_tangent(curve_s, z2)
        ang = hermitian_angle(du, ds)
        mu_w = _mu_winding(curve_u, curve_s, z1, z2)
        mu_p = _mu_perturbation(curve_u, curve_s, z1, z2,
                                mu_guess=max(mu_w, 1))
        agree = mu_p == mu_w
        mu = mu_w if agree else max(mu_p, mu_w)
        flags = [] if agree else ["mu-estimators-disagree"]
        records.append(IntersectionRecord(
            zeta_u=complex(z1), zeta_s=complex(z2), point=vu,
            residual=r, angle=ang, mu=mu, tangency_order=mu - 1,
            mu_agreement=agree, flags=flags))
    return records


class _ShiftedCurve:
    """curve + constant offset in C^2, used for perturbation counting."""

    def __init__(self, curve, offset):
        self.curve = curve
        self.offset = np.asarray(offset, dtype=complex)

    def evaluate(self, zeta):
        return self.curve.evaluate(zeta) + self.offset

    def evaluate_with_derivative(self, zeta):
        v, d = _value_and_tangent(self.curve, zeta)
        return v + self.offset, d


def _local_scale(curve, zeta):
    _, d = _value_and_tangent(curve, zeta)
    return max(float(np.linalg.norm(d)), 1e-12)


def _mu_perturbation(cu, cs, z1, z2, mu_guess=1, rho=0.05, trials=8, seed=7):
    """Modal number of simple roots the intersection splits into under a
    small generic translation of the stable curve.

    The translation size is chosen so an order-mu_guess root cluster splits
    by about 0.2 * rho: well inside the search window and far above the
    dedup resolution.
    """
    scale = min(_local_scale(cu, z1), _local_scale(cs, z2))
    eps = scale * (0.2 * rho) ** max(mu_guess, 1)
    rng = np.random.default_rng(seed)
    bail = (abs(z1) + 20 * rho, abs(z2) + 20 * rho)
    counts = []
    for _ in range(trials):
        w = rng.standard_normal(4)
        off = eps * (w[:2] + 1j * w[2:]) / np.linalg.norm(w)
        shifted = _ShiftedCurve(cs, off)
        roots = []
        for a in np.exp(1j * np.linspace(0, 2 * np.pi, 8, endpoint=False)):
            for t in (0.3, 0.7, 1.0):
                w1, w2, r = _newton_pair(cu, shifted, z1 + t * rho * a,
                                         z2 + t * rho * a, steps=80,
                                         tol=1e-15, bail=bail)
                if r > 1e-10 * scale or abs(w1 - z1) > 3 * rho:
                    continue
                if any(abs(w1 - q) < 1e-4 * rho for q in roots):
                    continue
                roots.append(w1)
        counts.append(len(roots))
    vals, freq = np.unique(counts, return_counts=True)
    return int(vals[np.argmax(freq)])


def _mu_winding(cu, cs, z1, z2, rho=0.02, samples=256):
    """Winding number of the normal defect around the intersection.

    Along a circle |zeta_1 - z1| = rho the tangential alignment sigma(zeta_1)
    is tracked by a one-variable Newton iteration, and the normal component
    of psi_u(zeta_1) - psi_s(sigma) is a holomorphic function whose order of
    vanishing at the center is the intersection multiplicity.
    """
    _, du = _value_and_tangent(cu, z1)
    _, ds = _value_and_tangent(cs, z2)
    t = ds / np.linalg.norm(ds)
    n = np.array([-np.conj(t[1]), np.conj(t[0])])   # unit normal to t
    theta = np.linspace(0, 2 * np.pi, samples, endpoint=False)
    sigma = z2
    vals = np.empty(samples, dtype=complex)
    for i, zc in enumerate(z1 + rho * np.exp(1j * theta)):
        for _ in range(40):
            vu = cu.evaluate(np.asarray([zc], dtype=complex))[0]
            vs, dvs = _value_and_tangent(cs, sigma)
            g = np.vdot(np.conj(t), vu - vs)      # plain (bilinear) pairing
            dg = -np.vdot(np.conj(t), dvs)
            step = -g / dg
            sigma = sigma + step
            if abs(step) < 1e-14:
                break
        vu = cu.evaluate(np.asarray([zc], dtype=complex))[0]
        vs, _ = _value_and_tangent(cs, sigma)
        vals[i] = np.vdot(np.conj(n), vu - vs)
    dphi = np.angle(vals[np.arange(1, samples + 1) % samples] / vals)
    return int(round(np.sum(dphi) / (2 * np.pi)))


def jet_pushforward(f_view, jet, n, T):
    """Jet of f_view^n composed with the curve jet, truncated at order T."""
    jet = np.array(jet, dtype=complex)[: T + 1]
    for _ in range(n):
        jet = js.jet_apply_map(f_view, jet, T)
    return jet


def manufactured_tangent_pair(f, saddle, k, c=0.5, delta=1e-3, T=None):
    """A curve jet with an order-k tangency to the local stable manifold.

    A(zeta) = B(c zeta) + delta * e_u * zeta^(k+1), where B parametrizes the
    stable manifold of the saddle and e_u is its unstable eigenvector: A and
    the stable manifold agree to order k and split at order k + 1 in a
    direction that forward iteration expands.
    """
    from .uniformize import linearize

    T = k + 1 if T is None else max(T, k + 1)
    B = linearize(f, saddle, side="stable", T=T)
    A = js.jet_scale_arg(B.coeffs, c)[: T + 1]
    A[k + 1] = A[k + 1] + delta * saddle.ev_u
    return {"A": A, "B": B, "c": complex(c), "delta": float(delta),
            "k": int(k)}


def tangency_decay_experiment(f, saddle, k, n_list, c=0.5, delta=1e-3):
    """Push the manufactured order-k tangency forward and track coefficients.

    For each n, the jet of f^n o A is rescaled per order by lambda_n^j with
    lambda_n = nu_u^n.  The rescaled coefficients a_bar[j, n] are compared
    against the stable-side prediction b_j c^j (mu_n / lambda_n)^j for
    j <= k (the exchange law), their decay exponents in n are fitted, and
    the raw order-(k+1) coefficient is recorded: it must grow, not decay,
    because the mismatch direction has an unstable component.
    """
    pair = manufactured_tangent_pair(f, saddle, k, c=c, delta=delta)
    A, B = pair["A"], pair["B"]
    nu_u, nu_s = saddle.nu_u, saddle.nu_s
    n_list = list(n_list)
    a_bar = np.zeros((k + 2, len(n_list)), dtype=complex)
    raw_top = np.zeros(len(n_list))
    law_resid = np.zeros((k + 1, len(n_list)))
    for col, n in enumerate(n_list):
        jet_n = jet_pushforward(f, A, n * saddle.period, k + 1)
        lam = nu_u**n
        for j in range(1, k + 2):
            a_bar[j, col] = np.linalg.norm(jet_n[j]) / abs(lam) ** j
        raw_top[col] = np.linalg.norm(jet_n[k + 1])
        for j in range(1, k + 1):
            pred = B.coeffs[j] * c**j * nu_s ** (n * j)
            denom = max(np.linalg.norm(pred), 1e-300)
            law_resid[j, col] = np.linalg.norm(jet_n[j] - pred) / denom
    exponents = {}
    for j in range(1, k + 2):
        mags = np.abs(a_bar[j])
        good = mags > 0
        if good.sum() >= 2:
            exponents[j] = float(np.polyfit(
                np.asarray(n_list)[good], np.log(mags[good]), 1)[0])
    top_growth = float(np.polyfit(n_list, np.log(raw_top), 1)[0])
    return {
        "n_list": n_list,
        "a_bar": a_bar,
        "law_residuals": law_resid,
        "exponents": exponents,
        "raw_top_coefficient": raw_top,
        "raw_top_growth_rate": top_growth,
        "k": k,
        "pair": pair,
    }


def transversality_report(curves_u, curves_s, radius_u, radius_s, seeds=5,
                          resid_tol=1e-9):
    """All-pairs intersection scan between two curve collections."""
    records = []
    pairs = []
    for i, cu in enumerate(curves_u):
        for j, cs in enumerate(curves_s):
            recs = find_intersections(cu, cs, radius_u, radius_s,
                                      seeds=seeds, resid_tol=resid_tol)
            for r in recs:
                pairs.append((i, j))
                records.append(r)
    angles = np.array([r.angle for r in records]) if records else np.array([])
    mus = [r.mu for r in records]
    hist = {}
    for m in mus:
        hist[m] = hist.get(m, 0) + 1
    min_angle = float(angles.min()) if angles.size else None
    verdict = "transverse" if records and min(mus) == max(mus) == 1 \
        and min_angle > 0 else ("no-intersections" if not records
                                else "tangencies-present")
    return {
        "pairs": pairs,
        "records": records,
        "count": len(records),
        "min_angle": min_angle,
        "mu_histogram": hist,
        "verdict": verdict,
    }
