"""Power-series parametrization of stable/unstable manifolds.

The unstable manifold of a saddle p of period N is uniformized by an entire
curve xi with xi(0) = p and f^N(xi(zeta)) = xi(nu_u * zeta).  The stable side
is the same construction for the inverse map.  Normalization rescales the
parameter so the maximal Green value on the closed unit disk is exactly 1,
which fixes the curve up to a rotation; the rotation gauge is killed by
making the eigenvector's largest component positive real and the scale
positive real.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import series as js
from .green import green_batch
from .saddles import Saddle, _iterate_with_jac


class ResonanceError(RuntimeError):
    """nu^k collided with a multiplier; the input cycle is not a true saddle."""


class NormalizationError(RuntimeError):
    """The Green budget was too small to bracket the normalization scale."""


@dataclass
class SeriesParametrization:
    """Truncated uniformization of one invariant manifold.

    map_view is the map for which the curve is *unstable* (f itself for the
    unstable side, f.inverse() for the stable side); nu is the expanding
    multiplier of map_view^period.  coeffs[k] is the C^2 coefficient of
    zeta^k, with coeffs[0] the base point.
    """

    saddle: Saddle
    side: str                    # "unstable" | "stable", relative to f
    map_view: object
    period: int
    coeffs: np.ndarray           # (T + 1, 2) complex
    nu: complex
    alpha: complex
    r_valid: float

    @property
    def base(self):
        return self.coeffs[0]

    @property
    def T(self):
        return self.coeffs.shape[0] - 1

    def _extension_depth(self, absz):
        if absz <= self.r_valid:
            return 0
        return int(np.ceil(np.log(absz / self.r_valid) / np.log(abs(self.nu)) - 1e-12))

    def __call__(self, zeta):
        return self.evaluate(zeta)

    def evaluate(self, zeta):
        """Evaluate, extending by the functional equation outside r_valid.

        Vectorized over zeta as long as all entries share the same extension
        depth (true for circle samples); mixed radii fall back to a loop.
        """
        zeta = np.asarray(zeta, dtype=complex)
        if zeta.ndim == 0:
            return self._eval_uniform(zeta[None])[0]
        absz = np.abs(zeta)
        depths = {self._extension_depth(float(a)) for a in absz}
        if len(depths) == 1:
            return self._eval_uniform(zeta)
        out = np.empty(zeta.shape + (2,), dtype=complex)
        for i, zv in enumerate(zeta):
            out[i] = self._eval_uniform(zv[None])[0]
        return out

    def _eval_uniform(self, zeta):
        k = self._extension_depth(float(np.max(np.abs(zeta))))
        z = js.jet_eval(self.coeffs, zeta / self.nu**k)
        for _ in range(k * self.period):
            z = self.map_view.evaluate(z)
        return z

    def evaluate_with_derivative(self, zeta):
        """(psi(zeta), psi'(zeta)) with chain-rule through the extension."""
        zeta = complex(zeta)
        k = self._extension_depth(abs(zeta))
        z0 = zeta / self.nu**k
        z = js.jet_eval(self.coeffs, np.asarray([z0]))[0]
        d = js.jet_eval_deriv(self.coeffs, np.asarray([z0]))[0]
        if k:
            z, D = _iterate_with_jac(self.map_view, z, k * self.period)
            d = D @ d
            d = d / self.nu**k
        return z, d

    def derivative_at_zero(self):
        return self.coeffs[1].copy()


def _tail_radius(coeffs, tol):
    """Largest radius where the geometric tail bound of the jet is <= tol."""
    mags = np.max(np.abs(coeffs), axis=1)
    T = len(mags) - 1
    ks = np.arange(T // 2, T + 1)
    nz = mags[ks] > 0
    if not np.any(nz):
        return np.inf
    rho = float(np.max(mags[ks[nz]] ** (1.0 / ks[nz])))
    if rho == 0:
        return np.inf
    kk = np.arange(1, T + 1)
    pos = mags[1:] > 0
    C = float(np.max(mags[1:][pos] / rho ** kk[pos]))

    def tail(r):
        q = rho * r
        if q >= 1:
            return np.inf
        return C * q ** (T + 1) / (1 - q)

    lo, hi = 0.0, 1.0 / rho
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if tail(mid) <= tol:
            lo = mid
        else:
            hi = mid
    return lo


def linearize(f, s: Saddle, side="unstable", T=40, series_tol=1e-12):
    """Build the truncated uniformization of W^u (or W^s via f^{-1}).

    Coefficients solve (nu^k I - DF) a_k = [zeta^k] F(partial series) order by
    order, where F is map_view^period.
    """
    view = f if side == "unstable" else f.inverse()
    N = s.period
    base = np.asarray(s.cycle[0], dtype=complex)
    _, DF = _iterate_with_jac(view, base, N)
    evals, evecs = np.linalg.eig(DF)
    i_u = int(np.argmax(np.abs(evals)))
    nu = complex(evals[i_u])
    if abs(nu) <= 1:
        raise ResonanceError("no expanding multiplier at the cycle")
    v = evecs[:, i_u]
    # Gauge fix: largest-modulus component positive real, unit euclidean norm.
    j = int(np.argmax(np.abs(v)))
    v = v * (np.abs(v[j]) / v[j])
    v = v / np.linalg.norm(v)

    coeffs = np.zeros((T + 1, 2), dtype=complex)
    coeffs[0] = base
    coeffs[1] = v
    eye = np.eye(2, dtype=complex)
    for k in range(2, T + 1):
        partial = coeffs.copy()
        partial[k:] = 0.0
        img = partial
        for _ in range(N):
            img = js.jet_apply_map(view, img, k)
        Ck = img[k]
        A = nu**k * eye - DF
        if abs(np.linalg.det(A)) < 1e-10 * max(1.0, abs(nu) ** (2 * k)):
            raise ResonanceError(f"resonance nu^{k} against the multipliers")
        coeffs[k] = np.linalg.solve(A, Ck)
    r_valid = _tail_radius(coeffs, series_tol)
    # Cap the validity radius so the curve stays at moderate norm there:
    # evaluating the functional equation involves p(x), whose round-off grows
    # like |x|^d, so accuracy ~1e-10 needs |x| well below 1e3.
    mag_cap = 4.0 * view.filtration_radius() + 2.0 * float(np.max(np.abs(base)))
    theta = np.exp(2j * np.pi * np.arange(64) / 64)
    r = float(min(r_valid, 1e6))
    for _ in range(200):
        mags = np.max(np.abs(js.jet_eval(coeffs, r * theta)))
        if mags <= mag_cap:
            break
        r *= 0.75
    return SeriesParametrization(
        saddle=s, side=side, map_view=view, period=N, coeffs=coeffs,
        nu=nu, alpha=1.0 + 0.0j, r_valid=float(r),
    )


def evaluate_series(xi: SeriesParametrization, zeta):
    return xi.evaluate(zeta)


def circle_max_green(psi, r, n_max=80, samples=256, refine=True):
    """m_psi(r): max of the Green function of psi.map_view over |zeta| = r.

    The composition is subharmonic, so the circle maximum is the disk
    maximum.  The coarse sample is sharpened by two zoomed re-samplings of
    the winning arc.  The Green budget can stay small: a point contributing
    a non-negligible maximum escapes quickly.
    """
    if r == 0:
        g, _, _, _ = green_batch(psi.map_view, psi.evaluate(np.zeros(1)),
                                 n_max=n_max)
        return float(g[0])

    def scan(lo, hi, n):
        t = np.linspace(lo, hi, n)
        pts = psi.evaluate(r * np.exp(1j * t))
        g, _, _, _ = green_batch(psi.map_view, pts, n_max=n_max)
        i = int(np.argmax(g))
        return t[i], float(g[i])

    width = 2 * np.pi / samples
    t0, best = scan(0.0, 2 * np.pi * (1 - 1.0 / samples), samples)
    if refine:
        for _ in range(3):
            t0, best = scan(t0 - width, t0 + width, 33)
            width /= 16.0
    return best


def growth_at(psi, r, n_max=80, samples=256):
    """Alias with the paper-facing name m_psi(r)."""
    return circle_max_green(psi, r, n_max=n_max, samples=samples)


def find_unit_growth_radius(m_of_r, target=1.0, start=1.0, iters=58):
    """Bisect the increasing function r -> m(r) against the target value."""
    m1 = m_of_r(start)
    lo = hi = start
    if m1 < target:
        while m_of_r(hi) < target:
            hi *= 2.0
            if hi > 1e12:
                raise NormalizationError(
                    "growth never reached the target; Green budget too small")
        lo = max(start, hi / 2.0)
    elif m1 > target:
        while m_of_r(lo) > target:
            lo /= 2.0
            if lo < 1e-12:
                raise NormalizationError("growth stayed above the target near 0")
        hi = min(start, lo * 2.0)
    else:
        return start
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if m_of_r(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def normalize(xi: SeriesParametrization, f=None, n_max=80, samples=256):
    """Rescale so that m_psi(1) = 1; the scale alpha is positive real."""
    alpha = find_unit_growth_radius(
        lambda r: circle_max_green(xi, r, n_max=n_max, samples=samples))
    powers = alpha ** np.arange(xi.coeffs.shape[0])
    return replace(
        xi,
        coeffs=xi.coeffs * powers[:, None],
        alpha=xi.alpha * alpha,
        r_valid=xi.r_valid / alpha,
    )


def lambda_of(f_view, psi_x: SeriesParametrization, psi_fx: SeriesParametrization,
              consistency_tol=1e-6):
    """The reparametrization factor lambda with f(psi_x(z)) = psi_fx(lambda z).

    Computed from the chain rule Df(x) psi_x'(0) = psi_fx'(0) lambda; both
    components must give the same ratio.
    """
    x = psi_x.base
    v = f_view.jacobian(x) @ psi_x.derivative_at_zero()
    w = psi_fx.derivative_at_zero()
    ratios = []
    scale = np.max(np.abs(w))
    for i in range(2):
        if abs(w[i]) > 1e-8 * scale:
            ratios.append(v[i] / w[i])
    lam = ratios[0]
    if len(ratios) == 2 and abs(ratios[0] - ratios[1]) > consistency_tol * max(
        1.0, abs(lam)
    ):
        raise ValueError(
            f"component ratios disagree ({ratios[0]} vs {ratios[1]}); curves not matched"
        )
    return complex(lam)


@dataclass(frozen=True)
class SharpMetric:
    """The canonical metric on E^u_x: |v|_e / |psi_x'(0)|_e."""

    at: np.ndarray
    direction: np.ndarray      # unit vector spanning E^u_x
    scale: float               # 1 / |psi'(0)|

    @classmethod
    def from_parametrization(cls, psi):
        d = psi.derivative_at_zero()
        n = float(np.linalg.norm(d))
        return cls(at=psi.base.copy(), direction=d / n, scale=1.0 / n)


def sharp_norm(m: SharpMetric, v, angle_tol=1e-8):
    v = np.asarray(v, dtype=complex)
    nv = float(np.linalg.norm(v))
    if nv == 0:
        return 0.0
    # v must span the same complex line as the direction.
    inner = abs(np.vdot(m.direction, v))
    if inner < nv * (1 - angle_tol):
        raise ValueError("vector not tangent to E^u at this point")
    return nv * m.scale
