"""Periodic points by grid-seeded Newton, cycle multipliers, saddle filtering."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .maps import HenonMap, _polyder, _polyval


@dataclass(frozen=True)
class Saddle:
    """A saddle cycle: period, cycle points, multipliers of the return map."""

    period: int
    cycle: np.ndarray          # shape (N, 2), ordered along the orbit
    nu_s: complex
    nu_u: complex
    residual: float
    ev_s: np.ndarray           # eigenvectors of Df^N at cycle[0]
    ev_u: np.ndarray

    @property
    def base(self):
        return self.cycle[0]


def _iterate_with_jac(f, z, n):
    """f^n(z) and D f^n(z), vectorized over leading axes of z."""
    z = np.asarray(z, dtype=complex)
    eye = np.broadcast_to(np.eye(2, dtype=complex), z.shape[:-1] + (2, 2)).copy()
    D = eye
    for _ in range(n):
        J = f.jacobian(z)
        D = J @ D
        z = f.evaluate(z)
    return z, D


def _solve2(A, b):
    """Solve batched 2x2 complex systems by explicit inversion."""
    det = A[..., 0, 0] * A[..., 1, 1] - A[..., 0, 1] * A[..., 1, 0]
    with np.errstate(divide="ignore", invalid="ignore"):
        x0 = (A[..., 1, 1] * b[..., 0] - A[..., 0, 1] * b[..., 1]) / det
        x1 = (-A[..., 1, 0] * b[..., 0] + A[..., 0, 0] * b[..., 1]) / det
    return np.stack([x0, x1], axis=-1), det


def _newton_seeds(f, grid, rng):
    """grid^2 seeds over the filtration bidisk: a real lattice plus a
    deterministically jittered complex copy (to reach non-real roots)."""
    R = f.filtration_radius()
    g = max(2, int(np.sqrt(grid**2 / 2)))
    u = np.linspace(-R, R, g)
    X, Y = np.meshgrid(u, u)
    real = np.stack([X.ravel(), Y.ravel()], axis=-1).astype(complex)
    jit = real + (rng.standard_normal(real.shape) * 1j + rng.standard_normal(real.shape)) * (
        0.15 * R
    )
    return np.concatenate([real, jit], axis=0)


def _orbit_space_periodic(f, N, newton_steps=60):
    """Period-N points from Newton on the whole-orbit recurrence.

    Writing w_j for the x-coordinate after j factor applications, each factor
    (x, y) -> (p(x) - a y, x) gives w_{j+1} = p_j(w_j) - a_j w_{j-1} with
    indices mod N * len(factors).  One seed per sequence of roots of the p_j
    (the anti-integrable limit, where the recurrence decouples into p_j(w_j)
    ~ 0) reaches every solution when the map is strongly horseshoe-like;
    high-period points with microscopic Newton basins in phase space are
    well-separated in orbit space.
    """
    import itertools

    facs = list(f.factors) * N
    L = len(facs)
    ps = [np.array(fc.p, dtype=complex) for fc in facs]
    dps = [_polyder(p) for p in ps]
    aa = np.array([fc.a for fc in facs])
    per_site = [np.roots(p[::-1]) for p in ps]
    seeds = np.array([s for s in itertools.product(*per_site)],
                     dtype=complex)
    jm1 = (np.arange(L) - 1) % L
    jp1 = (np.arange(L) + 1) % L
    roots = []
    for w in seeds:
        for _ in range(newton_steps):
            pw = np.array([_polyval(ps[j], w[j]) for j in range(L)])
            g = pw - aa * w[jm1] - w[jp1]
            J = np.zeros((L, L), dtype=complex)
            J[np.arange(L), np.arange(L)] = [
                _polyval(dps[j], w[j]) for j in range(L)]
            J[np.arange(L), jm1] -= aa
            J[np.arange(L), jp1] -= 1.0
            try:
                step = np.linalg.solve(J, g)
            except np.linalg.LinAlgError:
                break
            w = w - step
            if np.max(np.abs(step)) < 1e-14:
                break
        roots.append([w[0], w[L - 1]])
    return np.array(roots, dtype=complex)


def periodic_points(f, N, grid=32, tol=1e-12, seed=0, newton_steps=80):
    """All solutions of f^N(z) = z found by Newton, deduplicated.

    Seeds come from two sources: the anti-integrable orbit-space recurrence
    (one per root sequence, exhaustive for horseshoe-like maps) and a grid
    over the filtration bidisk (fallback for maps where the orbit-space
    seeding degenerates).  Returns an array of shape (m, 2).  Includes
    points whose exact period is a proper divisor of N.
    """
    rng = np.random.default_rng(seed)
    z = np.concatenate([_orbit_space_periodic(f, N),
                        _newton_seeds(f, grid, rng)], axis=0)
    R = f.filtration_radius()
    for _ in range(newton_steps):
        zn, D = _iterate_with_jac(f, z, N)
        F = zn - z
        A = D - np.eye(2, dtype=complex)
        step, det = _solve2(A, F)
        bad = ~np.isfinite(step).all(axis=1)
        step[bad] = 0.0
        z = z - step
        # Runaway seeds are clamped back into the bidisk to keep arithmetic finite.
        out = np.max(np.abs(z), axis=1) > 4 * R
        if np.any(out):
            z[out] = z[out] * (4 * R / np.max(np.abs(z[out]), axis=1))[:, None]
    zn, _ = _iterate_with_jac(f, z, N)
    res = np.max(np.abs(zn - z), axis=1)
    ok = res <= max(tol, 1e-11)
    roots = z[ok]
    return _dedup(roots, max(10 * tol, 1e-8))


def _dedup(points, eps):
    kept = []
    for p in points:
        if all(np.max(np.abs(p - q)) > eps for q in kept):
            kept.append(p)
    return np.array(kept) if kept else np.zeros((0, 2), dtype=complex)


def _exact_period(f, p, N, eps=1e-8):
    for M in range(1, N):
        if N % M == 0:
            q = p
            for _ in range(M):
                q = f.evaluate(q)
            if np.max(np.abs(q - p)) <= eps:
                return M
    return N


def find_periodic(f, N, grid=32, tol=1e-12, seed=0):
    """Primitive period-N cycles of f as lists of ordered orbit points."""
    roots = periodic_points(f, N, grid=grid, tol=tol, seed=seed)
    cycles = []
    used = np.zeros(len(roots), dtype=bool)
    for i, p in enumerate(roots):
        if used[i]:
            continue
        if _exact_period(f, p, N) != N:
            used[i] = True
            continue
        orbit = [p]
        q = p
        for _ in range(N - 1):
            q = f.evaluate(q)
            orbit.append(q)
        # Mark every root belonging to this cycle as used.
        for q in orbit:
            d = np.max(np.abs(roots - q), axis=1)
            used |= d <= 1e-7
        cycles.append(np.array(orbit))
    return cycles


class NonSaddleCycle(Exception):
    """Cycle whose multipliers do not straddle the unit circle."""

    def __init__(self, kind, nus):
        super().__init__(f"{kind}: multipliers {nus}")
        self.kind = kind
        self.nus = nus


def classify(f, cycle, indifferent_tol=1e-6):
    """Classify a verified cycle; returns a Saddle or raises NonSaddleCycle."""
    cycle = np.asarray(cycle, dtype=complex)
    N = cycle.shape[0]
    base = cycle[0]
    zn, D = _iterate_with_jac(f, base, N)
    residual = float(np.max(np.abs(zn - base)))
    evals, evecs = np.linalg.eig(D)
    order = np.argsort(np.abs(evals))
    nu_s, nu_u = evals[order[0]], evals[order[1]]
    v_s, v_u = evecs[:, order[0]], evecs[:, order[1]]
    if abs(abs(nu_s) - 1) < indifferent_tol or abs(abs(nu_u) - 1) < indifferent_tol:
        raise NonSaddleCycle("indifferent candidate", (nu_s, nu_u))
    if not (abs(nu_s) < 1 < abs(nu_u)):
        raise NonSaddleCycle("non-saddle", (nu_s, nu_u))
    return Saddle(period=N, cycle=cycle, nu_s=complex(nu_s), nu_u=complex(nu_u),
                  residual=residual, ev_s=v_s, ev_u=v_u)


def find_saddles(f, N, grid=32, tol=1e-12, seed=0):
    """All primitive period-N saddles; non-saddle cycles are dropped."""
    saddles = []
    for cyc in find_periodic(f, N, grid=grid, tol=tol, seed=seed):
        try:
            saddles.append(classify(f, cyc))
        except NonSaddleCycle:
            continue
    saddles.sort(key=lambda s: (s.base[0].real, s.base[0].imag))
    return saddles
