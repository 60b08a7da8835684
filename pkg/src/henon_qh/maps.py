"""Complex Henon maps: finite compositions of factors (x, y) -> (p(x) - a*y, x).

Points in C^2 are numpy arrays of shape (..., 2) with complex entries, so every
operation here is vectorized over leading axes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Norm beyond which an orbit is treated as numerically escaped.
OVERFLOW_RADIUS = 1e150


class MapSpecError(ValueError):
    """Raised when a map specification violates the schema."""


class EscapeError(RuntimeError):
    """An orbit left the configured overflow radius.

    Carries the last finite point and the step at which overflow occurred.
    """

    def __init__(self, point, step):
        super().__init__(f"orbit escaped overflow radius at step {step}")
        self.point = point
        self.step = step


def point(x, y):
    """Build a point of C^2 from two complex scalars."""
    z = np.array([x, y], dtype=complex)
    if not np.all(np.isfinite(z.view(float))):
        raise ValueError("non-finite coordinates")
    return z


def _polyval(coeffs, x):
    """Horner evaluation; coeffs has the constant term first."""
    r = np.full_like(np.asarray(x, dtype=complex), coeffs[-1])
    for c in coeffs[-2::-1]:
        r = r * x + c
    return r


def _polyder(coeffs):
    return tuple(k * c for k, c in enumerate(coeffs))[1:]


@dataclass(frozen=True)
class HenonFactor:
    """One generalized Henon factor (x, y) -> (p(x) - a*y, x).

    p is monic with the constant term first; a is the (nonzero) Jacobian
    determinant of the factor.
    """

    p: tuple
    a: complex

    def __post_init__(self):
        p = tuple(complex(c) for c in self.p)
        a = complex(self.a)
        if len(p) < 3:
            raise MapSpecError("factor polynomial must have degree >= 2")
        if p[-1] != 1:
            raise MapSpecError("factor polynomial must be monic")
        if a == 0:
            raise MapSpecError("factor coefficient a must be nonzero")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "a", a)

    @property
    def degree(self):
        return len(self.p) - 1


@dataclass(frozen=True)
class HenonMap:
    """A finite composition of Henon factors, applied first-to-last."""

    factors: tuple

    def __post_init__(self):
        facs = tuple(self.factors)
        if not facs:
            raise MapSpecError("map needs at least one factor")
        if not all(isinstance(f, HenonFactor) for f in facs):
            raise MapSpecError("factors must be HenonFactor instances")
        object.__setattr__(self, "factors", facs)

    @property
    def degree(self):
        d = 1
        for f in self.factors:
            d *= f.degree
        return d

    @property
    def jac_det(self):
        a = 1.0 + 0.0j
        for f in self.factors:
            a *= f.a
        return a

    def evaluate(self, z):
        z = np.asarray(z, dtype=complex)
        x, y = z[..., 0], z[..., 1]
        for f in self.factors:
            x, y = _polyval(f.p, x) - f.a * y, x
        return np.stack([x, y], axis=-1)

    def jacobian(self, z):
        """Chain-rule product of factor Jacobians [[p'(x), -a], [1, 0]]."""
        z = np.asarray(z, dtype=complex)
        x, y = z[..., 0], z[..., 1]
        one = np.ones_like(x)
        zero = np.zeros_like(x)
        # Running product D, stored entrywise for vectorization.
        d00, d01, d10, d11 = one, zero, zero, one
        for f in self.factors:
            dp = _polyval(_polyder(f.p), x)
            e00 = dp * d00 - f.a * d10
            e01 = dp * d01 - f.a * d11
            e10, e11 = d00, d01
            d00, d01, d10, d11 = e00, e01, e10, e11
            x, y = _polyval(f.p, x) - f.a * y, x
        jac = np.stack(
            [np.stack([d00, d01], axis=-1), np.stack([d10, d11], axis=-1)],
            axis=-2,
        )
        return jac

    def inverse(self):
        return InverseHenonMap(self)

    def filtration_radius(self):
        return max(
            1.0 + abs(f.a) + sum(abs(c) for c in f.p[:-1]) for f in self.factors
        )

    def escaped(self, z):
        """Membership in the forward escape region |x| >= max(R, |y|)."""
        z = np.asarray(z, dtype=complex)
        r = self.filtration_radius()
        ax, ay = np.abs(z[..., 0]), np.abs(z[..., 1])
        return (ax >= r) & (ax >= ay)


@dataclass(frozen=True)
class InverseHenonMap:
    """The inverse automorphism; factor inverses (x, y) -> (y, (p(y) - x)/a)."""

    forward: HenonMap

    @property
    def degree(self):
        return self.forward.degree

    @property
    def jac_det(self):
        return 1.0 / self.forward.jac_det

    def evaluate(self, z):
        z = np.asarray(z, dtype=complex)
        x, y = z[..., 0], z[..., 1]
        for f in self.forward.factors[::-1]:
            x, y = y, (_polyval(f.p, y) - x) / f.a
        return np.stack([x, y], axis=-1)

    def jacobian(self, z):
        z = np.asarray(z, dtype=complex)
        x, y = z[..., 0], z[..., 1]
        one = np.ones_like(x)
        zero = np.zeros_like(x)
        d00, d01, d10, d11 = one, zero, zero, one
        for f in self.forward.factors[::-1]:
            dp = _polyval(_polyder(f.p), y)
            # Jacobian of (x, y) -> (y, (p(y) - x)/a) is [[0, 1], [-1/a, p'(y)/a]].
            e00, e01 = d10, d11
            e10 = (-d00 + dp * d10) / f.a
            e11 = (-d01 + dp * d11) / f.a
            d00, d01, d10, d11 = e00, e01, e10, e11
            x, y = y, (_polyval(f.p, y) - x) / f.a
        return np.stack(
            [np.stack([d00, d01], axis=-1), np.stack([d10, d11], axis=-1)],
            axis=-2,
        )

    def inverse(self):
        return self.forward

    def filtration_radius(self):
        return self.forward.filtration_radius()

    def escaped(self, z):
        """Backward escape region |y| >= max(R, |x|)."""
        z = np.asarray(z, dtype=complex)
        r = self.filtration_radius()
        ax, ay = np.abs(z[..., 0]), np.abs(z[..., 1])
        return (ay >= r) & (ay >= ax)


def evaluate(f, z):
    return f.evaluate(z)


def inverse_evaluate(f, z):
    return f.inverse().evaluate(z)


def jacobian(f, z):
    return f.jacobian(z)


def iterate(f, z, n, overflow_radius=OVERFLOW_RADIUS):
    """n-fold evaluate (n > 0) or inverse evaluate (n < 0); n = 0 is identity.

    Raises EscapeError if the orbit exceeds overflow_radius in max-norm.
    """
    z = np.asarray(z, dtype=complex)
    step = f if n >= 0 else f.inverse()
    for k in range(abs(n)):
        z = step.evaluate(z)
        if np.any(np.abs(z) > overflow_radius):
            raise EscapeError(z, k + 1)
    return z


def filtration_radius(f):
    return f.filtration_radius()


def _coeff_from_json(v, what):
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    raise MapSpecError(f"{what} must be a number or a [re, im] pair")


def map_from_dict(spec):
    """Parse the map specification {"factors": [{"p": [...], "a": ...}]}. """
    if not isinstance(spec, dict) or "factors" not in spec:
        raise MapSpecError('map spec must be an object with a "factors" list')
    factors = []
    for i, fac in enumerate(spec["factors"]):
        if not isinstance(fac, dict) or "p" not in fac or "a" not in fac:
            raise MapSpecError(f'factor {i} must carry "p" and "a"')
        p = tuple(_coeff_from_json(c, f"factor {i} coefficient") for c in fac["p"])
        a = _coeff_from_json(fac["a"], f"factor {i} a")
        try:
            factors.append(HenonFactor(p=p, a=a))
        except MapSpecError as exc:
            raise MapSpecError(f"factor {i}: {exc}") from None
    return HenonMap(tuple(factors))


def map_to_dict(f):
    return {
        "factors": [
            {"p": [[c.real, c.imag] for c in fac.p], "a": [fac.a.real, fac.a.imag]}
            for fac in f.factors
        ]
    }


def quadratic_henon(a, c):
    """Single-factor map (x, y) -> (x^2 + c - a*y, x)."""
    return HenonMap((HenonFactor(p=(complex(c), 0.0, 1.0), a=complex(a)),))
