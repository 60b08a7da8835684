"""Truncated power-series (jet) arithmetic for curves zeta -> C^2.

A scalar series is a 1-d complex array of coefficients, constant term first.
A curve jet is a (T+1, 2) complex array: column 0 is the x-series, column 1
the y-series.  All products truncate at the working order.
"""

from __future__ import annotations

import numpy as np


def truncate(s, T):
    s = np.asarray(s, dtype=complex)
    out = np.zeros(T + 1, dtype=complex)
    n = min(len(s), T + 1)
    out[:n] = s[:n]
    return out


def series_mul(a, b, T):
    return np.convolve(a[: T + 1], b[: T + 1])[: T + 1]


def series_polyval(coeffs, X, T):
    """Evaluate a scalar polynomial (constant first) on a scalar series."""
    r = np.zeros(T + 1, dtype=complex)
    r[0] = coeffs[-1]
    for c in coeffs[-2::-1]:
        r = series_mul(r, X, T)
        r[0] += c
    return r


def series_compose(outer, inner, T):
    """outer(inner(zeta)) truncated to order T; inner must have no constant term."""
    inner = truncate(inner, T)
    if inner[0] != 0:
        raise ValueError("inner series must vanish at zero")
    return series_polyval(outer, inner, T)


def series_shift(s, h):
    """Coefficients of s(h + eta) as a series in eta (Taylor recentering)."""
    s = np.asarray(s, dtype=complex).copy()
    n = len(s)
    # Repeated synthetic division by (eta - (-h)).
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            s[j] += h * s[j + 1]
    return s


def series_deriv(s):
    s = np.asarray(s, dtype=complex)
    return s[1:] * np.arange(1, len(s))


def jet_apply_map(f, jet, T):
    """Jet of f composed with a curve jet, truncated at order T.

    f is a HenonMap or InverseHenonMap; the composition is exact to the
    truncation order because each factor is polynomial.
    """
    jet = np.asarray(jet, dtype=complex)
    X = truncate(jet[:, 0], T)
    Y = truncate(jet[:, 1], T)
    factors = getattr(f, "factors", None)
    if factors is not None:
        for fac in factors:
            X, Y = series_polyval(fac.p, X, T) - fac.a * Y, X
    else:
        for fac in f.forward.factors[::-1]:
            X, Y = Y, (series_polyval(fac.p, Y, T) - X) / fac.a
    return np.stack([X, Y], axis=-1)


def jet_shift(jet, h):
    """Recenter a curve jet: coefficients of the curve at parameter h."""
    jet = np.asarray(jet, dtype=complex)
    return np.stack([series_shift(jet[:, 0], h), series_shift(jet[:, 1], h)], axis=-1)


def jet_scale_arg(jet, s):
    """Jet of zeta -> curve(s * zeta)."""
    jet = np.asarray(jet, dtype=complex)
    powers = s ** np.arange(jet.shape[0])
    return jet * powers[:, None]


def jet_eval(jet, zeta):
    """Horner evaluation of a curve jet at one or many parameter values."""
    jet = np.asarray(jet, dtype=complex)
    zeta = np.asarray(zeta, dtype=complex)
    x = np.full_like(zeta, jet[-1, 0])
    y = np.full_like(zeta, jet[-1, 1])
    for k in range(jet.shape[0] - 2, -1, -1):
        x = x * zeta + jet[k, 0]
        y = y * zeta + jet[k, 1]
    return np.stack([x, y], axis=-1)


def jet_eval_deriv(jet, zeta):
    """Derivative curve jet'(zeta), vectorized like jet_eval."""
    jet = np.asarray(jet, dtype=complex)
    d = np.stack([series_deriv(jet[:, 0]), series_deriv(jet[:, 1])], axis=-1)
    if d.shape[0] == 0:
        z = np.zeros_like(np.asarray(zeta, dtype=complex))
        return np.stack([z, z], axis=-1)
    return jet_eval(d, zeta)
