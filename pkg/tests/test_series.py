import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from henon_qh import series as js
from henon_qh.maps import quadratic_henon

coeff = st.complex_numbers(max_magnitude=2.0, allow_nan=False,
                           allow_infinity=False)


def scalar_series(n=5):
    return st.lists(coeff, min_size=1, max_size=n).map(
        lambda c: np.array(c, dtype=complex))


class TestScalarSeries:
    @given(a=scalar_series(), b=scalar_series())
    @settings(max_examples=60, deadline=None)
    def test_mul_matches_polynomial_product(self, a, b):
        T = 6
        prod = js.series_mul(a, b, T)
        full = np.convolve(a, b)[: T + 1]
        assert np.allclose(prod, full[: len(prod)])

    def test_polyval_on_series(self):
        # p(t) = t^2 - 1 applied to s(z) = 1 + z
        s = np.array([1.0, 1.0], dtype=complex)
        p = np.array([-1.0, 0.0, 1.0], dtype=complex)
        out = js.series_polyval(p, s, 4)
        assert np.allclose(out[:3], [0.0, 2.0, 1.0])

    @given(a=scalar_series(), shift=coeff)
    @settings(max_examples=40, deadline=None)
    def test_shift_evaluates_correctly(self, a, shift):
        T = len(a) - 1
        shifted = js.series_shift(a, shift)
        z = 0.37 - 0.21j
        direct = np.polyval(a[::-1], z + shift)
        via = np.polyval(shifted[::-1], z)
        assert abs(direct - via) < 1e-7 * (1 + abs(direct))

    def test_compose_requires_vanishing_inner_constant(self):
        outer = np.array([1.0, 2.0], dtype=complex)
        inner = np.array([1.0, 1.0], dtype=complex)
        with pytest.raises(ValueError):
            js.series_compose(outer, inner, 3)

    def test_deriv(self):
        a = np.array([5.0, 3.0, 2.0, 1.0], dtype=complex)
        assert np.allclose(js.series_deriv(a), [3.0, 4.0, 3.0])


class TestCurveJets:
    def test_map_application_exact_to_truncation(self):
        f = quadratic_henon(0.5, -6.0)
        T = 8
        rng = np.random.default_rng(0)
        jet = rng.standard_normal((T + 1, 2)) + \
            1j * rng.standard_normal((T + 1, 2))
        image = js.jet_apply_map(f, jet, T)
        for z in (0.01, 0.003 + 0.002j):
            direct = f.evaluate(js.jet_eval(jet, np.array([z]))[0])
            via = js.jet_eval(image, np.array([z]))[0]
            # truncation error plus a machine-precision floor
            assert np.max(np.abs(direct - via)) < \
                200 * abs(z) ** (T + 1) + 1e-12

    def test_inverse_map_application(self):
        f = quadratic_henon(0.5, -6.0)
        T = 6
        rng = np.random.default_rng(1)
        jet = rng.standard_normal((T + 1, 2)) + \
            1j * rng.standard_normal((T + 1, 2))
        image = js.jet_apply_map(f.inverse(), jet, T)
        z = 0.005
        direct = f.inverse().evaluate(js.jet_eval(jet, np.array([z]))[0])
        via = js.jet_eval(image, np.array([z]))[0]
        assert np.max(np.abs(direct - via)) < \
            1e3 * abs(z) ** (T + 1) + 1e-12

    def test_jet_eval_deriv_matches_finite_difference(self):
        rng = np.random.default_rng(2)
        jet = rng.standard_normal((6, 2)) + 1j * rng.standard_normal((6, 2))
        z = np.array([0.3 + 0.1j])
        h = 1e-6
        num = (js.jet_eval(jet, z + h) - js.jet_eval(jet, z - h)) / (2 * h)
        assert np.allclose(js.jet_eval_deriv(jet, z), num, atol=1e-8)

    def test_jet_scale_arg(self):
        rng = np.random.default_rng(3)
        jet = rng.standard_normal((5, 2)) + 1j * rng.standard_normal((5, 2))
        scaled = js.jet_scale_arg(jet, 0.5)
        z = np.array([0.4])
        assert np.allclose(js.jet_eval(scaled, z),
                           js.jet_eval(jet, 0.5 * z))

    def test_jet_shift(self):
        rng = np.random.default_rng(4)
        jet = rng.standard_normal((5, 2)) + 1j * rng.standard_normal((5, 2))
        shifted = js.jet_shift(jet, 0.3 - 0.2j)
        z = np.array([0.1 + 0.05j])
        assert np.allclose(js.jet_eval(shifted, z),
                           js.jet_eval(jet, z + (0.3 - 0.2j)))
