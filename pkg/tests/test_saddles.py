import numpy as np
import pytest

from henon_qh.maps import quadratic_henon
from henon_qh.saddles import classify, find_periodic, find_saddles, \
    periodic_points

F = quadratic_henon(0.5, -6.0)

# Fixed points of (x, y) -> (x^2 - 6 - 0.5 y, x) solve x^2 - 1.5 x - 6 = 0.
X_PLUS = (1.5 + np.sqrt(26.25)) / 2
X_MINUS = (1.5 - np.sqrt(26.25)) / 2


class TestFixedPoints:
    def test_positions(self):
        sads = find_saddles(F, 1)
        assert len(sads) == 2
        bases = sorted(s.base[0].real for s in sads)
        assert bases[0] == pytest.approx(X_MINUS, abs=1e-13)
        assert bases[1] == pytest.approx(X_PLUS, abs=1e-13)
        for s in sads:
            assert abs(s.base[0] - s.base[1]) < 1e-12

    def test_multipliers_solve_characteristic_equation(self):
        # At a fixed point x the multipliers solve l^2 - 2 x l + a = 0.
        for s in find_saddles(F, 1):
            x = s.base[0]
            for lam in (s.nu_s, s.nu_u):
                assert abs(lam**2 - 2 * x * lam + 0.5) < 1e-9

    def test_multiplier_product_is_jacobian(self):
        for s in find_saddles(F, 1):
            assert s.nu_s * s.nu_u == pytest.approx(F.jac_det, abs=1e-12)

    def test_saddle_ordering(self):
        for s in find_saddles(F, 1):
            assert abs(s.nu_s) < 1.0 < abs(s.nu_u)


class TestPeriodicCounts:
    @pytest.mark.parametrize("N", [1, 2, 3, 4])
    def test_bezout_count(self, N):
        pts = periodic_points(F, N)
        assert len(pts) == 2**N

    def test_primitive_cycles_exclude_divisor_periods(self):
        cycles = find_periodic(F, 2)
        # 4 period-2 points minus 2 fixed points = 1 primitive 2-cycle
        assert len(cycles) == 1
        assert len(cycles[0]) == 2

    def test_cycle_is_an_orbit(self):
        cyc = find_periodic(F, 3)[0]
        for i in range(3):
            assert np.allclose(F.evaluate(cyc[i]), cyc[(i + 1) % 3],
                               atol=1e-9)


class TestClassification:
    def test_classify_matches_direct_eigenvalues(self):
        s = find_saddles(F, 1)[1]
        J = F.jacobian(s.base)
        eig = sorted(np.linalg.eigvals(J), key=abs)
        assert s.nu_s == pytest.approx(eig[0], abs=1e-10)
        assert s.nu_u == pytest.approx(eig[1], abs=1e-10)

    def test_eigenvectors_are_eigenvectors(self):
        for s in find_saddles(F, 2):
            J = np.eye(2, dtype=complex)
            for z in s.cycle:
                J = F.jacobian(z) @ J
            assert np.allclose(J @ s.ev_u, s.nu_u * s.ev_u, atol=1e-8)
            assert np.allclose(J @ s.ev_s, s.nu_s * s.ev_s, atol=1e-8)

    def test_rolled_cycle_same_multipliers(self):
        s = find_saddles(F, 2)[0]
        rolled = classify(F, np.roll(s.cycle, -1, axis=0))
        assert rolled.nu_u == pytest.approx(s.nu_u, rel=1e-10)
        assert rolled.nu_s == pytest.approx(s.nu_s, rel=1e-10)

    def test_residuals_small(self):
        for N in (1, 2, 3):
            for s in find_saddles(F, N):
                assert s.residual < 1e-10
