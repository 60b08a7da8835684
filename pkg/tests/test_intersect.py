import numpy as np
import pytest

from henon_qh import intersect as ix
from henon_qh.maps import quadratic_henon
from henon_qh.saddles import find_saddles
from henon_qh.uniformize import linearize, normalize


def tangent_pair(k):
    """(zeta, zeta^{k+1}) against (zeta, 0): order-k tangency at the origin."""
    cu = np.zeros((k + 2, 2), dtype=complex)
    cu[1, 0] = 1.0
    cu[k + 1, 1] += 1.0
    return ix.polynomial_curve(cu), ix.polynomial_curve([[0, 0], [1, 0]])


class TestHermitianAngle:
    def test_range_and_phase_invariance(self):
        u = np.array([1.0, 2.0j])
        v = np.array([0.5 - 1j, 0.25])
        a = ix.hermitian_angle(u, v)
        assert 0 <= a <= np.pi / 2
        assert ix.hermitian_angle(np.exp(0.7j) * u, v) == pytest.approx(a)

    def test_parallel_and_orthogonal(self):
        u = np.array([1.0 + 0j, 0.0])
        assert ix.hermitian_angle(u, 3j * u) == pytest.approx(0.0)
        v = np.array([0.0, 1.0 + 0j])
        assert ix.hermitian_angle(u, v) == pytest.approx(np.pi / 2)

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            ix.hermitian_angle(np.zeros(2), np.ones(2))


class TestSyntheticMultiplicity:
    @pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
    def test_mu_is_k_plus_one(self, k):
        cu, cs = tangent_pair(k)
        recs = ix.find_intersections(cu, cs, 0.5, 0.5, seeds=3)
        assert len(recs) == 1
        r = recs[0]
        assert r.mu == k + 1
        assert r.tangency_order == k
        assert r.mu_agreement
        if k == 0:
            assert r.angle > 0.5
        else:
            assert r.angle < 1e-8

    def test_transverse_crossing_angle(self):
        cu = ix.polynomial_curve([[0, 0], [1, 1]])
        cs = ix.polynomial_curve([[0, 0], [1, 0]])
        recs = ix.find_intersections(cu, cs, 0.5, 0.5, seeds=3)
        assert len(recs) == 1
        assert recs[0].angle == pytest.approx(np.pi / 4)

    def test_disjoint_curves(self):
        cu = ix.polynomial_curve([[0, 5.0], [1, 0]])
        cs = ix.polynomial_curve([[0, 0], [1, 0]])
        recs = ix.find_intersections(cu, cs, 0.5, 0.5, seeds=3)
        assert recs == []


@pytest.fixture(scope="module")
def report():
    f = quadratic_henon(0.5, -6.0)
    sads = find_saddles(f, 1)
    U = [normalize(linearize(f, sads[0], "unstable", T=40))]
    S = [normalize(linearize(f, sads[1], "stable", T=40))]
    return ix.transversality_report(U, S, 12.0, 100.0, seeds=7)


@pytest.fixture(scope="module")
def setup():
    f = quadratic_henon(1.0, -10.0)
    sads = find_saddles(f, 1)
    s = min(sads, key=lambda s: abs(s.nu_u))   # kappa-attaining saddle
    return f, s, abs(s.nu_u)


class TestHorseshoeHeteroclinics:
    def test_intersections_exist(self, report):
        assert report["count"] >= 2

    def test_all_transverse(self, report):
        assert report["verdict"] == "transverse"
        assert report["mu_histogram"] == {1: report["count"]}
        assert report["min_angle"] > 0.1

    def test_residuals_tiny(self, report):
        for r in report["records"]:
            assert r.residual < 1e-9


class TestTangencyDecay:
    def test_volume_preserving_multipliers(self, setup):
        _, s, _ = setup
        assert abs(s.nu_u * s.nu_s) == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("k", [1, 2])
    def test_exchange_law_and_decay(self, setup, k):
        f, s, kappa = setup
        rep = ix.tangency_decay_experiment(f, s, k, n_list=range(1, 6))
        # matched orders obey the stable-side prediction while the signal
        # stays above the nu_u^n-amplified round-off floor
        assert rep["law_residuals"][1:, :].max() < 1e-4
        target = -2 * np.log(kappa)
        assert abs(rep["exponents"][1] - target) < 0.1 * abs(target)
        for j in range(1, k + 1):
            assert rep["exponents"][j] <= target + 0.2
        # the mismatch order grows at the unstable rate
        assert rep["raw_top_growth_rate"] > 0.5 * np.log(kappa)
        assert np.all(np.diff(rep["raw_top_coefficient"]) > 0)
