import numpy as np
import pytest

from henon_qh import family as fam
from henon_qh.maps import quadratic_henon
from henon_qh.saddles import find_saddles
from henon_qh.uniformize import circle_max_green

F = quadratic_henon(0.5, -6.0)


@pytest.fixture(scope="module")
def saddle_family():
    return fam.build_saddle_family(F, 1, T=40)


@pytest.fixture(scope="module")
def profile(saddle_family):
    return fam.growth_profile(saddle_family, np.geomspace(0.3, 3.0, 5))


@pytest.fixture(scope="module")
def recentered():
    q = find_saddles(F, 1)[0]
    return fam.build_recentered_family(F, q, samples=6, T=10)


class TestSaddleFamily:
    def test_one_member_per_cycle_point(self, saddle_family):
        assert len(saddle_family.members) == 2

    def test_members_normalized(self, saddle_family):
        for m in saddle_family.members:
            assert abs(circle_max_green(m, 1.0) - 1.0) < 1e-9

    def test_period_two_family_size(self):
        F2 = fam.build_saddle_family(F, 2, T=20)
        # two fixed points plus one primitive 2-cycle with two points
        assert len(F2.members) == 4


class TestGrowthProfile:
    def test_m_below_M(self, profile):
        assert np.all(profile.m_of_r <= profile.M_of_r + 1e-12)

    def test_kappa_exceeds_one(self, profile):
        assert profile.kappa > 1.0

    def test_kappa_equals_min_multiplier(self, profile):
        lam = profile.lambdas[~np.isnan(profile.lambdas)]
        assert profile.kappa == pytest.approx(lam.min(), abs=1e-6)

    def test_M_at_kappa_is_degree(self, saddle_family, profile):
        val = max(circle_max_green(m, profile.kappa)
                  for m in saddle_family.members)
        assert val == pytest.approx(F.degree, abs=1e-6)


class TestLocalDisks:
    def test_disk_geometry(self, saddle_family):
        d = fam.local_disk(saddle_family.members[0], 0.5, rays=64)
        assert 0 < d.rho_in <= d.rho_out
        assert d.star_shaped
        assert d.area > 0

    def test_area_scales_quadratically_for_small_radius(self, saddle_family):
        # For r -> 0 the curve is linear, so area(r) ~ pi (r/|a1|)^2 |a1|^2.
        m = saddle_family.members[0]
        a1 = fam.local_disk(m, 0.05, rays=64).area
        a2 = fam.local_disk(m, 0.1, rays=64).area
        assert a2 / a1 == pytest.approx(4.0, rel=0.05)

    def test_boundary_touches_sphere(self, saddle_family):
        m = saddle_family.members[1]
        d = fam.local_disk(m, 0.5, rays=64)
        pts = m.evaluate(d.t_boundary * np.exp(1j * d.theta))
        dist = np.max(np.abs(pts - m.base), axis=-1)
        assert np.max(np.abs(dist - 0.5)) < 1e-8


class TestContraction:
    def test_backward_decay_matches_kappa(self, saddle_family, profile):
        rep = fam.contraction_check(saddle_family, profile, r=0.5)
        expected = rep["expected_exponent"]
        got = rep["backward_decay_exponent"]
        assert abs(got - expected) < 0.1 * abs(expected)

    def test_forward_escape_prediction(self, saddle_family, profile):
        rep = fam.contraction_check(saddle_family, profile, r=0.5)
        assert rep["forward_escape_observed"] is not None
        assert abs(rep["forward_escape_observed"]
                   - rep["forward_escape_predicted"]) <= 2


class TestRecenteredFamily:
    def test_members_found(self, recentered):
        assert len(recentered.members) >= 3

    def test_members_normalized(self, recentered):
        for m in recentered.members:
            assert abs(circle_max_green(m, 1.0) - 1.0) < 1e-6

    def test_jet_matches_evaluation(self, recentered):
        m = recentered.members[0]
        from henon_qh import series as js
        z = np.array([0.01 + 0.004j])
        direct = m.evaluate(z)[0]
        via = js.jet_eval(m.coeffs, z)[0]
        assert np.max(np.abs(direct - via)) < 1e-8


class TestOrders:
    def test_tau_one_on_saddle_family(self, saddle_family):
        for m in saddle_family.members:
            est = fam.estimate_tau(saddle_family, m.base, radius=1e-8)
            assert est.tau == 1
            assert est.gamma > 0

    def test_stratify_single_stratum(self):
        Fu = fam.build_saddle_family(F, 1, T=40, side="unstable")
        Fs = fam.build_saddle_family(F, 1, T=40, side="stable")
        table = fam.stratify(Fu, Fs, [m.base for m in Fu.members], 1e-8)
        assert table["rows"] == [{"m_s": 1, "m_u": 1, "count": 2}]
        assert table["skipped"] == 0
