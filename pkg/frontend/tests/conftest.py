import numpy as np
import pytest


def _csv(path, kind, header, rows):
    lines = [f"# schema=henon-qh/1:{kind}", header]
    lines += [",".join(str(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture
def growth_csv(tmp_path):
    rows = [[r, 0.9 * r, 2 * r] for r in np.geomspace(0.3, 3.0, 5)]
    return _csv(tmp_path / "growth.csv", "growth", "r,m,M", rows)


@pytest.fixture
def growth_json(tmp_path):
    path = tmp_path / "growth.json"
    path.write_text('{"schema": "henon-qh/1:growth-summary", "kappa": 3.48}')
    return path


_INTER_HEADER = ("curve_u,curve_s,re_zeta_u,im_zeta_u,re_zeta_s,im_zeta_s,"
                 "re_x,im_x,re_y,im_y,residual,angle,mu,tangency_order,"
                 "mu_agreement")


@pytest.fixture
def intersections_csv(tmp_path):
    rows = [[0, 0, 2.4, 0.0, -57.3, 0.0, 1.0, 0.0, 0.5, 0.0,
             1e-13, 1.2, 1, 0, 1],
            [0, 0, -8.3, 0.0, -4.4, 0.0, -1.0, 0.0, 0.2, 0.0,
             4e-14, 1.4, 1, 0, 1]]
    return _csv(tmp_path / "intersections.csv", "intersections",
                _INTER_HEADER, rows)


@pytest.fixture
def empty_intersections_csv(tmp_path):
    return _csv(tmp_path / "empty.csv", "intersections", _INTER_HEADER, [])


@pytest.fixture
def strata_csv(tmp_path):
    return _csv(tmp_path / "strata.csv", "strata", "m_s,m_u,count",
                [[1, 1, 40]])


@pytest.fixture
def disk_samples_csv(tmp_path):
    rng = np.random.default_rng(3)
    rows = [[0, 0.5, 0.0, x, 0.1 * x, -x, 0.0, 0.0, abs(x)]
            for x in rng.normal(size=20)]
    return _csv(tmp_path / "disk_samples.csv", "disk-samples",
                "member,re_zeta,im_zeta,re_x,im_x,re_y,im_y,gplus,gminus",
                rows)
