# Copyright 2026 The rsrp-oracle Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
import json
import math

import pytest

import rsrp_oracle as ro

ORIGIN = ro.GeoPoint(35.70, 51.40)


def street_scene(sigma_db, seed=3):
    cfg = ro.SynthConfig()
    cfg.cells = [ro.SynthCell("C1", ORIGIN, -40.0, 3.5)]
    cfg.route = [ro.GeoPoint(35.7009, 51.40221), ro.GeoPoint(35.7009, 51.40885)]
    cfg.sigma_db = sigma_db
    cfg.seed = seed
    return ro.generate(cfg)


def test_version():
    assert ro.__version__ == "0.1.0"


def test_distance():
    d = ro.great_circle_distance(ro.GeoPoint(35.7, 51.4), ro.GeoPoint(35.701, 51.401))
    assert d == pytest.approx(143.24182861445613, rel=1e-6)
    assert ro.great_circle_distance(ro.GeoPoint(0, 0), ro.GeoPoint(0, 180)) == pytest.approx(
        math.pi * 6371000.0, rel=1e-12)


def test_predict_rsrp_and_errors():
    assert ro.predict_rsrp(ro.PathLossParams(-40.0, 3.0), 100.0) == pytest.approx(-100.0)
    with pytest.raises(ro.Error):
        ro.predict_rsrp(ro.PathLossParams(-40.0, 3.0), 0.5)


def test_box_solver_two_points():
    x = [10.0, 20.0]
    p = [-70.0, -100.0]
    sol = ro.solve_box_ls(p, x)
    assert sol.interior
    assert sol.beta == pytest.approx(3.0)
    assert sol.p0_dbm == pytest.approx(-40.0)
    clamped = ro.solve_box_ls(p, x, bounds=ro.FitBounds(-90.0, -10.0, 3.5, 6.0))
    assert clamped.beta == 3.5
    assert not clamped.interior


def test_sigma_helpers():
    assert ro.estimate_sigma([2.0, -2.0]) == pytest.approx(math.sqrt(2.0))
    lo, hi = ro.sigma_confidence_interval(4.0, 11, 0.05)
    assert lo == pytest.approx(1.9762702402343115, rel=1e-9)
    assert hi == pytest.approx(4.96370164763099, rel=1e-9)
    assert ro.chi_square_quantile(0.975, 10) == pytest.approx(20.483177350807388, rel=1e-9)
    stats = ro.box_stats([4.0, 1.0, 3.0, 2.0])
    assert (stats.q1, stats.median, stats.q3) == (1.75, 2.5, 3.25)


def test_end_to_end_noiseless():
    dataset, sites, truth = street_scene(0.0)
    assert len(dataset) == len(truth) > 100
    index = ro.SiteIndex(sites)
    target = dataset.measurements[50].pos
    record = json.loads(ro.predict_at(target, dataset, index))
    assert record["headline_cell"] == "C1"
    assert record["headline_rsrp_dbm"] == pytest.approx(truth[50].true_mean_dbm, abs=1e-6)
    loo = ro.leave_one_out(dataset, index)
    assert loo.coverage() > 0.9
    assert max(abs(r.error_db) for r in loo.records) < 1e-6


def test_noisy_loo_sweep_and_sigma():
    dataset, sites, _ = street_scene(4.0)
    index = ro.SiteIndex(sites)
    mle = ro.PipelineConfig(fit_kind=ro.FitKind.MLE)
    loo = ro.leave_one_out(dataset, index, mle, with_local_sigma=True)
    assert len(loo.records) + loo.unpredictable_count == loo.measured_count
    assert all(r.local_sigma_db is not None for r in loo.records)

    axes = ro.SweepAxes()
    axes.radii_m = [50.0]
    rows = ro.sweep(dataset, index, axes)
    assert len(rows) == 16
    assert rows[0].min_points == 8 and rows[-1].min_dist_m == 25.0

    est = ro.estimate_shadowing(dataset, ro.DiffOptions(pairing=ro.PairingMode.NON_OVERLAPPING))
    assert est.ci_low_db <= est.sigma_db <= est.ci_high_db
    assert 2.5 < est.sigma_db < 5.5


def test_input_errors_cross_the_boundary(tmp_path):
    bad = tmp_path / "drive.csv"
    bad.write_text("timestamp,lat,lon\n")
    with pytest.raises(ro.InputError):
        ro.load_drive_test(str(bad))
    with pytest.raises(ro.InputError):
        ro.load_cell_sites(str(tmp_path / "missing.csv"))
