import math

import numpy as np
import pytest

import vdreg

QUICK = {"mcmc": {"iterations": 600, "burn_in": 300, "thin": 10}}


def test_worked_example():
    assert vdreg.log_sim_continuous([0.0]) == pytest.approx(-0.5 * math.log(2 * math.pi * 1.5), abs=1e-14)
    assert vdreg.log_sim_continuous([0.0, 0.0]) == pytest.approx(-1.9494488420664502, abs=1e-13)


def test_simulate_fit_predict():
    d = vdreg.simulate(p=2, missing_type="mnar", missing_frac=0.25, hetero=True, seed=3)
    assert d["train_x"].shape == (100, 2)
    assert np.isnan(d["train_x"]).any()
    model = vdreg.fit(d["train_x"], d["train_y"], QUICK)
    assert len(model.k_draws) == 30
    assert model.fitted.shape == (100,)
    pred = model.predict(d["test_x"])
    assert pred["point"].shape == (100,)
    assert vdreg.mspe(d["test_y"], pred["point"]) < 1.0
    diag = model.diagnostics()
    assert 0.0 < diag["sigma0_acceptance"] < 1.0


def test_fit_is_reproducible():
    d = vdreg.simulate(seed=5)
    a = vdreg.fit(d["train_x"], d["train_y"], QUICK).predict(d["test_x"])["point"]
    b = vdreg.fit(d["train_x"], d["train_y"], QUICK).predict(d["test_x"])["point"]
    assert np.array_equal(a, b)


def test_exact_prior_bell_number():
    out = vdreg.exact_prior(np.array([[0.1], [np.nan], [0.4], [1.0]]))
    assert len(out["partitions"]) == 15
    assert out["prob"].sum() == pytest.approx(1.0)


def test_metrics():
    assert vdreg.tjur_r2([1, 1, 0, 0], [0.9, 0.7, 0.4, 0.2]) == pytest.approx(0.5)
    assert vdreg.pct_correct([1, 0], [0.5, 0.5]) == 0.5
    with pytest.raises(vdreg.VdregError, match="Degenerate"):
        vdreg.tjur_r2([1, 1], [0.2, 0.3])


def test_errors_are_named():
    with pytest.raises(vdreg.VdregError, match="BadOutcome"):
        vdreg.fit(np.zeros((2, 1)), np.array([0.0, 0.5]), {"family": "binary", **QUICK})
    with pytest.raises(vdreg.VdregError, match="InvalidScenario"):
        vdreg.simulate(p=3)


def test_cli_entry(tmp_path):
    assert vdreg.cli(["simulate", "--seed", "2", "--outdir", str(tmp_path)]) == 0
    assert (tmp_path / "train.csv").exists()
    assert vdreg.cli(["fit"]) != 0
