import math

import numpy as np
import pytest

from infothresh import experiments
from infothresh.channels import ChannelSpec
from infothresh.experiments import (COLUMNS, ExperimentConfig, TrialError, count_inversions, fit_log_error,
                                    run_error_rate, run_trial, sweep_threshold)
from infothresh.io import save_model
from infothresh.model import BinaryCorrelationModel, random_model
from infothresh.tree import chain, star


def _chain(p, rho):
    return BinaryCorrelationModel.from_correlations(chain(p), [rho] * (p - 1))


def test_config_validation():
    m = _chain(3, 0.5)
    with pytest.raises(ValueError):
        ExperimentConfig(m, (100, 50))
    with pytest.raises(ValueError):
        ExperimentConfig(m, (100,), trials=0)
    with pytest.raises(ValueError):
        ExperimentConfig(m, (100,), estimator="knn")
    with pytest.raises(ValueError):
        ExperimentConfig(m, (100,), channel=ChannelSpec.bsc(0.1, 4))
    with pytest.raises(ValueError):
        ExperimentConfig(random_model(chain(3), 3, 0), (100,), estimator="corrected_correlation")


def test_two_nodes_never_fail():
    curve = run_error_rate(ExperimentConfig(_chain(2, 0.1), (1, 5), trials=3))
    assert [pt.failures for pt in curve.points] == [0, 0]
    assert curve.i_threshold is None


def test_csv_columns_and_stderr():
    curve = run_error_rate(ExperimentConfig(_chain(4, 0.2), (100, 400), trials=40, master_seed=3))
    lines = curve.to_csv().splitlines()
    assert lines[0].split(",") == list(COLUMNS)
    for line, pt in zip(lines[1:], curve.points):
        fields = line.split(",")
        rate = float(fields[3])
        assert rate == pt.failures / pt.trials
        assert abs(float(fields[4]) - math.sqrt(rate * (1 - rate) / pt.trials)) < 1e-12
        assert fields[6] == ""
    assert "\t" in curve.to_csv("\t")


def test_thread_count_does_not_matter():
    cfg = ExperimentConfig(_chain(5, 0.15), (200, 800), trials=30, master_seed=11,
                           channel=ChannelSpec.bsc(0.05, 5))
    a = run_error_rate(cfg, threads=1).to_csv()
    assert run_error_rate(cfg, threads=4).to_csv() == a
    assert run_error_rate(cfg, threads=7).to_csv() == a


def test_aggregation_audit():
    cfg = ExperimentConfig(_chain(4, 0.15), (300,), trials=25, master_seed=5)
    curve = run_error_rate(cfg, keep_outcomes=True)
    assert curve.points[0].failures == sum(curve.outcomes.values())
    for k in (0, 7, 24):
        assert run_trial(cfg, 300, k) == curve.outcomes[(300, k)]


def test_trial_error_names_the_trial(monkeypatch):
    def boom(*args, **kwargs):
        raise RuntimeError("bad")

    monkeypatch.setattr(experiments, "learn", boom)
    with pytest.raises(TrialError) as info:
        run_error_rate(ExperimentConfig(_chain(3, 0.5), (10,), trials=2))
    assert (info.value.n, info.value.k) == (10, 0)


def test_config_from_toml(tmp_path):
    save_model(_chain(3, 0.7), tmp_path / "m.toml")
    (tmp_path / "exp.toml").write_text(
        'n_grid = [100, 200]\ntrials = 5\nmaster_seed = 2\nestimator = "corrected_correlation"\n'
        '[model]\nfile = "m.toml"\n[channel]\nkind = "bsc"\nq = [0.01, 0.3, 0.3]\n')
    cfg = ExperimentConfig.load(tmp_path / "exp.toml")
    assert cfg.n_grid == (100, 200)
    assert cfg.channel.flip_probabilities() == [0.01, 0.3, 0.3]
    assert cfg.model.tree == chain(3)
    cfg2 = ExperimentConfig.from_dict({"n_grid": [10], "model": {"shape": "star", "p": 4, "correlations": 0.4}})
    assert cfg2.model.tree == star(4)


def test_stronger_model_fails_less():
    cfg = ExperimentConfig(_chain(6, 0.1), (2000,), trials=300, master_seed=1)
    rows = sweep_threshold(cfg, [_chain(6, 0.08), _chain(6, 0.12)])
    weak, strong = rows
    assert strong.i_threshold > weak.i_threshold
    assert strong.error_rate <= weak.error_rate


def test_error_rate_decreases_with_n():
    curve = run_error_rate(ExperimentConfig(_chain(6, 0.1), (500, 1000, 2000, 4000, 8000), trials=200))
    assert count_inversions(curve.error_rates()) <= 1
    assert curve.error_rates()[-1] < curve.error_rates()[0]


def test_fit_log_error():
    rows = [experiments.SweepRow(t, 100, math.exp(-3 - 50 * t * t), 1, 1) for t in (0.1, 0.2, 0.3, 0.4)]
    fit = fit_log_error(rows, 100)
    assert fit.slope == pytest.approx(-50)
    assert fit.r_squared == pytest.approx(1.0)
    with pytest.raises(ValueError):
        fit_log_error(rows, 200)


def test_sweep_requires_same_p():
    cfg = ExperimentConfig(_chain(3, 0.5), (10,), trials=1)
    with pytest.raises(ValueError):
        sweep_threshold(cfg, [_chain(3, 0.5), _chain(4, 0.5)])


def test_count_inversions():
    assert count_inversions([5, 4, 4, 3]) == 0
    assert count_inversions([5, 6, 4, 5]) == 2
