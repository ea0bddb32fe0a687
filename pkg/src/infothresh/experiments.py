"""Monte Carlo estimates of P(learned tree != true tree).

Every trial (n, k) draws from its own generator seeded with
``numpy.random.SeedSequence([master_seed, n, k])``, so results do not depend
on scheduling or on the number of worker threads.
"""

from __future__ import annotations

import csv
import io as _io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
from scipy import stats

from .channels import ChannelSpec, apply, preprocess_binary_correlations
from .chow_liu import chow_liu, chow_liu_from_correlations
from .io import load_model, load_toml, model_from_dict
from .model import DiscreteTreeModel, sample
from .thresholds import UndefinedThresholdError, information_threshold, noisy_information_threshold

ESTIMATORS = ("plugin_mi", "corrected_correlation")
COLUMNS = ("n", "trials", "failures", "error_rate", "stderr", "i_threshold", "i_threshold_noisy")


class TrialError(RuntimeError):
    def __init__(self, n: int, k: int, cause: BaseException):
        super().__init__(f"trial failed at n={n}, k={k}: {cause!r}")
        self.n, self.k = n, k


@dataclass(frozen=True, eq=False)
class ExperimentConfig:
    model: DiscreteTreeModel
    n_grid: tuple[int, ...]
    trials: int = 500
    master_seed: int = 0
    channel: ChannelSpec | None = None
    estimator: str = "plugin_mi"
    output: str | None = None

    def __post_init__(self):
        grid = tuple(int(n) for n in self.n_grid)
        if not grid or any(n < 1 for n in grid) or any(a >= b for a, b in zip(grid, grid[1:])):
            raise ValueError(f"n_grid must be strictly ascending positive integers, got {grid}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.estimator not in ESTIMATORS:
            raise ValueError(f"unknown estimator {self.estimator!r}; expected one of {ESTIMATORS}")
        if self.channel is not None and self.channel.p != self.model.p:
            raise ValueError("channel and model disagree on p")
        if self.estimator == "corrected_correlation" and tuple(self.model.symbols) != (-1, 1):
            raise ValueError("corrected_correlation needs a +-1 model")
        object.__setattr__(self, "n_grid", grid)

    @classmethod
    def from_dict(cls, doc: dict, base_dir: Path | str = ".") -> "ExperimentConfig":
        """Fields as in the dataclass; ``model`` is a table (inline or ``file = ...``),
        ``channel`` a table with ``kind`` and ``q``."""
        mdoc = doc["model"]
        if "file" in mdoc:
            model = load_model(Path(base_dir) / mdoc["file"])
        else:
            model = model_from_dict(mdoc)
        channel = None
        if "channel" in doc:
            c = doc["channel"]
            channel = ChannelSpec.from_name(c["kind"], c.get("q", 0.0), model.p)
        return cls(model=model, n_grid=tuple(doc["n_grid"]), trials=int(doc.get("trials", 500)),
                   master_seed=int(doc.get("master_seed", 0)), channel=channel,
                   estimator=doc.get("estimator", "plugin_mi"), output=doc.get("output"))

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        path = Path(path)
        return cls.from_dict(load_toml(path), path.parent)


@dataclass(frozen=True)
class CurvePoint:
    n: int
    trials: int
    failures: int

    @property
    def error_rate(self) -> float:
        return self.failures / self.trials

    @property
    def stderr(self) -> float:
        r = self.error_rate
        return math.sqrt(r * (1 - r) / self.trials)


@dataclass(frozen=True)
class ErrorCurve:
    points: tuple[CurvePoint, ...]
    i_threshold: float | None = None
    i_threshold_noisy: float | None = None
    outcomes: dict = field(default_factory=dict, repr=False, compare=False)

    def error_rates(self) -> np.ndarray:
        return np.array([pt.error_rate for pt in self.points])

    def to_csv(self, delimiter: str = ",") -> str:
        buf = _io.StringIO()
        w = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
        w.writerow(COLUMNS)
        it = "" if self.i_threshold is None else repr(self.i_threshold)
        itn = "" if self.i_threshold_noisy is None else repr(self.i_threshold_noisy)
        for pt in self.points:
            w.writerow([pt.n, pt.trials, pt.failures, repr(pt.error_rate), repr(pt.stderr), it, itn])
        return buf.getvalue()


def trial_rng(master_seed: int, n: int, k: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([master_seed, n, k]))


def learn(data, estimator: str = "plugin_mi", channel: ChannelSpec | None = None):
    """Chow-Liu on raw plug-in MI, or on correlations corrected for known flips."""
    if estimator == "plugin_mi":
        return chow_liu(data)
    if estimator == "corrected_correlation":
        q = channel.flip_probabilities() if channel is not None else 0.0
        return chow_liu_from_correlations(preprocess_binary_correlations(data, q))
    raise ValueError(f"unknown estimator {estimator!r}")


def run_trial(config: ExperimentConfig, n: int, k: int) -> int:
    """1 if the learned tree differs from the true one, else 0."""
    rng = trial_rng(config.master_seed, n, k)
    data = sample(config.model, n, rng)
    if config.channel is not None:
        data = apply(config.channel, data, rng, symbols=config.model.symbols)
    tree = learn(data, config.estimator, config.channel)
    return int(tree.edge_set() != config.model.tree.edge_set())


def _thresholds(config: ExperimentConfig):
    try:
        it = information_threshold(config.model).value
    except UndefinedThresholdError:
        return None, None
    itn = None
    if config.channel is not None:
        itn = noisy_information_threshold(config.model, config.channel).value
    return it, itn


def run_error_rate(config: ExperimentConfig, threads: int = 1, keep_outcomes: bool = False) -> ErrorCurve:
    tasks = [(n, k) for n in config.n_grid for k in range(config.trials)]

    def work(task):
        n, k = task
        try:
            return run_trial(config, n, k)
        except Exception as exc:  # noqa: BLE001 - re-raised with the trial id
            raise TrialError(n, k, exc) from exc

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, tasks))
    else:
        results = [work(t) for t in tasks]
    outcomes = dict(zip(tasks, results))
    points = tuple(
        CurvePoint(n, config.trials, sum(outcomes[(n, k)] for k in range(config.trials)))
        for n in sorted(config.n_grid))
    it, itn = _thresholds(config)
    return ErrorCurve(points, it, itn, outcomes if keep_outcomes else {})


@dataclass(frozen=True)
class SweepRow:
    i_threshold: float
    n: int
    error_rate: float
    failures: int
    trials: int


def sweep_threshold(config: ExperimentConfig, models, threads: int = 1) -> list[SweepRow]:
    """One error curve per model (all with the same p), joined with its threshold."""
    models = list(models)
    if len({m.p for m in models}) > 1:
        raise ValueError("all models in a sweep must share p")
    rows = []
    for m in models:
        curve = run_error_rate(replace(config, model=m), threads=threads)
        for pt in curve.points:
            rows.append(SweepRow(curve.i_threshold, pt.n, pt.error_rate, pt.failures, pt.trials))
    return rows


@dataclass(frozen=True)
class LogLinearFit:
    slope: float
    intercept: float
    r_squared: float
    points: int


def fit_log_error(rows, n: int) -> LogLinearFit:
    """Least-squares fit of ln(error_rate) on threshold^2 at one n (zero rates dropped)."""
    sel = [r for r in rows if r.n == n and r.error_rate > 0]
    if len(sel) < 3:
        raise ValueError(f"need at least 3 nonzero error rates at n={n}, have {len(sel)}")
    x = np.array([r.i_threshold ** 2 for r in sel])
    y = np.log([r.error_rate for r in sel])
    res = stats.linregress(x, y)
    return LogLinearFit(float(res.slope), float(res.intercept), float(res.rvalue ** 2), len(sel))


def count_inversions(rates) -> int:
    """Number of adjacent increases in a sequence meant to be non-increasing."""
    rates = list(rates)
    return sum(1 for a, b in zip(rates, rates[1:]) if b > a)
