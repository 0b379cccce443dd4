"""Seeded Monte Carlo validation of the closed-form bounds.

Each trial builds one random fusion frame, measures its tightness and
pair angles, and checks them against the windows the theory promises.
Trial ``i`` always uses ``derive_stream(master_seed, i)``, so results
are a pure function of the configuration: running with one worker or
many, or rerunning any subset of trials, produces identical numbers.

A trial can fail (degenerate draw, eigensolver trouble); failures are
recorded and excluded from aggregates.  More than 1% failed trials
aborts the experiment, since the aggregates would no longer say much.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .angles import angle_report, equiangular_window, window_check
from .bounds import (
    all_pairs_failure,
    chi2_lower_tail,
    chi2_upper_tail,
    delta_to_epsilon_angle,
    delta_to_epsilon_tight,
    is_vacuous,
    tightness_failure,
)
from .errors import ConfigInvalidError, FrameToolError, TrialFailureError
from .frames import FusionFrame, frame_bounds_from_operator, frame_operator
from .rng import derive_stream, random_subspace

_CONSERVATION_RTOL = 1e-8
_WELCH_SLACK = 1e-9
_FAILURE_BUDGET = 0.01
_CHI2_BLOCK = 4096  # even, so chunking never hits the odd-length discard

CSV_HEADER = "trial,eps_tight,frame_lower,frame_upper,hs_min,hs_max,hs_mean,welch_violated,window_pass"

_CONFIG_KEYS = ("dim", "subspace_dim", "count", "delta", "trials", "master_seed", "weights")


@dataclass(frozen=True)
class ExperimentConfig:
    """Parameters of one Monte Carlo experiment.

    ``weights`` is optional; omitted means unit weights.  The invariants
    ``subspace_dim <= dim <= count * subspace_dim`` keep both tightness
    and pair statistics meaningful for every trial.
    """

    dim: int
    subspace_dim: int
    count: int
    delta: float
    trials: int
    master_seed: int
    weights: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        for name in ("dim", "subspace_dim", "count", "trials"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigInvalidError(f"{name} must be a positive integer, got {value!r}")
        if self.count < 2:
            raise ConfigInvalidError(f"count must be at least 2, got {self.count}")
        if not self.subspace_dim <= self.dim <= self.count * self.subspace_dim:
            raise ConfigInvalidError(
                "need subspace_dim <= dim <= count*subspace_dim, got "
                f"subspace_dim={self.subspace_dim}, dim={self.dim}, "
                f"count*subspace_dim={self.count * self.subspace_dim}"
            )
        if not isinstance(self.delta, float) or not 0.0 < self.delta < 1.0:
            raise ConfigInvalidError(f"delta must be a float in (0, 1), got {self.delta!r}")
        if not isinstance(self.master_seed, int) or isinstance(self.master_seed, bool):
            raise ConfigInvalidError(f"master_seed must be an integer, got {self.master_seed!r}")
        if self.weights is not None:
            w = tuple(float(x) for x in self.weights)
            if len(w) != self.count:
                raise ConfigInvalidError(
                    f"{len(w)} weights for count={self.count} subspaces"
                )
            if not all(math.isfinite(x) and x > 0.0 for x in w):
                raise ConfigInvalidError("weights must be positive and finite")
            object.__setattr__(self, "weights", w)

    @classmethod
    def from_dict(cls, data) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ConfigInvalidError("config must be a JSON object")
        unknown = sorted(set(data) - set(_CONFIG_KEYS))
        if unknown:
            raise ConfigInvalidError(f"unknown config keys: {', '.join(unknown)}")
        missing = [k for k in _CONFIG_KEYS[:-1] if k not in data]
        if missing:
            raise ConfigInvalidError(f"missing config keys: {', '.join(missing)}")
        raw = dict(data)
        if "delta" in raw:
            raw["delta"] = float(raw["delta"])
        weights = raw.get("weights")
        if weights is not None:
            if not isinstance(weights, list):
                raise ConfigInvalidError("weights must be an array")
            raw["weights"] = tuple(float(x) for x in weights)
        return cls(**raw)

    def to_dict(self) -> dict:
        out = {
            "dim": self.dim,
            "subspace_dim": self.subspace_dim,
            "count": self.count,
            "delta": self.delta,
            "trials": self.trials,
            "master_seed": self.master_seed,
        }
        if self.weights is not None:
            out["weights"] = list(self.weights)
        return out


@dataclass(frozen=True)
class TrialResult:
    """Measurements of a single sampled frame."""

    trial_index: int
    eps_tight: float
    frame_lower: float
    frame_upper: float
    hs_min: float
    hs_max: float
    hs_mean: float
    welch_violated: bool
    window_pass: bool


def run_trial(config: ExperimentConfig, trial_index: int, subspace_sampler=None) -> TrialResult:
    """Run one trial on its own derived stream.

    ``subspace_sampler(stream, dim, subspace_dim)`` can be substituted
    to study other subspace distributions with the same harness.
    """
    if trial_index < 0:
        raise ConfigInvalidError(f"trial_index must be nonnegative, got {trial_index}")
    sampler = random_subspace if subspace_sampler is None else subspace_sampler
    stream = derive_stream(config.master_seed, trial_index)
    subspaces = tuple(
        sampler(stream, config.dim, config.subspace_dim) for _ in range(config.count)
    )
    weights = None if config.weights is None else np.asarray(config.weights)
    frame = FusionFrame(subspaces, weights)
    op = frame_operator(frame)
    fb = frame_bounds_from_operator(op)
    report = angle_report(frame)

    # tr(S^2) must equal the weighted sum over all ordered pairs of
    # tr(P_j P_l); a miss means the angle table and the operator disagree
    w2 = frame.weights * frame.weights
    paired = float(w2 @ report.pair_values @ w2)
    trace_sq = float(np.sum(op * op))
    if abs(paired - trace_sq) > _CONSERVATION_RTOL * max(1.0, abs(trace_sq)):
        raise TrialFailureError(
            f"trial {trial_index}: pair table sums to {paired!r} but "
            f"tr(S^2) = {trace_sq!r}"
        )

    window = equiangular_window(
        delta_to_epsilon_angle(config.delta), config.dim, config.subspace_dim
    )
    _, window_pass = window_check(report, window)
    off = report.pair_values[~np.eye(len(frame), dtype=bool)]
    welch_violated = bool(off.max() < report.welch - _WELCH_SLACK)
    return TrialResult(
        trial_index=trial_index,
        eps_tight=fb.epsilon_tight,
        frame_lower=fb.lower,
        frame_upper=fb.upper,
        hs_min=report.normalized_min,
        hs_max=report.normalized_max,
        hs_mean=report.normalized_mean,
        welch_violated=welch_violated,
        window_pass=window_pass,
    )


def _trial_task(args):
    config, index = args
    try:
        return index, run_trial(config, index), None
    except FrameToolError as exc:
        return index, None, (exc.tag, str(exc))


@dataclass(frozen=True)
class AggregateReport:
    """Experiment summary: empirical rates against their theory bounds.

    A dominance flag is true when the empirical failure rate stays below
    the (clamped) theoretical bound plus three binomial standard errors.
    ``stats`` maps each measured quantity to ``(mean, stddev)`` over the
    completed trials.
    """

    config: ExperimentConfig
    trials_completed: int
    failures: tuple[tuple[int, str], ...]
    eps_bound: float
    tightness_rate: float
    window_rate: float
    welch_rate: float
    theory_tightness: float
    theory_all_pairs: float
    tightness_dominated: bool
    window_dominated: bool
    stats: dict = field(default_factory=dict)
    results: tuple[TrialResult, ...] = ()


def _dominated(rate: float, bound: float, trials: int) -> bool:
    slack = 3.0 * math.sqrt(rate * (1.0 - rate) / trials)
    return rate <= min(1.0, bound) + slack


def run_experiment(config: ExperimentConfig, workers: int = 1) -> AggregateReport:
    """Run all trials and aggregate, with optional process parallelism.

    The report is identical for every ``workers`` value because trial
    streams are derived, not shared.
    """
    if workers < 1:
        raise ConfigInvalidError(f"workers must be positive, got {workers}")
    tasks = [(config, i) for i in range(config.trials)]
    if workers == 1:
        outcomes = [_trial_task(t) for t in tasks]
    else:
        chunk = max(1, config.trials // (workers * 4))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_trial_task, tasks, chunksize=chunk))
    outcomes.sort(key=lambda item: item[0])
    results = tuple(res for _, res, err in outcomes if err is None)
    failures = tuple((idx, err[0]) for idx, _, err in outcomes if err is not None)
    if len(failures) > _FAILURE_BUDGET * config.trials:
        raise TrialFailureError(
            f"{len(failures)} of {config.trials} trials failed, "
            f"over the {_FAILURE_BUDGET:.0%} budget"
        )
    return _aggregate(config, results, failures)


def _aggregate(
    config: ExperimentConfig,
    results: tuple[TrialResult, ...],
    failures: tuple[tuple[int, str], ...],
) -> AggregateReport:
    completed = len(results)
    if completed == 0:
        raise TrialFailureError("no trial completed; nothing to aggregate")
    eps_bound = delta_to_epsilon_tight(config.delta)
    tight_rate = sum(r.eps_tight > eps_bound for r in results) / completed
    window_rate = sum(not r.window_pass for r in results) / completed
    welch_rate = sum(r.welch_violated for r in results) / completed
    theory_tight = tightness_failure(
        config.dim, config.count, config.subspace_dim, config.delta
    ).total
    theory_pairs = all_pairs_failure(
        config.dim, config.count, config.subspace_dim, config.delta
    )
    stats = {}
    for name in ("eps_tight", "frame_lower", "frame_upper", "hs_min", "hs_max", "hs_mean"):
        values = np.array([getattr(r, name) for r in results])
        stats[name] = (float(values.mean()), float(values.std()))
    return AggregateReport(
        config=config,
        trials_completed=completed,
        failures=failures,
        eps_bound=eps_bound,
        tightness_rate=tight_rate,
        window_rate=window_rate,
        welch_rate=welch_rate,
        theory_tightness=theory_tight,
        theory_all_pairs=theory_pairs,
        tightness_dominated=_dominated(tight_rate, theory_tight, completed),
        window_dominated=_dominated(window_rate, theory_pairs, completed),
        stats=stats,
        results=results,
    )


def aggregate_to_dict(report: AggregateReport) -> dict:
    """JSON-ready form of an aggregate report (per-trial rows excluded)."""
    return {
        "config": report.config.to_dict(),
        "trials_completed": report.trials_completed,
        "failures": [[idx, tag] for idx, tag in report.failures],
        "eps_bound": report.eps_bound,
        "rates": {
            "tightness": report.tightness_rate,
            "window": report.window_rate,
            "welch_violation": report.welch_rate,
        },
        "theory": {
            "tightness": report.theory_tightness,
            "all_pairs": report.theory_all_pairs,
            "tightness_vacuous": is_vacuous(report.theory_tightness),
            "all_pairs_vacuous": is_vacuous(report.theory_all_pairs),
        },
        "dominance": {
            "tightness": report.tightness_dominated,
            "window": report.window_dominated,
        },
        "stats": {k: {"mean": m, "stddev": s} for k, (m, s) in report.stats.items()},
    }


def _format_float(x: float) -> str:
    return repr(float(x))


def write_trials_csv(results, path) -> None:
    """Write per-trial rows with shortest round-trip float formatting.

    The byte content depends only on the results, never on worker count
    or platform (newlines are always ``\\n``).
    """
    lines = [CSV_HEADER]
    for r in results:
        lines.append(
            ",".join(
                (
                    str(r.trial_index),
                    _format_float(r.eps_tight),
                    _format_float(r.frame_lower),
                    _format_float(r.frame_upper),
                    _format_float(r.hs_min),
                    _format_float(r.hs_max),
                    _format_float(r.hs_mean),
                    "true" if r.welch_violated else "false",
                    "true" if r.window_pass else "false",
                )
            )
        )
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("\n".join(lines) + "\n")


@dataclass(frozen=True)
class Chi2TailReport:
    """Empirical chi-square tail rates against the closed-form bounds."""

    dim: int
    delta: float
    trials: int
    master_seed: int
    upper_rate: float
    lower_rate: float
    upper_bound: float
    lower_bound: float
    upper_dominated: bool
    lower_dominated: bool


def chi2_draws(dim: int, trials: int, master_seed: int) -> np.ndarray:
    """``trials`` normalized chi-square values ``|g|^2 / dim``.

    Draws come from ``derive_stream(master_seed, 0)`` in blocks whose
    size never changes the values (the block length is always even).
    """
    if dim < 1 or trials < 1:
        raise ConfigInvalidError(
            f"dim and trials must be positive, got dim={dim}, trials={trials}"
        )
    stream = derive_stream(master_seed, 0)
    out = np.empty(trials)
    done = 0
    while done < trials:
        block = min(_CHI2_BLOCK, trials - done)
        z = stream.normals(block * dim).reshape(block, dim)
        out[done : done + block] = (z * z).sum(axis=1) / dim
        done += block
    return out


def run_chi2_experiment(
    dim: int, delta: float, trials: int, master_seed: int
) -> Chi2TailReport:
    """Measure both tail rates of ``chi2_dim / dim`` at tolerance ``delta``."""
    if not 0.0 < float(delta) < 1.0:
        raise ConfigInvalidError(f"delta must lie in (0, 1), got {delta}")
    values = chi2_draws(dim, trials, master_seed)
    upper_rate = float(np.mean(values >= 1.0 + delta))
    lower_rate = float(np.mean(values <= 1.0 / (1.0 + delta)))
    upper_bound = chi2_upper_tail(dim, delta)
    lower_bound = chi2_lower_tail(dim, delta)
    return Chi2TailReport(
        dim=dim,
        delta=float(delta),
        trials=trials,
        master_seed=master_seed,
        upper_rate=upper_rate,
        lower_rate=lower_rate,
        upper_bound=upper_bound,
        lower_bound=lower_bound,
        upper_dominated=_dominated(upper_rate, upper_bound, trials),
        lower_dominated=_dominated(lower_rate, lower_bound, trials),
    )
