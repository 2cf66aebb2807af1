"""Monte-Carlo regret estimation over a ladder of horizons.

For each horizon T the experiment runs ``n_estimations`` batches of
``n_trials`` trials. Every batch mean is one estimate of the expected
accumulated reward; the regret and its confidence interval come from the
spread of those batch means.
"""
import logging
import math
import time
from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor

import numpy as np
from django.conf import settings as django_settings
from scipy import stats

from core_model.instance import fluid_value
from policy.policies import FeedbackMode, PolicySpec
from utils.exceptions import DomainError
from utils.streams import trial_seed

from .trials import run_trial

logger = logging.getLogger(__name__)

CONFIDENCE = 0.99


class HorizonResult(
    namedtuple(
        "HorizonResult",
        ["T", "fluid_value", "batch_means", "mean_regret", "ci99_halfwidth"],
    )
):
    """Regret estimate at one horizon."""

    __slots__ = ()

    @property
    def mean_reward(self):
        return float(np.mean(self.batch_means))


class RegretReport(object):
    """Per-horizon regret estimates plus the protocol that produced them."""

    def __init__(self, mode, horizons, n_estimations, n_trials, master_seed, t_quantile=False, notes=None):
        self.mode = mode
        self.horizons = list(horizons)
        self.n_estimations = n_estimations
        self.n_trials = n_trials
        self.master_seed = master_seed
        self.t_quantile = t_quantile
        self.notes = list(notes or [])
        self.slope = None

    def __repr__(self):
        return "<RegretReport {} horizons={}>".format(
            self.mode.value, [h.T for h in self.horizons]
        )

    def __eq__(self, other):
        if not isinstance(other, RegretReport):
            return NotImplemented
        return (
            self.mode == other.mode
            and self.horizons == other.horizons
            and self.n_estimations == other.n_estimations
            and self.n_trials == other.n_trials
            and self.master_seed == other.master_seed
            and self.slope == other.slope
        )

    def horizon(self, T):
        for result in self.horizons:
            if result.T == T:
                return result
        raise KeyError(T)


def confidence_halfwidth(values, confidence=CONFIDENCE, t_quantile=False):
    """Half-width q * s / sqrt(n) of the two-sided interval around mean(values).

    q is the normal quantile, or Student-t with n - 1 degrees of freedom
    when ``t_quantile`` is set; s uses the n - 1 denominator.
    """
    values = np.asarray(values, dtype=float)
    n = values.size
    if n < 2:
        raise DomainError("a confidence interval needs at least 2 batch means")
    upper = 1.0 - (1.0 - confidence) / 2.0
    q = stats.t.ppf(upper, n - 1) if t_quantile else stats.norm.ppf(upper)
    return float(q * values.std(ddof=1) / math.sqrt(n))


def run_batch(instance, mode, policy_spec, master_seed, batch, n_trials):
    """Accumulated rewards of the trials of one batch, in trial order."""
    rewards = []
    for trial in range(n_trials):
        seed = trial_seed(master_seed, instance.T, batch, trial)
        rewards.append(run_trial(instance, mode, policy_spec, seed).accumulated_reward)
    return rewards


def _serial(instance, mode, policy_spec, master_seed, n_estimations, n_trials):
    return [
        run_batch(instance, mode, policy_spec, master_seed, batch, n_trials)
        for batch in range(n_estimations)
    ]


def _pooled(instance, mode, policy_spec, master_seed, n_estimations, n_trials, workers):
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(run_batch, instance, mode, policy_spec, master_seed, batch, n_trials)
            for batch in range(n_estimations)
        ]
        return [future.result() for future in futures]


def run_experiment(
    instance,
    mode,
    horizons,
    n_estimations,
    n_trials,
    master_seed,
    policy_spec=None,
    workers=None,
    t_quantile=False,
):
    """Estimate the regret of ``policy_spec`` on ``instance`` at every horizon.

    Trials are seeded by (master_seed, T, batch, trial), so serial and pooled
    runs produce identical reports.
    """
    if not isinstance(mode, FeedbackMode):
        mode = FeedbackMode(mode)
    if n_estimations < 2:
        raise DomainError("need at least 2 estimations, got {}".format(n_estimations))
    if n_trials < 1:
        raise DomainError("need at least 1 trial per estimation, got {}".format(n_trials))
    horizons = [int(T) for T in horizons]
    if not horizons or horizons != sorted(set(horizons)):
        raise DomainError("horizons must be distinct and ascending, got {}".format(horizons))
    if policy_spec is None:
        policy_spec = PolicySpec.from_settings()
    if workers is None:
        workers = getattr(django_settings, "RESOLVE_WORKERS", 1)

    results = []
    for T in horizons:
        scaled = instance.with_horizon(T)
        started = time.time()
        benchmark = fluid_value(scaled)
        if workers > 1:
            batches = _pooled(scaled, mode, policy_spec, master_seed, n_estimations, n_trials, workers)
        else:
            batches = _serial(scaled, mode, policy_spec, master_seed, n_estimations, n_trials)

        batch_means = tuple(float(np.mean(rewards)) for rewards in batches)
        mean_regret = benchmark - float(np.mean(batch_means))
        halfwidth = confidence_halfwidth(batch_means, t_quantile=t_quantile)
        results.append(HorizonResult(T, benchmark, batch_means, mean_regret, halfwidth))
        logger.info(
            "T=%d %s: fluid %.3f regret %.3f +/- %.3f (%.1fs)",
            T,
            mode.value,
            benchmark,
            mean_regret,
            halfwidth,
            time.time() - started,
        )

    report = RegretReport(mode, results, n_estimations, n_trials, master_seed, t_quantile=t_quantile)
    try:
        report.slope = fit_loglog_slope(report)
    except DomainError as e:
        report.notes.append("no slope: {}".format(e))
    return report


def loglog_slope(horizons, regrets):
    """OLS slope of log(regret) on log(T) and the horizons left out.

    Horizons with nonpositive regret have no logarithm and are excluded.
    """
    horizons = np.asarray(horizons, dtype=float)
    regrets = np.asarray(regrets, dtype=float)
    keep = regrets > 0
    excluded = [int(T) for T in horizons[~keep]]
    if keep.sum() < 2:
        raise DomainError("need at least 2 horizons with positive regret, got {}".format(int(keep.sum())))
    slope, _ = np.polyfit(np.log(horizons[keep]), np.log(regrets[keep]), 1)
    return float(slope), excluded


def fit_loglog_slope(report):
    """Global log-log slope of mean regret against T; exclusions go to ``report.notes``."""
    slope, excluded = loglog_slope([h.T for h in report.horizons], [h.mean_regret for h in report.horizons])
    for T in excluded:
        note = "T={} excluded from slope fit: nonpositive mean regret".format(T)
        if note not in report.notes:
            report.notes.append(note)
    return slope


def check_regret_sanity(report):
    """Horizons whose mean regret is below minus its CI half-width."""
    return [h for h in report.horizons if h.mean_regret < -h.ci99_halfwidth]
