"""Statistical suites for the estimators (run by ``manage.py esttest``)."""
import logging

import numpy as np

from core_model.spaces import BetaProductDensity

from .discrete import weissman_threshold
from .kde import KdeEstimatorState, default_bandwidth, extend_kde, sup_grid_error
from .kernels import kernel_by_name

logger = logging.getLogger(__name__)

WEISSMAN_COLUMNS = ["rep", "m", "l1_error", "threshold", "violated"]
KDE_RATE_COLUMNS = ["rep", "m", "h", "sup_error"]

DEFAULT_ATOMS = (0.1, 0.2, 0.3, 0.4)
# Beta(3, 3) extended by zero has a Lipschitz first derivative on R
RATE_TEST_SHAPES = ((3.0, 3.0),)


class SuiteResult(object):
    """Per-repetition rows plus the pass/fail verdict of a suite."""

    def __init__(self, name, columns, rows, passed, summary):
        self.name = name
        self.columns = columns
        self.rows = rows
        self.passed = passed
        self.summary = summary

    def __repr__(self):
        return "<SuiteResult {} passed={}>".format(self.name, self.passed)


def weissman_suite(a=4, m=1000, epsilon=0.1, reps=2000, seed=0, slack=0.12, p=None):
    """Frequency of L1 deviations beyond the Weissman threshold over ``reps`` runs.

    Passes when the empirical violation rate is at most ``slack``
    (epsilon plus binomial slack).
    """
    if p is None:
        p = DEFAULT_ATOMS if a == len(DEFAULT_ATOMS) else np.arange(1, a + 1)
    p = np.asarray(p, dtype=float)
    if p.size != a:
        raise ValueError("need {} atoms, got {}".format(a, p.size))
    p = p / p.sum()
    rng = np.random.default_rng(seed)
    threshold = weissman_threshold(a, m, epsilon)

    counts = rng.multinomial(m, p, size=reps)
    errors = np.abs(counts / float(m) - p).sum(axis=1)
    violated = errors >= threshold
    rows = [
        {"rep": rep, "m": m, "l1_error": float(err), "threshold": threshold, "violated": int(v)}
        for rep, (err, v) in enumerate(zip(errors, violated))
    ]
    rate = float(violated.mean()) if reps else 0.0
    summary = {"threshold": threshold, "violation_rate": rate, "allowed": slack, "reps": reps}
    logger.info("weissman a=%d m=%d: violation rate %.4f (allowed %.3f)", a, m, rate, slack)
    return SuiteResult("weissman", WEISSMAN_COLUMNS, rows, rate <= slack, summary)


def kde_rate_suite(ms=(100, 10000), reps=50, seed=0, kernel="gaussian4", c_h=1.0, beta=2, grid_points=201):
    """Median sup-grid KDE error for each sample size in ``ms``.

    Passes when the median error strictly decreases along ``ms``.
    """
    ms = sorted(int(m) for m in ms)
    kernel = kernel_by_name(kernel)
    density = BetaProductDensity(RATE_TEST_SHAPES)
    grid = np.linspace(0.0, 1.0, grid_points)
    rng = np.random.default_rng(seed)

    rows = []
    medians = {}
    for m in ms:
        h = default_bandwidth(m, beta, 1, c_h)
        errors = []
        for rep in range(reps):
            state = KdeEstimatorState(1, kernel=kernel, beta=beta, bandwidth_constant=c_h, capacity=m)
            extend_kde(state, density.sample(rng, m))
            error = sup_grid_error(density.pdf, state, h, grid)
            errors.append(error)
            rows.append({"rep": rep, "m": m, "h": h, "sup_error": error})
        medians[m] = float(np.median(errors)) if errors else float("nan")
        logger.info("kde-rate m=%d h=%.4f median sup error %.5f", m, h, medians[m])

    ordered = [medians[m] for m in ms]
    passed = bool(reps) and all(later < earlier for earlier, later in zip(ordered, ordered[1:]))
    summary = {"median_sup_error": medians, "kernel": kernel.name, "reps": reps}
    return SuiteResult("kde-rate", KDE_RATE_COLUMNS, rows, passed, summary)
