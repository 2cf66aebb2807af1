"""Frequency estimation of finite distributions."""
import math

import numpy as np

from utils.exceptions import DomainError


class DiscreteEstimatorState(object):
    """Sample counts over a declared finite support 0..size-1."""

    def __init__(self, size):
        if size < 1:
            raise DomainError("support must have at least one label")
        self.counts = np.zeros(int(size), dtype=np.int64)
        self.m = 0

    @property
    def size(self):
        return self.counts.size

    def copy(self):
        state = DiscreteEstimatorState(self.size)
        state.counts[:] = self.counts
        state.m = self.m
        return state

    def __repr__(self):
        return "<DiscreteEstimatorState m={} counts={}>".format(self.m, self.counts.tolist())


def update_discrete(state, sample):
    """Record one sample in place and return the state."""
    if not isinstance(sample, (int, np.integer)) or not 0 <= sample < state.size:
        raise DomainError("label {!r} is not in the declared support".format(sample))
    state.counts[sample] += 1
    state.m += 1
    return state


def discrete_mass(state):
    """Empirical mass; uniform over the support before any sample arrives."""
    if state.m == 0:
        return np.full(state.size, 1.0 / state.size)
    return state.counts / float(state.m)


def discrete_l1_error(p, p_hat):
    """Return ||p - p_hat||_1."""
    return float(np.abs(np.asarray(p, dtype=float) - np.asarray(p_hat, dtype=float)).sum())


def weissman_threshold(a, m, epsilon):
    """Deviation t with P(||p - p_hat_m||_1 >= t) <= epsilon for support size a.

    ln(2^a - 2) is computed as a ln 2 + log1p(-2^(1-a)) so large supports do
    not overflow.
    """
    if a < 2:
        raise DomainError("support size must be at least 2, got {}".format(a))
    if m < 1:
        raise DomainError("need at least one sample, got {}".format(m))
    if not 0 < epsilon < 1:
        raise DomainError("tail probability must lie in (0, 1), got {}".format(epsilon))
    log_count = a * math.log(2.0) + math.log1p(-math.pow(2.0, 1 - a))
    return math.sqrt(2.0 * (log_count - math.log(epsilon)) / m)
