"""Kernel density estimation on [0,1]^d."""
from collections import namedtuple

import numpy as np

from utils.exceptions import DomainError

from .kernels import GAUSSIAN4

# pairwise kernel evaluations per chunk
CHUNK_SIZE = 2 ** 22

DensityValue = namedtuple("DensityValue", ["value", "cold_start"])


class KdeEstimatorState(object):
    """Sample buffer plus the kernel and bandwidth policy (beta, d, c_h)."""

    def __init__(self, dimension, kernel=GAUSSIAN4, beta=2, bandwidth_constant=1.0, capacity=64):
        if dimension < 1:
            raise DomainError("dimension must be >= 1")
        self.dimension = int(dimension)
        self.kernel = kernel
        self.beta = int(beta)
        self.bandwidth_constant = float(bandwidth_constant)
        self._buffer = np.empty((max(int(capacity), 1), self.dimension))
        self.m = 0

    @property
    def samples(self):
        return self._buffer[: self.m]

    def copy(self):
        state = KdeEstimatorState(
            self.dimension, self.kernel, self.beta, self.bandwidth_constant, capacity=max(self.m, 1)
        )
        state._buffer[: self.m] = self.samples
        state.m = self.m
        return state

    def bandwidth(self):
        """Bandwidth for the current sample count, None during cold start."""
        if self.m < 2:
            return None
        return default_bandwidth(self.m, self.beta, self.dimension, self.bandwidth_constant)

    def __repr__(self):
        return "<KdeEstimatorState d={} m={} kernel={}>".format(self.dimension, self.m, self.kernel.name)


def update_kde(state, sample):
    """Append one point of [0,1]^d in place and return the state."""
    point = np.asarray(sample, dtype=float).reshape(-1)
    if point.size != state.dimension:
        raise DomainError("expected a {}-dimensional point, got {!r}".format(state.dimension, sample))
    if np.any(point < 0.0) or np.any(point > 1.0):
        raise DomainError("sample {!r} lies outside [0,1]^{}".format(sample, state.dimension))
    if state.m == state._buffer.shape[0]:
        grown = np.empty((2 * state._buffer.shape[0], state.dimension))
        grown[: state.m] = state._buffer[: state.m]
        state._buffer = grown
    state._buffer[state.m] = point
    state.m += 1
    return state


def default_bandwidth(m, beta, d, c_h=1.0):
    """Return h = c_h * m^(-1/(2 beta + d))."""
    if m < 2:
        raise DomainError("bandwidth rule needs m >= 2, got {}".format(m))
    return c_h * m ** (-1.0 / (2 * beta + d))


def _kernel_sums(kernel, points, centers, weights, h):
    """sum_i weights_i K(||x - c_i|| / h) for every row x of ``points``."""
    total = np.zeros(points.shape[0])
    step = max(1, CHUNK_SIZE // max(points.shape[0], 1))
    for start in range(0, centers.shape[0], step):
        block = centers[start:start + step]
        distance = np.sqrt(((points[:, None, :] - block[None, :, :]) ** 2).sum(axis=2))
        total += kernel(distance / h).dot(weights[start:start + step])
    return total


def kde_values(state, points, h):
    """Raw estimator (1/m) sum_i h^-d K(||x - X_i|| / h) at each row of ``points``."""
    if h <= 0:
        raise DomainError("bandwidth must be positive, got {}".format(h))
    points = np.asarray(points, dtype=float).reshape(-1, state.dimension)
    if state.m == 0:
        return np.ones(points.shape[0])
    sums = _kernel_sums(state.kernel, points, state.samples, np.ones(state.m), h)
    return sums / (state.m * h ** state.dimension)


def kde_density(state, x, h):
    """Estimated density at one point; uniform density 1 with cold_start set when m = 0."""
    if state.m == 0:
        return DensityValue(1.0, True)
    return DensityValue(float(kde_values(state, x, h)[0]), False)


def grid_density(state, nodes, weights, h=None):
    """KDE over quadrature nodes, clamped at 0 and renormalised to integrate to 1.

    When there are more samples than nodes, samples are first snapped to
    their nearest node (equidistant tensor grid assumed) and the estimator
    runs over the occupied nodes with their counts.
    """
    weights = np.asarray(weights, dtype=float)
    if h is None:
        h = state.bandwidth()
    if h is None:
        values = np.ones(nodes.shape[0])
    elif state.m > nodes.shape[0]:
        per_axis = int(round(nodes.shape[0] ** (1.0 / state.dimension)))
        index = np.rint(state.samples * (per_axis - 1)).astype(int)
        flat = np.ravel_multi_index(tuple(index.T), (per_axis,) * state.dimension)
        counts = np.bincount(flat, minlength=nodes.shape[0])
        occupied = np.nonzero(counts)[0]
        sums = _kernel_sums(state.kernel, nodes, nodes[occupied], counts[occupied].astype(float), h)
        values = sums / (state.m * h ** state.dimension)
    else:
        values = kde_values(state, nodes, h)
    values = np.clip(values, 0.0, None)
    total = float(np.dot(weights, values))
    if total <= 0:
        return np.ones(nodes.shape[0])
    return values / total


def sup_grid_error(density, state, h, grid):
    """Return max over ``grid`` of |p(x) - p_hat(x)| for a true density callable."""
    grid = np.asarray(grid, dtype=float).reshape(-1, state.dimension)
    return float(np.max(np.abs(density(grid) - kde_values(state, grid, h))))


def extend_kde(state, samples):
    """Append a batch of points in place and return the state."""
    samples = np.asarray(samples, dtype=float).reshape(-1, state.dimension)
    if np.any(samples < 0.0) or np.any(samples > 1.0):
        raise DomainError("samples must lie inside [0,1]^{}".format(state.dimension))
    needed = state.m + samples.shape[0]
    if needed > state._buffer.shape[0]:
        grown = np.empty((max(needed, 2 * state._buffer.shape[0]), state.dimension))
        grown[: state.m] = state._buffer[: state.m]
        state._buffer = grown
    state._buffer[state.m:needed] = samples
    state.m = needed
    return state
