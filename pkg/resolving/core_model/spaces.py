"""Context and external factor spaces."""
import numpy as np
from scipy import stats

from utils.exceptions import DomainError

MASS_TOLERANCE = 1e-12
DENSITY_TOLERANCE = 1e-3
DEFAULT_GRID_POINTS = 512


def _frozen(array):
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


def _check_mass(mass, what):
    if mass.ndim != 1 or mass.size == 0:
        raise DomainError("{} mass must be a non-empty vector".format(what))
    if np.any(mass < 0) or np.any(mass > 1):
        raise DomainError("{} mass entries must lie in [0, 1]".format(what))
    if abs(mass.sum() - 1.0) > MASS_TOLERANCE:
        raise DomainError(
            "{} mass sums to {!r}, expected 1".format(what, float(mass.sum()))
        )


# End corrections of the fourth order Gregory rule; interior weights are 1.
GREGORY_ENDS = np.array([17.0, 59.0, 43.0, 49.0]) / 48.0


def _axis_weights(points_per_axis):
    weights = np.full(points_per_axis, 1.0 / (points_per_axis - 1))
    if points_per_axis >= 2 * GREGORY_ENDS.size:
        weights[:GREGORY_ENDS.size] *= GREGORY_ENDS
        weights[-GREGORY_ENDS.size:] *= GREGORY_ENDS[::-1]
    else:
        weights[[0, -1]] *= 0.5
    return weights


def quadrature_grid(dimension, points_per_axis=DEFAULT_GRID_POINTS):
    """Return (nodes, weights) of a tensor quadrature rule on [0,1]^dimension.

    Each axis uses the endpoint corrected trapezoid rule, exact for cubics
    and O(h^4) on smooth integrands; grids with fewer than eight points per
    axis fall back to the plain trapezoid rule.
    """
    if points_per_axis < 2:
        raise DomainError("quadrature needs at least 2 points per axis")
    axis = np.linspace(0.0, 1.0, points_per_axis)
    axis_weights = _axis_weights(points_per_axis)

    mesh = np.meshgrid(*([axis] * dimension), indexing="ij")
    nodes = np.stack([m.ravel() for m in mesh], axis=1)
    weights = axis_weights
    for _ in range(dimension - 1):
        weights = np.multiply.outer(weights, axis_weights)
    return nodes, weights.ravel()


class ContextSpace(object):
    """Finite context space; labels are the integer indices 0..k-1."""

    def __init__(self, mass):
        self.mass = _frozen(mass)
        _check_mass(self.mass, "context")
        self.support = tuple(range(self.mass.size))

    @property
    def size(self):
        return self.mass.size

    def contains(self, theta):
        return isinstance(theta, (int, np.integer)) and 0 <= theta < self.size

    def sample(self, rng, size):
        """Draw ``size`` i.i.d. context labels."""
        return rng.choice(self.size, size=size, p=self.mass)


class FactorSpace(object):
    """Base class for external factor spaces.

    Subclasses expose ``nodes`` (the points outcome tables are evaluated
    at) and ``true_weights()`` (probability weights over those nodes).
    """

    is_finite = None

    def true_weights(self):
        raise NotImplementedError("To be implemented in derived class.")

    def sample(self, rng, size):
        raise NotImplementedError("To be implemented in derived class.")

    def contains(self, gamma):
        raise NotImplementedError("To be implemented in derived class.")


class FiniteFactorSpace(FactorSpace):
    """Finite external factors with a probability vector over labels."""

    is_finite = True

    def __init__(self, mass):
        self.mass = _frozen(mass)
        _check_mass(self.mass, "factor")
        self.support = tuple(range(self.mass.size))
        self.nodes = np.arange(self.mass.size)

    @property
    def size(self):
        return self.mass.size

    def true_weights(self):
        return self.mass

    def sample(self, rng, size):
        return rng.choice(self.size, size=size, p=self.mass)

    def contains(self, gamma):
        return isinstance(gamma, (int, np.integer)) and 0 <= gamma < self.size


class BetaProductDensity(object):
    """Product of Beta(a, b) marginals on [0,1]^l; Beta(1, 1) is uniform."""

    def __init__(self, shapes):
        self.shapes = tuple((float(a), float(b)) for a, b in shapes)
        if not self.shapes:
            raise DomainError("density needs at least one axis")
        for a, b in self.shapes:
            # a, b < 1 puts infinite density on the boundary
            if a < 1 or b < 1:
                raise DomainError("Beta shapes must be >= 1, got ({}, {})".format(a, b))

    @property
    def dimension(self):
        return len(self.shapes)

    def pdf(self, points):
        points = np.atleast_2d(points)
        values = np.ones(points.shape[0])
        for axis, (a, b) in enumerate(self.shapes):
            values *= stats.beta.pdf(points[:, axis], a, b)
        return values

    def sample(self, rng, size):
        return np.stack([rng.beta(a, b, size=size) for a, b in self.shapes], axis=1)

    def describe(self):
        return " ".join("{!r} {!r}".format(a, b) for a, b in self.shapes)


class ContinuousFactorSpace(FactorSpace):
    """External factors in [0,1]^l with a density of Hölder class (beta, L)."""

    is_finite = False

    def __init__(self, density, holder_beta=2, holder_L=1.0, grid_points=DEFAULT_GRID_POINTS):
        self.density = density
        self.dimension = density.dimension
        self.holder_beta = int(holder_beta)
        self.holder_L = float(holder_L)
        self.grid_points = int(grid_points)
        if self.holder_beta < 1:
            raise DomainError("Hölder order must be a positive integer")
        nodes, weights = quadrature_grid(self.dimension, self.grid_points)
        self.nodes = _frozen(nodes)
        self.quadrature_weights = _frozen(weights)

        values = density.pdf(self.nodes)
        if np.any(values < 0):
            raise DomainError("density is negative on the quadrature grid")
        total = float(np.dot(self.quadrature_weights, values))
        if abs(total - 1.0) > DENSITY_TOLERANCE:
            raise DomainError("density integrates to {!r} on the grid".format(total))
        # renormalised so the benchmark sees a probability vector
        self._weights = _frozen(self.quadrature_weights * values / total)

    def true_weights(self):
        return self._weights

    def sample(self, rng, size):
        return self.density.sample(rng, size)

    def contains(self, gamma):
        point = np.asarray(gamma, dtype=float)
        return (
            point.shape == (self.dimension,)
            and bool(np.all(point >= 0.0))
            and bool(np.all(point <= 1.0))
        )


def sample_contexts(space, rng, size):
    """Draw ``size`` i.i.d. context labels as an int array."""
    return np.asarray(space.sample(rng, size), dtype=np.int64)


def sample_factors(space, rng, size):
    """Draw ``size`` i.i.d. external factors.

    Finite spaces give an int array of labels, continuous ones a
    (size x dimension) array of points.
    """
    draws = space.sample(rng, size)
    if space.is_finite:
        return np.asarray(draws, dtype=np.int64)
    return np.asarray(draws, dtype=float).reshape(size, -1)
