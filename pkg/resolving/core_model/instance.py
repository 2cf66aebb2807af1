"""Problem instances and the fluid benchmark."""
import logging
from collections import namedtuple

import numpy as np

from utils.exceptions import DomainError, NumericFailure

logger = logging.getLogger(__name__)

Outcome = namedtuple("Outcome", ["reward", "consumption"])
Outcome.__doc__ = "Reward and consumption vector of one round."


class ProblemInstance(object):
    """Full description of a contextual bandits with knapsacks environment.

    Instances are immutable; use ``with_horizon`` / ``with_budget`` to derive
    variants.
    """

    def __init__(self, context_space, factor_space, outcome_model, rho, T, r_max=1.0, c_max=1.0, name=""):
        self.context_space = context_space
        self.factor_space = factor_space
        self.outcome_model = outcome_model
        self.rho = np.array(rho, dtype=float)
        self.rho.setflags(write=False)
        self.T = int(T)
        self.r_max = float(r_max)
        self.c_max = float(c_max)
        self.name = name

        if self.rho.ndim != 1 or self.rho.size == 0:
            raise DomainError("rho must be a non-empty vector")
        if np.any(self.rho <= 0) or not np.all(np.isfinite(self.rho)):
            raise DomainError("rho entries must lie in (0, inf)")
        if self.T < 1 or self.T != T:
            raise DomainError("horizon T must be a positive integer, got {!r}".format(T))
        if self.r_max <= 0 or self.c_max <= 0:
            raise DomainError("r_max and c_max must be positive")
        if outcome_model.n_contexts != context_space.size:
            raise DomainError(
                "outcome model has {} contexts, context space has {}".format(
                    outcome_model.n_contexts, context_space.size
                )
            )
        if outcome_model.n_resources != self.rho.size:
            raise DomainError(
                "outcome model has {} resources, rho has {}".format(
                    outcome_model.n_resources, self.rho.size
                )
            )

        reward_table, consumption_table = outcome_model.tables(factor_space.nodes)
        if np.any(reward_table < 0) or np.any(reward_table > self.r_max):
            raise DomainError("rewards fall outside [0, r_max={}]".format(self.r_max))
        if np.any(consumption_table < 0) or np.any(consumption_table > self.c_max):
            raise DomainError("consumptions fall outside [0, c_max={}]".format(self.c_max))
        reward_table.setflags(write=False)
        consumption_table.setflags(write=False)
        self.reward_table = reward_table
        self.consumption_table = consumption_table

    def __repr__(self):
        return "<ProblemInstance {!r} contexts={} resources={} T={}>".format(
            self.name, self.context_space.size, self.n, self.T
        )

    @property
    def n(self):
        return self.rho.size

    @property
    def context_mass(self):
        return self.context_space.mass

    def with_horizon(self, T):
        """Return a copy with horizon ``T``."""
        return self._replace(T=T)

    def with_budget(self, rho):
        """Return a copy with budget rates ``rho``."""
        return self._replace(rho=rho)

    def _replace(self, **changes):
        fields = {
            "context_space": self.context_space,
            "factor_space": self.factor_space,
            "outcome_model": self.outcome_model,
            "rho": self.rho,
            "T": self.T,
            "r_max": self.r_max,
            "c_max": self.c_max,
            "name": self.name,
        }
        fields.update(changes)
        return ProblemInstance(**fields)


def evaluate_outcome(instance, theta, a, gamma):
    """Return the Outcome of playing ``a`` in context ``theta`` under factor ``gamma``."""
    if not instance.context_space.contains(theta):
        raise DomainError("unknown context label {!r}".format(theta))
    if a not in (0, 1):
        raise DomainError("action must be 0 or 1, got {!r}".format(a))
    if not instance.factor_space.contains(gamma):
        raise DomainError("unknown external factor {!r}".format(gamma))
    if a == 0:
        return Outcome(0.0, np.zeros(instance.n))
    model = instance.outcome_model
    return Outcome(model.reward(theta, gamma), model.consumption(theta, gamma))


def true_expectations(instance):
    """Return (R, C): expected reward per context and the n x |Theta| consumption matrix."""
    weights = instance.factor_space.true_weights()
    R = instance.reward_table.dot(weights)
    C = instance.consumption_table.dot(weights)
    return R, C


def fluid_value(instance):
    """Return the fluid benchmark T * J(rho) under the true distributions."""
    from estimators.expectations import ExpectationEstimate
    from fluid_lp.solver import build_fluid_lp, solve_lp, SolveStatus

    R, C = true_expectations(instance)
    estimate = ExpectationEstimate(R, C, m=None)
    solution = solve_lp(build_fluid_lp(instance.context_mass, estimate, instance.rho))
    if solution.status != SolveStatus.OPTIMAL:
        raise NumericFailure("benchmark LP for {!r} could not be solved".format(instance.name))
    value = instance.T * solution.objective
    logger.debug("fluid value of %r at T=%d is %.6f", instance.name, instance.T, value)
    return value


def check_bounds(instance, rng, n_samples=1000):
    """Spot-check the null action and the declared bounds by sampling.

    Returns a list of human readable violations; empty means the check passed.
    """
    violations = []
    thetas = instance.context_space.sample(rng, n_samples)
    gammas = instance.factor_space.sample(rng, n_samples)
    for theta, gamma in zip(thetas, gammas):
        theta = int(theta)
        if instance.factor_space.is_finite:
            gamma = int(gamma)
        null = evaluate_outcome(instance, theta, 0, gamma)
        if null.reward != 0 or np.any(null.consumption != 0):
            violations.append("null action is not free at ({}, {})".format(theta, gamma))
        active = evaluate_outcome(instance, theta, 1, gamma)
        if not 0 <= active.reward <= instance.r_max:
            violations.append("reward {} out of bounds at ({}, {})".format(active.reward, theta, gamma))
        if np.any(active.consumption < 0) or np.any(active.consumption > instance.c_max):
            violations.append("consumption out of bounds at ({}, {})".format(theta, gamma))
    return violations
