"""Reward and consumption functions of the active action.

The null action always yields zero reward and zero consumption, so an
outcome model only describes r(theta, 1, gamma) and c(theta, 1, gamma).
Both are evaluated once over the nodes of the factor space and kept as
tables: a (contexts x nodes) reward table and a (resources x contexts x
nodes) consumption table.
"""
import numpy as np

from utils.exceptions import DomainError


class OutcomeModel(object):
    """Base class for known reward/consumption functions."""

    name = None

    def reward(self, theta, gamma):
        raise NotImplementedError("To be implemented in derived class.")

    def consumption(self, theta, gamma):
        raise NotImplementedError("To be implemented in derived class.")

    def tables(self, nodes):
        """Return (reward_table, consumption_table) over ``nodes``."""
        raise NotImplementedError("To be implemented in derived class.")


class TabularOutcomeModel(OutcomeModel):
    """Outcomes given as matrices over (context, factor label)."""

    name = "tabular"

    def __init__(self, reward, consumption):
        self.reward_matrix = np.array(reward, dtype=float)
        self.consumption_matrices = np.array(consumption, dtype=float)
        if self.reward_matrix.ndim != 2:
            raise DomainError("reward must be a contexts x factors matrix")
        if self.consumption_matrices.ndim != 3:
            raise DomainError("consumption must be one contexts x factors matrix per resource")
        if self.consumption_matrices.shape[1:] != self.reward_matrix.shape:
            raise DomainError(
                "consumption matrices {} do not match reward matrix {}".format(
                    self.consumption_matrices.shape[1:], self.reward_matrix.shape
                )
            )
        self.reward_matrix.setflags(write=False)
        self.consumption_matrices.setflags(write=False)

    @property
    def n_contexts(self):
        return self.reward_matrix.shape[0]

    @property
    def n_factors(self):
        return self.reward_matrix.shape[1]

    @property
    def n_resources(self):
        return self.consumption_matrices.shape[0]

    def reward(self, theta, gamma):
        return float(self.reward_matrix[theta, gamma])

    def consumption(self, theta, gamma):
        return self.consumption_matrices[:, theta, gamma].copy()

    def tables(self, nodes):
        nodes = np.asarray(nodes, dtype=int)
        return self.reward_matrix[:, nodes], self.consumption_matrices[:, :, nodes]


class AffineOutcomeModel(OutcomeModel):
    """Outcomes affine in the mean coordinate of a continuous factor.

    r(theta, 1, gamma) = clip(base[theta] + slope[theta] * mean(gamma), 0, r_max)
    and the same per resource for the consumption, clipped to [0, c_max].
    """

    name = "affine"

    def __init__(self, reward_coef, consumption_coef, r_max, c_max):
        reward_coef = np.array(reward_coef, dtype=float)
        consumption_coef = np.array(consumption_coef, dtype=float)
        if reward_coef.ndim != 2 or reward_coef.shape[1] != 2:
            raise DomainError("reward coefficients must be rows of (base, slope)")
        if consumption_coef.ndim != 3 or consumption_coef.shape[1:] != reward_coef.shape:
            raise DomainError("consumption coefficients must be one (base, slope) matrix per resource")
        self.reward_coef = reward_coef
        self.consumption_coef = consumption_coef
        self.r_max = float(r_max)
        self.c_max = float(c_max)

    @property
    def n_contexts(self):
        return self.reward_coef.shape[0]

    @property
    def n_resources(self):
        return self.consumption_coef.shape[0]

    @staticmethod
    def _level(gamma):
        return np.atleast_2d(np.asarray(gamma, dtype=float)).mean(axis=1)

    def reward(self, theta, gamma):
        base, slope = self.reward_coef[theta]
        level = self._level(gamma)[0]
        return float(np.clip(base + slope * level, 0.0, self.r_max))

    def consumption(self, theta, gamma):
        level = self._level(gamma)[0]
        coef = self.consumption_coef[:, theta, :]
        return np.clip(coef[:, 0] + coef[:, 1] * level, 0.0, self.c_max)

    def tables(self, nodes):
        level = self._level(nodes)
        reward = self.reward_coef[:, :1] + self.reward_coef[:, 1:] * level[None, :]
        consumption = (
            self.consumption_coef[:, :, :1] + self.consumption_coef[:, :, 1:] * level[None, None, :]
        )
        return np.clip(reward, 0.0, self.r_max), np.clip(consumption, 0.0, self.c_max)
