"""Plug-in expectations R_hat(theta), C_hat(theta) under estimated factor laws."""
import numpy as np

from .discrete import DiscreteEstimatorState, discrete_mass
from .kde import grid_density


class ExpectationEstimate(object):
    """Estimated expected reward per context and n x |Theta| consumption matrix."""

    def __init__(self, R_hat, C_hat, m):
        self.R_hat = np.asarray(R_hat, dtype=float)
        self.C_hat = np.asarray(C_hat, dtype=float)
        self.m = m

    @property
    def n(self):
        return self.C_hat.shape[0]

    def __repr__(self):
        return "<ExpectationEstimate m={} R_hat={}>".format(self.m, self.R_hat.tolist())


def factor_weights(v_state, factor_space):
    """Probability weights over the factor space nodes implied by ``v_state``."""
    if isinstance(v_state, DiscreteEstimatorState):
        return discrete_mass(v_state)
    density = grid_density(v_state, factor_space.nodes, factor_space.quadrature_weights)
    return factor_space.quadrature_weights * density


def estimate_expectations(v_state, instance):
    """Plug the estimated factor distribution into the instance's outcome tables."""
    weights = factor_weights(v_state, instance.factor_space)
    R_hat = np.clip(instance.reward_table.dot(weights), 0.0, instance.r_max)
    C_hat = np.clip(instance.consumption_table.dot(weights), 0.0, instance.c_max)
    return ExpectationEstimate(R_hat, C_hat, v_state.m)
