"""Re-solving control and the static fluid baseline.

A policy object is immutable configuration; everything that changes during
a trial lives in a PolicyState so one policy can drive many trials.
"""
import enum
import logging
from collections import namedtuple

import numpy as np
from django.conf import settings as django_settings

from core_model.instance import true_expectations
from estimators.discrete import DiscreteEstimatorState, discrete_mass, update_discrete
from estimators.expectations import ExpectationEstimate, estimate_expectations
from estimators.kde import KdeEstimatorState, update_kde
from estimators.kernels import kernel_by_name
from fluid_lp.solver import BINDING_TOLERANCE, CONDITION_LIMIT, build_fluid_lp, solve_lp
from utils.csvdump import dump_rows, format_vector
from utils.exceptions import DomainError

logger = logging.getLogger(__name__)

TRAJECTORY_COLUMNS = ["t", "theta", "phi", "a", "reward", "B_after", "rho_t", "lp_objective"]


class FeedbackMode(enum.Enum):
    """Whether the external factor is revealed every round or only when a = 1."""

    FULL_INFO = "full"
    PARTIAL_INFO = "partial"


class ActionDecision(namedtuple("ActionDecision", ["a", "phi_at_theta", "rho_t", "lp_objective", "failed"])):
    """Action of one round plus the diagnostics that produced it."""

    __slots__ = ()


def stop_threshold_for(c_max):
    """Budget level below which a resource counts as exhausted."""
    return max(1.0, float(c_max))


class PolicyState(object):
    """Everything a policy carries from one round to the next."""

    def __init__(self, B, T, u_est, v_est, stop_threshold, record_trajectory=False):
        self.B = np.array(B, dtype=float)
        self.T = int(T)
        self.t = 1
        self.u_est = u_est
        self.v_est = v_est
        self.n_observed = 0
        self.stopped = bool(np.any(self.B < stop_threshold))
        self.stop_threshold = float(stop_threshold)
        self.accumulated_reward = 0.0
        self.actions_taken = 0
        self.rho_history = [] if record_trajectory else None
        self.trajectory = [] if record_trajectory else None

        # plug-in cache, valid while v_est.m is unchanged
        self.estimate = None
        self.estimate_m = None
        self.last_solution = None

    def __repr__(self):
        return "<PolicyState t={} B={} stopped={}>".format(self.t, self.B.tolist(), self.stopped)

    @property
    def rho_t(self):
        """Average remaining budget per remaining round, clamped at 0."""
        return np.maximum(self.B / float(self.T - self.t + 1), 0.0)


class BasePolicy(object):
    """Shared observation, budget and stopping rules."""

    name = None

    def __init__(self, instance, mode, record_trajectory=False):
        if not isinstance(mode, FeedbackMode):
            mode = FeedbackMode(mode)
        self.instance = instance
        self.mode = mode
        self.record_trajectory = record_trajectory

    def __repr__(self):
        return "<{} {} on {!r}>".format(self.__class__.__name__, self.mode.value, self.instance.name)

    def new_v_estimator(self):
        factor_space = self.instance.factor_space
        if factor_space.is_finite:
            return DiscreteEstimatorState(factor_space.size)
        return KdeEstimatorState(factor_space.dimension, beta=factor_space.holder_beta)

    def initial_state(self):
        instance = self.instance
        return PolicyState(
            instance.rho * instance.T,
            instance.T,
            DiscreteEstimatorState(instance.context_space.size),
            self.new_v_estimator(),
            stop_threshold_for(instance.c_max),
            record_trajectory=self.record_trajectory,
        )

    def control(self, state, rho_t):
        """Return (phi, lp_objective, failed) for the current round."""
        raise NotImplementedError("To be implemented in derived class.")

    def step(self, state, theta, rng):
        """Decide the action of round ``state.t`` in context ``theta``."""
        if state.stopped:
            raise DomainError("policy has stopped at t={}".format(state.t))
        if not 1 <= state.t <= state.T:
            raise DomainError("round {} outside 1..{}".format(state.t, state.T))

        rho_t = state.rho_t
        phi, lp_objective, failed = self.control(state, rho_t)
        phi_at_theta = 0.0 if failed else float(phi[theta])
        # one draw per round whatever phi is
        draw = rng.random()
        a = 1 if draw < phi_at_theta else 0
        if state.rho_history is not None:
            state.rho_history.append(rho_t)
        return ActionDecision(a, phi_at_theta, rho_t, lp_objective, failed)

    def observe(self, state, decision, theta, gamma, outcome):
        """Record the outcome of a round and advance the state in place."""
        update_discrete(state.u_est, theta)
        if self.mode is FeedbackMode.FULL_INFO or decision.a == 1:
            if isinstance(state.v_est, DiscreteEstimatorState):
                update_discrete(state.v_est, int(gamma))
            else:
                update_kde(state.v_est, gamma)
            state.n_observed += 1

        state.B = state.B - outcome.consumption
        state.accumulated_reward += outcome.reward
        state.actions_taken += decision.a
        if state.trajectory is not None:
            state.trajectory.append(
                {
                    "t": state.t,
                    "theta": theta,
                    "phi": decision.phi_at_theta,
                    "a": decision.a,
                    "reward": outcome.reward,
                    "B_after": state.B.copy(),
                    "rho_t": decision.rho_t,
                    "lp_objective": decision.lp_objective,
                    "consumption": np.array(outcome.consumption, dtype=float),
                }
            )
        state.t += 1
        if np.any(state.B < state.stop_threshold):
            state.stopped = True
            logger.debug("stopped after round %d with B=%s", state.t - 1, state.B.tolist())
        return state


class ResolvingPolicy(BasePolicy):
    """Re-solve the estimated fluid LP at the current budget rate every round."""

    name = "resolving"

    def __init__(
        self,
        instance,
        mode,
        kernel="gaussian4",
        bandwidth_constant=1.0,
        binding_tol=BINDING_TOLERANCE,
        condition_limit=CONDITION_LIMIT,
        warm_start=True,
        record_trajectory=False,
    ):
        super().__init__(instance, mode, record_trajectory=record_trajectory)
        self.kernel = kernel_by_name(kernel)
        self.bandwidth_constant = float(bandwidth_constant)
        self.binding_tol = binding_tol
        self.condition_limit = condition_limit
        self.warm_start = warm_start

    def new_v_estimator(self):
        factor_space = self.instance.factor_space
        if factor_space.is_finite:
            return DiscreteEstimatorState(factor_space.size)
        return KdeEstimatorState(
            factor_space.dimension,
            kernel=self.kernel,
            beta=factor_space.holder_beta,
            bandwidth_constant=self.bandwidth_constant,
        )

    def current_estimate(self, state):
        if state.estimate is None or state.estimate_m != state.v_est.m:
            state.estimate = estimate_expectations(state.v_est, self.instance)
            state.estimate_m = state.v_est.m
        return state.estimate

    def control(self, state, rho_t):
        lp = build_fluid_lp(discrete_mass(state.u_est), self.current_estimate(state), rho_t)
        solution = solve_lp(
            lp,
            binding_tol=self.binding_tol,
            condition_limit=self.condition_limit,
            warm_start=state.last_solution if self.warm_start else None,
        )
        if not solution.optimal:
            logger.warning("round %d: LP failed, playing the null action", state.t)
            state.last_solution = None
            return None, float("nan"), True
        state.last_solution = solution
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug("round %d: rho_t=%s objective=%.6f", state.t, rho_t.tolist(), solution.objective)
        return solution.phi, solution.objective, False


class StaticFluidPolicy(BasePolicy):
    """Play the true-distribution fluid optimum phi* of J(rho) in every round."""

    name = "static"

    def __init__(self, instance, mode, record_trajectory=False):
        super().__init__(instance, mode, record_trajectory=record_trajectory)
        R, C = true_expectations(instance)
        solution = solve_lp(build_fluid_lp(instance.context_mass, ExpectationEstimate(R, C, None), instance.rho))
        if not solution.optimal:
            raise DomainError("fluid LP of {!r} has no reliable solution".format(instance.name))
        self.phi = solution.phi
        self.objective = solution.objective

    def control(self, state, rho_t):
        return self.phi, self.objective, False


def static_fluid_baseline(instance, mode=FeedbackMode.FULL_INFO, record_trajectory=False):
    """Return the static fluid baseline policy for ``instance``."""
    return StaticFluidPolicy(instance, mode, record_trajectory=record_trajectory)


POLICY_KINDS = {
    ResolvingPolicy.name: ResolvingPolicy,
    StaticFluidPolicy.name: StaticFluidPolicy,
}


class PolicySpec(
    namedtuple(
        "PolicySpec",
        ["kind", "kernel", "bandwidth_constant", "binding_tol", "condition_limit", "record_trajectory"],
    )
):
    """Picklable description of a policy, rebuilt inside worker processes."""

    __slots__ = ()

    def __new__(
        cls,
        kind="resolving",
        kernel="gaussian4",
        bandwidth_constant=1.0,
        binding_tol=BINDING_TOLERANCE,
        condition_limit=CONDITION_LIMIT,
        record_trajectory=False,
    ):
        if kind not in POLICY_KINDS:
            raise DomainError(
                "unknown policy {!r}; choose one of {}".format(kind, ", ".join(sorted(POLICY_KINDS)))
            )
        kernel_by_name(kernel)
        return super().__new__(cls, kind, kernel, float(bandwidth_constant), binding_tol, condition_limit, record_trajectory)

    @classmethod
    def from_settings(cls, kind="resolving", **overrides):
        """Fill unspecified fields from the RESOLVE_* settings."""
        values = {
            "kernel": getattr(django_settings, "RESOLVE_KERNEL", "gaussian4"),
            "bandwidth_constant": getattr(django_settings, "RESOLVE_BANDWIDTH_CONSTANT", 1.0),
            "binding_tol": getattr(django_settings, "RESOLVE_BINDING_TOLERANCE", BINDING_TOLERANCE),
            "condition_limit": getattr(django_settings, "RESOLVE_CONDITION_LIMIT", CONDITION_LIMIT),
        }
        values.update((k, v) for k, v in overrides.items() if v is not None)
        return cls(kind, **values)

    def build(self, instance, mode):
        if self.kind == StaticFluidPolicy.name:
            return StaticFluidPolicy(instance, mode, record_trajectory=self.record_trajectory)
        return ResolvingPolicy(
            instance,
            mode,
            kernel=self.kernel,
            bandwidth_constant=self.bandwidth_constant,
            binding_tol=self.binding_tol,
            condition_limit=self.condition_limit,
            record_trajectory=self.record_trajectory,
        )


def write_trajectory(state, path):
    """Dump the per-round rows recorded on ``state`` as CSV."""
    if state.trajectory is None:
        raise DomainError("trajectory recording was not enabled for this trial")
    rows = (
        dict(row, B_after=format_vector(row["B_after"]), rho_t=format_vector(row["rho_t"]))
        for row in state.trajectory
    )
    return dump_rows(rows, TRAJECTORY_COLUMNS, path)
