"""A single trial: nature draws a sample path, the policy plays it."""
import logging
from collections import namedtuple

from core_model.instance import evaluate_outcome
from core_model.spaces import sample_contexts, sample_factors
from policy.policies import FeedbackMode, PolicySpec, write_trajectory
from utils.streams import seed_label, split_streams

logger = logging.getLogger(__name__)

TrialResult = namedtuple(
    "TrialResult", ["accumulated_reward", "stop_time", "actions_taken", "n_observed", "seed"]
)
TrialResult.__doc__ = """Totals of one trial.

stop_time is the last round played (T when the budget never ran out, at
least 1); n_observed counts the external factors the policy saw.
"""


def run_trial(instance, mode, policy, seed, trajectory_path=None):
    """Play one trial of ``instance`` and return its TrialResult.

    ``policy`` is a policy object or a PolicySpec. The external factor is
    drawn every round whether or not the policy gets to see it, so runs
    under both feedback modes with the same seed face the same path.
    """
    if not isinstance(mode, FeedbackMode):
        mode = FeedbackMode(mode)
    if isinstance(policy, PolicySpec):
        if trajectory_path is not None:
            policy = policy._replace(record_trajectory=True)
        policy = policy.build(instance, mode)

    nature, policy_rng = split_streams(seed)
    thetas = sample_contexts(instance.context_space, nature, instance.T)
    gammas = sample_factors(instance.factor_space, nature, instance.T)
    finite_factors = instance.factor_space.is_finite

    state = policy.initial_state()
    played = 0
    for t in range(instance.T):
        if state.stopped:
            break
        theta = int(thetas[t])
        gamma = int(gammas[t]) if finite_factors else gammas[t]
        decision = policy.step(state, theta, policy_rng)
        outcome = evaluate_outcome(instance, theta, decision.a, gamma)
        policy.observe(state, decision, theta, gamma, outcome)
        played += 1

    if trajectory_path is not None:
        write_trajectory(state, trajectory_path)

    result = TrialResult(
        state.accumulated_reward,
        max(played, 1),
        state.actions_taken,
        state.n_observed,
        seed_label(seed),
    )
    logger.debug("trial %s: %s", result.seed, result)
    return result
