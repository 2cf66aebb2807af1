"""Seeded random streams for reproducible trials."""
import numpy as np


def trial_seed(master_seed, horizon, batch, trial):
    """Return the seed sequence of one trial.

    The stream depends only on its coordinates, never on the order in
    which trials are scheduled.
    """
    return np.random.SeedSequence(
        entropy=master_seed, spawn_key=(int(horizon), int(batch), int(trial))
    )


def as_seed_sequence(seed):
    """Accept an int or a SeedSequence."""
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(int(seed))


def split_streams(seed):
    """Return independent (nature, policy) generators for one trial.

    Children are derived from the spawn key directly, so splitting the same
    seed twice gives the same pair.
    """
    seed = as_seed_sequence(seed)
    nature, policy = (
        np.random.SeedSequence(seed.entropy, spawn_key=tuple(seed.spawn_key) + (i,)) for i in range(2)
    )
    return np.random.default_rng(nature), np.random.default_rng(policy)


def seed_label(seed):
    """Hashable, comparable description of a seed for reports."""
    if isinstance(seed, np.random.SeedSequence):
        return (seed.entropy,) + tuple(seed.spawn_key)
    return int(seed)
