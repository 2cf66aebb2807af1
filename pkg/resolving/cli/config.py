"""Experiment configuration: files, command-line options and resolution."""
import logging
from collections import OrderedDict, namedtuple

from django.conf import settings as django_settings

from core_model.loaders import load_instance
from core_model.presets import load_preset
from policy.policies import FeedbackMode, PolicySpec
from utils import kvformat
from utils.exceptions import ConfigError, DomainError

from .jsonschemas import experiment_schema

logger = logging.getLogger(__name__)

CONFIG_FIELDS = [
    "preset",
    "instance",
    "mode",
    "horizons",
    "n_estimations",
    "n_trials",
    "seed",
    "out",
    "policy",
    "trajectories",
    "t_quantile",
    "c_h",
    "kernel",
    "grid_points",
    "workers",
    "gnuplot",
]

# None means "take it from settings"
OPTIONAL_DEFAULTS = {
    "preset": None,
    "instance": None,
    "policy": "resolving",
    "trajectories": False,
    "t_quantile": False,
    "c_h": None,
    "kernel": None,
    "grid_points": None,
    "workers": None,
    "gnuplot": None,
}


class ExperimentConfig(namedtuple("ExperimentConfig", CONFIG_FIELDS)):
    """A validated experiment description."""

    __slots__ = ()

    @property
    def source(self):
        return self.preset or self.instance


def config_from_dict(data):
    """Validate ``data`` and build an ExperimentConfig."""
    kvformat.validate(data, experiment_schema)
    if bool(data.get("preset")) == bool(data.get("instance")):
        raise ConfigError("give exactly one of preset and instance", field="preset")
    horizons = tuple(int(T) for T in data["horizons"])
    if list(horizons) != sorted(set(horizons)):
        raise ConfigError("must be distinct and ascending", field="horizons")

    values = dict(OPTIONAL_DEFAULTS)
    values.update((key, value) for key, value in data.items() if value is not None)
    values["horizons"] = horizons
    values["mode"] = FeedbackMode(values["mode"])
    return ExperimentConfig(**values)


def config_to_dict(config):
    """Inverse of ``config_from_dict``; unset optional values are left out."""
    data = OrderedDict()
    for field in CONFIG_FIELDS:
        value = getattr(config, field)
        if value is None:
            continue
        if field == "mode":
            value = value.value
        elif field == "horizons":
            value = list(value)
        data[field] = value
    return data


def load_config(path):
    """Read and validate an experiment configuration file."""
    config = config_from_dict(kvformat.coerce(kvformat.read(path), experiment_schema))
    logger.debug("loaded config %s: %s", path, config)
    return config


def dump_config(config, path):
    """Write ``config`` so that ``load_config`` reads it back unchanged."""
    text = kvformat.render(config_to_dict(config))
    with open(path, "w") as handle:
        handle.write(text)
    return path


def resolve_instance(config):
    """The ProblemInstance named by the config, at its first horizon."""
    T = config.horizons[0]
    if config.preset:
        return load_preset(config.preset, T=T)
    grid_points = config.grid_points or getattr(django_settings, "RESOLVE_GRID_POINTS", None)
    instance = load_instance(config.instance, grid_points=grid_points)
    try:
        return instance.with_horizon(T)
    except DomainError as e:
        raise ConfigError(str(e), field="horizons")


def resolve_policy(config):
    return PolicySpec.from_settings(
        kind=config.policy,
        kernel=config.kernel,
        bandwidth_constant=config.c_h,
    )


def resolve_workers(config):
    if config.workers is not None:
        return config.workers
    return getattr(django_settings, "RESOLVE_WORKERS", 1)
