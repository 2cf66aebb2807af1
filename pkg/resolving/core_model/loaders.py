"""Reading and writing instance files."""
import logging
from collections import OrderedDict

import numpy as np

from utils import kvformat
from utils.exceptions import ConfigError, DomainError

from .instance import ProblemInstance
from .jsonschemas import MAX_RESOURCES, instance_schema
from .outcomes import AffineOutcomeModel, TabularOutcomeModel
from .spaces import (
    DEFAULT_GRID_POINTS,
    BetaProductDensity,
    ContextSpace,
    ContinuousFactorSpace,
    FiniteFactorSpace,
)

logger = logging.getLogger(__name__)


def _resource_blocks(data, prefix, n):
    blocks = []
    for i in range(1, n + 1):
        key = "{}{}".format(prefix, i)
        if key not in data:
            raise ConfigError("missing required value", field=key)
        blocks.append(data[key])
    extra = [
        "{}{}".format(prefix, i)
        for i in range(n + 1, MAX_RESOURCES + 1)
        if "{}{}".format(prefix, i) in data
    ]
    if extra:
        raise ConfigError("more resource blocks than rho entries: {}".format(", ".join(extra)))
    return blocks


def instance_from_dict(data, grid_points=None):
    """Build a ProblemInstance from validated instance-file values."""
    n = len(data["rho"])
    try:
        context_space = ContextSpace(data["context_mass"])
        if data["factor_kind"] == "finite":
            for key in ("factor_mass", "reward"):
                if key not in data:
                    raise ConfigError("missing required value", field=key)
            factor_space = FiniteFactorSpace(data["factor_mass"])
            model = TabularOutcomeModel(data["reward"], _resource_blocks(data, "consumption_", n))
        else:
            for key in ("factor_density", "reward_coef"):
                if key not in data:
                    raise ConfigError("missing required value", field=key)
            shapes = data["factor_density"]
            if len(shapes) % 2:
                raise ConfigError("expects (a, b) pairs per axis", field="factor_density")
            density = BetaProductDensity(zip(shapes[::2], shapes[1::2]))
            factor_space = ContinuousFactorSpace(
                density,
                holder_beta=data.get("holder_beta", 2),
                holder_L=data.get("holder_L", 1.0),
                grid_points=grid_points or data.get("grid_points", DEFAULT_GRID_POINTS),
            )
            model = AffineOutcomeModel(
                data["reward_coef"],
                _resource_blocks(data, "consumption_coef_", n),
                r_max=data.get("r_max", 1.0),
                c_max=data.get("c_max", 1.0),
            )
        return ProblemInstance(
            context_space,
            factor_space,
            model,
            rho=data["rho"],
            T=data["T"],
            r_max=data.get("r_max", 1.0),
            c_max=data.get("c_max", 1.0),
            name=data.get("name", ""),
        )
    except DomainError as e:
        raise ConfigError(str(e))


def load_instance(path, grid_points=None):
    """Load a ProblemInstance from an instance file."""
    data = kvformat.coerce(kvformat.read(path), instance_schema)
    instance = instance_from_dict(data, grid_points=grid_points)
    logger.info("loaded instance %r from %s", instance.name, path)
    return instance


def instance_to_dict(instance):
    """Inverse of ``instance_from_dict``."""
    data = OrderedDict()
    data["name"] = instance.name
    data["T"] = instance.T
    data["rho"] = [float(v) for v in instance.rho]
    data["r_max"] = instance.r_max
    data["c_max"] = instance.c_max
    data["context_mass"] = [float(v) for v in instance.context_mass]
    space = instance.factor_space
    model = instance.outcome_model
    if space.is_finite:
        data["factor_kind"] = "finite"
        data["factor_mass"] = [float(v) for v in space.mass]
        data["reward"] = np.asarray(model.reward_matrix).tolist()
        for i, block in enumerate(model.consumption_matrices, start=1):
            data["consumption_{}".format(i)] = block.tolist()
    else:
        data["factor_kind"] = "continuous"
        data["factor_density"] = [v for shape in space.density.shapes for v in shape]
        data["holder_beta"] = space.holder_beta
        data["holder_L"] = space.holder_L
        data["grid_points"] = space.grid_points
        data["outcome_model"] = model.name
        data["reward_coef"] = model.reward_coef.tolist()
        for i, block in enumerate(model.consumption_coef, start=1):
            data["consumption_coef_{}".format(i)] = block.tolist()
    return data


def dump_instance(instance, path):
    """Write ``instance`` in the instance file format."""
    with open(path, "w") as handle:
        handle.write(kvformat.render(instance_to_dict(instance)))
    return path
