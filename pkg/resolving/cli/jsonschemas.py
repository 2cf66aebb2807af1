"""json schemas for experiment and estimator-suite configuration."""
from estimators.kernels import SHIPPED_KERNELS

from core_model.presets import PRESETS

experiment_schema = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "preset": {"enum": sorted(PRESETS)},
        "instance": {"type": "string", "minLength": 1},
        "mode": {"enum": ["full", "partial"]},
        "horizons": {
            "type": "array",
            "items": {"type": "integer", "minimum": 1},
            "minItems": 1,
        },
        "n_estimations": {"type": "integer", "minimum": 2},
        "n_trials": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer", "minimum": 0},
        "out": {"type": "string", "minLength": 1},
        "policy": {"enum": ["resolving", "static"]},
        "trajectories": {"type": "boolean"},
        "t_quantile": {"type": "boolean"},
        "c_h": {"type": "number", "exclusiveMinimum": 0},
        "kernel": {"enum": sorted(SHIPPED_KERNELS)},
        "grid_points": {"type": "integer", "minimum": 2},
        "workers": {"type": "integer", "minimum": 1},
        "gnuplot": {"type": "string", "minLength": 1},
    },
    "required": ["mode", "horizons", "n_estimations", "n_trials", "seed", "out"],
}

weissman_schema = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "a": {"type": "integer", "minimum": 2},
        "m": {"type": "integer", "minimum": 1},
        "epsilon": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
        "reps": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer", "minimum": 0},
        "slack": {"type": "number", "minimum": 0, "maximum": 1},
    },
    "required": ["a", "m", "epsilon", "reps", "seed"],
}

kde_rate_schema = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "ms": {
            "type": "array",
            "items": {"type": "integer", "minimum": 2},
            "minItems": 2,
        },
        "reps": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer", "minimum": 0},
        "kernel": {"enum": sorted(SHIPPED_KERNELS)},
        "c_h": {"type": "number", "exclusiveMinimum": 0},
        "grid_points": {"type": "integer", "minimum": 2},
    },
    "required": ["ms", "reps", "seed"],
}
