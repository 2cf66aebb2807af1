"""json schemas for instance files."""

MAX_RESOURCES = 16

_vector = {"type": "array", "items": {"type": "number"}, "minItems": 1}
_matrix = {
    "type": "array",
    "items": {"type": "array", "items": {"type": "number"}, "minItems": 1},
    "minItems": 1,
}

instance_schema = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "T": {"type": "integer", "minimum": 1},
        "rho": dict(_vector, items={"type": "number", "exclusiveMinimum": 0}),
        "r_max": {"type": "number", "exclusiveMinimum": 0},
        "c_max": {"type": "number", "exclusiveMinimum": 0},
        "context_mass": _vector,
        "factor_kind": {"enum": ["finite", "continuous"]},
        # finite external factors
        "factor_mass": _vector,
        "reward": _matrix,
        # continuous external factors
        "factor_density": dict(_vector, minItems=2),
        "holder_beta": {"type": "integer", "minimum": 1},
        "holder_L": {"type": "number", "exclusiveMinimum": 0},
        "grid_points": {"type": "integer", "minimum": 2},
        "outcome_model": {"enum": ["affine"]},
        "reward_coef": _matrix,
    },
    "required": ["T", "rho", "context_mass", "factor_kind"],
}

for _i in range(1, MAX_RESOURCES + 1):
    instance_schema["properties"]["consumption_{}".format(_i)] = _matrix
    instance_schema["properties"]["consumption_coef_{}".format(_i)] = _matrix
