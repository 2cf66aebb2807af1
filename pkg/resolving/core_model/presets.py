"""Named experiment instances.

The two presets share a three-context, two-factor, two-resource instance
and differ only in the budget rates: with rho = (1, 1) the fluid optimum
(2/3, 2/3, 1) is unique and non-degenerate; with rho = (1, 1.15) the
optimum (1, 0.5, 1) sits on a degenerate vertex.
"""
from utils.exceptions import DomainError

from .instance import ProblemInstance
from .outcomes import TabularOutcomeModel
from .spaces import ContextSpace, FiniteFactorSpace

CONTEXT_MASS = (0.3, 0.3, 0.4)
FACTOR_MASS = (0.5, 0.5)
REWARD = (
    (1.2, 0.8),
    (1.3, 1.1),
    (0.7, 0.9),
)
CONSUMPTION = (
    (
        (0.9, 1.1),
        (1.8, 2.2),
        (1.2, 0.8),
    ),
    (
        (2.1, 1.9),
        (0.8, 1.2),
        (0.9, 1.1),
    ),
)
R_MAX = 1.3
C_MAX = 2.2
DEFAULT_HORIZON = 5000

PRESETS = {
    "paper-nondegenerate": (1.0, 1.0),
    "paper-degenerate": (1.0, 1.15),
}


def load_preset(name, T=DEFAULT_HORIZON):
    """Return the preset instance ``name`` at horizon ``T``."""
    try:
        rho = PRESETS[name]
    except KeyError:
        raise DomainError("unknown preset {!r}; choose one of {}".format(name, ", ".join(sorted(PRESETS))))
    return ProblemInstance(
        ContextSpace(CONTEXT_MASS),
        FiniteFactorSpace(FACTOR_MASS),
        TabularOutcomeModel(REWARD, CONSUMPTION),
        rho=rho,
        T=T,
        r_max=R_MAX,
        c_max=C_MAX,
        name=name,
    )
