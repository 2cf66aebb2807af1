"""One-dimensional kernels and the moment conditions they must satisfy."""
import math
from collections import namedtuple

import numpy as np
from scipy import integrate

from utils.exceptions import DomainError

MOMENT_TOLERANCE = 1e-6
UNBOUNDED = None

_SQRT_2PI = math.sqrt(2.0 * math.pi)


class KernelSpec(object):
    """A kernel K: R -> R with vanishing moments 1..order.

    ``support_radius`` is None for kernels with unbounded support.
    """

    def __init__(self, name, function, order, support_radius=UNBOUNDED):
        if order < 1:
            raise DomainError("kernel order must be >= 1")
        self.name = name
        self.function = function
        self.order = int(order)
        self.support_radius = support_radius

    def __call__(self, x):
        return self.function(np.asarray(x, dtype=float))

    def __repr__(self):
        return "<KernelSpec {} order={}>".format(self.name, self.order)


def _gaussian(x):
    return np.exp(-0.5 * x * x) / _SQRT_2PI


def _gaussian4(x):
    # (3 - x^2)/2 * phi(x): second moment cancels, fourth does not
    return 0.5 * (3.0 - x * x) * _gaussian(x)


def _epanechnikov(x):
    return np.where(np.abs(x) <= 1.0, 0.75 * (1.0 - x * x), 0.0)


GAUSSIAN = KernelSpec("gaussian", _gaussian, order=1)
GAUSSIAN4 = KernelSpec("gaussian4", _gaussian4, order=3)
EPANECHNIKOV = KernelSpec("epanechnikov", _epanechnikov, order=1, support_radius=1.0)

SHIPPED_KERNELS = {k.name: k for k in (GAUSSIAN, GAUSSIAN4, EPANECHNIKOV)}


def kernel_by_name(name):
    """Resolve a configured kernel name."""
    try:
        return SHIPPED_KERNELS[name]
    except KeyError:
        raise DomainError(
            "unknown kernel {!r}; choose one of {}".format(name, ", ".join(sorted(SHIPPED_KERNELS)))
        )


KernelCheck = namedtuple("KernelCheck", ["condition", "residual", "passed"])


class KernelReport(object):
    """Outcome of ``validate_kernel``: one KernelCheck per condition."""

    def __init__(self, kernel, beta, checks):
        self.kernel = kernel
        self.beta = beta
        self.checks = checks

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def failures(self):
        return [check for check in self.checks if not check.passed]

    def __str__(self):
        return "; ".join(
            "{} residual={:.3g} {}".format(c.condition, c.residual, "ok" if c.passed else "FAIL")
            for c in self.checks
        )


def _integrate(function, kernel):
    if kernel.support_radius is UNBOUNDED:
        lower, upper = -np.inf, np.inf
    else:
        lower, upper = -kernel.support_radius, kernel.support_radius
    value, _ = integrate.quad(function, lower, upper, limit=200)
    return value


def validate_kernel(kernel, beta):
    """Numerically check the conditions a kernel needs for Hölder order ``beta``.

    Conditions: integral of K is 1, moments 1..beta vanish, and the beta-th
    absolute moment is finite. Failures are report entries, never raised.
    """
    beta = int(beta)
    scalar = lambda x: float(kernel(x))  # noqa: E731
    checks = []

    total = _integrate(scalar, kernel)
    residual = abs(total - 1.0)
    checks.append(KernelCheck("integral == 1", residual, residual <= MOMENT_TOLERANCE))

    for s in range(1, beta + 1):
        moment = _integrate(lambda x, s=s: x ** s * scalar(x), kernel)
        checks.append(KernelCheck("moment {} == 0".format(s), abs(moment), abs(moment) <= MOMENT_TOLERANCE))

    absolute = _integrate(lambda x: abs(x) ** beta * abs(scalar(x)), kernel)
    finite = bool(np.isfinite(absolute)) and absolute < 1e12
    checks.append(KernelCheck("abs moment {} finite".format(beta), absolute, finite))
    return KernelReport(kernel, beta, checks)
