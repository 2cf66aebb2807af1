"""The finite-context fluid LP and a bounded-variable primal simplex.

    max  w . phi
    s.t. A phi <= kappa,   0 <= phi <= 1

with w(theta) = u(theta) R(theta) and A[i, theta] = u(theta) C^i(theta).
Slack variables make the start basis: phi = 0 is always feasible.
"""
import enum
import logging

import numpy as np

from utils.exceptions import DomainError

logger = logging.getLogger(__name__)

BINDING_TOLERANCE = 1e-7
CONDITION_LIMIT = 1e12
PRICING_TOLERANCE = 1e-12
RATIO_TOLERANCE = 1e-12


class SolveStatus(enum.Enum):
    OPTIMAL = "optimal"
    NUMERIC_FAILURE = "numeric_failure"


class FluidLp(object):
    """Objective weights, constraint matrix and right-hand side of the fluid LP."""

    def __init__(self, obj, cons, rhs):
        self.obj = np.asarray(obj, dtype=float)
        self.cons = np.asarray(cons, dtype=float)
        self.rhs = np.asarray(rhs, dtype=float)

    @property
    def n_vars(self):
        return self.obj.size

    @property
    def n_cons(self):
        return self.rhs.size

    def __repr__(self):
        return "<FluidLp vars={} cons={}>".format(self.n_vars, self.n_cons)


class FluidSolution(object):
    """Primal control, duals and diagnostics of one solve."""

    def __init__(self, phi, lam, objective, binding, status, basis=None, at_upper=None, pivots=0, flips=0):
        self.phi = phi
        self.lam = lam
        self.objective = objective
        self.binding = binding
        self.status = status
        self.basis = basis
        self.at_upper = at_upper
        self.pivots = pivots
        self.flips = flips

    @property
    def optimal(self):
        return self.status == SolveStatus.OPTIMAL

    def __repr__(self):
        return "<FluidSolution {} objective={!r} phi={}>".format(
            self.status.value,
            self.objective,
            None if self.phi is None else self.phi.tolist(),
        )


def build_fluid_lp(u, est, kappa):
    """Assemble the fluid LP from a context mass, plug-in expectations and budget rates."""
    u = np.asarray(u, dtype=float)
    kappa = np.asarray(kappa, dtype=float)
    R = np.asarray(est.R_hat, dtype=float)
    C = np.asarray(est.C_hat, dtype=float)
    if u.ndim != 1 or R.shape != u.shape:
        raise DomainError("context mass {} and rewards {} disagree".format(u.shape, R.shape))
    if C.ndim != 2 or C.shape[1] != u.size:
        raise DomainError("consumption matrix {} does not have {} columns".format(C.shape, u.size))
    if kappa.shape != (C.shape[0],):
        raise DomainError("budget vector {} does not match {} resources".format(kappa.shape, C.shape[0]))
    if np.any(kappa < 0):
        raise DomainError("budget rates must be nonnegative, got {}".format(kappa.tolist()))
    return FluidLp(u * R, C * u[None, :], kappa)


def _failure(lp, reason, pivots=0, flips=0):
    logger.warning("fluid LP numeric failure: %s", reason)
    return FluidSolution(None, None, None, (), SolveStatus.NUMERIC_FAILURE, pivots=pivots, flips=flips)


def _values(lp, matrix, cost, upper, basis, at_upper):
    """Basis inverse, basic values, duals and reduced costs for a basis."""
    fixed = np.where(at_upper, upper, 0.0)
    fixed[basis] = 0.0
    B_inv = np.linalg.inv(matrix[:, basis])
    x_B = B_inv.dot(lp.rhs - matrix.dot(np.where(np.isfinite(fixed), fixed, 0.0)))
    y = cost[basis].dot(B_inv)
    reduced = cost - y.dot(matrix)
    return B_inv, x_B, y, reduced


def solve_lp(lp, binding_tol=BINDING_TOLERANCE, condition_limit=CONDITION_LIMIT, warm_start=None):
    """Solve the fluid LP with a bounded-variable primal simplex under Bland's rule.

    ``warm_start`` may be a previous optimal FluidSolution of an LP with the
    same shape; its basis is reused when still primal feasible.
    """
    k, n = lp.n_vars, lp.n_cons
    total = k + n
    matrix = np.hstack([lp.cons, np.eye(n)])
    upper = np.concatenate([np.ones(k), np.full(n, np.inf)])
    cost = np.concatenate([lp.obj, np.zeros(n)])

    cold_basis = list(range(k, total))
    warm = warm_start is not None and warm_start.optimal and len(warm_start.basis) == n
    if warm:
        basis = list(warm_start.basis)
        at_upper = np.array(warm_start.at_upper, dtype=bool)
    else:
        basis = list(cold_basis)
        at_upper = np.zeros(total, dtype=bool)

    pivots = flips = 0
    max_iterations = 50 * total + 100
    for _ in range(max_iterations):
        try:
            B_inv, x_B, y, reduced = _values(lp, matrix, cost, upper, basis, at_upper)
        except np.linalg.LinAlgError as e:
            if not warm:
                return _failure(lp, "singular basis ({})".format(e), pivots, flips)
            x_B = None
        if warm:
            warm = False
            feasible = x_B is not None and np.all(x_B >= -RATIO_TOLERANCE) and np.all(
                x_B <= upper[basis] + RATIO_TOLERANCE
            )
            if not feasible:
                basis = list(cold_basis)
                at_upper = np.zeros(total, dtype=bool)
                continue

        improving = np.where(at_upper, reduced < -PRICING_TOLERANCE, reduced > PRICING_TOLERANCE)
        improving[basis] = False
        # Bland: lowest improving index enters
        candidates = np.flatnonzero(improving)
        if candidates.size == 0:
            return _optimal(lp, matrix, upper, basis, at_upper, x_B, y, binding_tol, pivots, flips)

        entering = int(candidates[0])
        direction = 1.0 if not at_upper[entering] else -1.0
        column = B_inv.dot(matrix[:, entering])
        delta = -direction * column

        # candidates are (step, variable index, leaves at upper bound)
        best = (upper[entering], entering, None)
        for position, var in enumerate(basis):
            if delta[position] < -RATIO_TOLERANCE:
                step = max(x_B[position], 0.0) / -delta[position]
                candidate = (step, var, False)
            elif delta[position] > RATIO_TOLERANCE and np.isfinite(upper[var]):
                step = max(upper[var] - x_B[position], 0.0) / delta[position]
                candidate = (step, var, True)
            else:
                continue
            if candidate[0] < best[0] - RATIO_TOLERANCE or (
                abs(candidate[0] - best[0]) <= RATIO_TOLERANCE and candidate[1] < best[1]
            ):
                best = candidate

        step, leaving, leaves_upper = best
        if not np.isfinite(step):
            return _failure(lp, "unbounded direction on variable {}".format(entering), pivots, flips)
        if leaving == entering:
            at_upper[entering] = not at_upper[entering]
            flips += 1
            continue

        position = basis.index(leaving)
        basis[position] = entering
        at_upper[entering] = False
        at_upper[leaving] = leaves_upper
        pivots += 1
        if np.linalg.cond(matrix[:, basis]) > condition_limit:
            return _failure(lp, "basis condition number above {:.0e}".format(condition_limit), pivots, flips)

    return _failure(lp, "iteration limit reached", pivots, flips)


def _optimal(lp, matrix, upper, basis, at_upper, x_B, y, binding_tol, pivots, flips):
    k = lp.n_vars
    x = np.where(at_upper, upper, 0.0)
    x[basis] = x_B
    phi = np.clip(x[:k], 0.0, 1.0)
    lam = np.maximum(y, 0.0)
    objective = float(lp.obj.dot(phi))
    binding = binding_constraints_for(phi, lp.rhs, lp.cons, binding_tol)
    return FluidSolution(
        phi,
        lam,
        objective,
        binding,
        SolveStatus.OPTIMAL,
        basis=tuple(basis),
        at_upper=tuple(bool(v) for v in at_upper),
        pivots=pivots,
        flips=flips,
    )


def binding_constraints_for(phi, kappa, A, tol=BINDING_TOLERANCE):
    slack = np.asarray(kappa, dtype=float) - np.asarray(A, dtype=float).dot(phi)
    return tuple(int(i) for i in np.nonzero(slack <= tol)[0])


def binding_constraints(sol, kappa, A, tol=BINDING_TOLERANCE):
    """Indices (0-based) of resource constraints with slack at most ``tol``."""
    if not sol.optimal:
        raise DomainError("binding constraints need an optimal solution")
    return binding_constraints_for(sol.phi, kappa, A, tol)


def dual_objective(lp, lam):
    """kappa . lam plus the box duals max(0, w - A^T lam) implied by ``lam``."""
    lam = np.asarray(lam, dtype=float)
    return float(lp.rhs.dot(lam) + np.maximum(lp.obj - lp.cons.T.dot(lam), 0.0).sum())


def check_solution(lp, sol, feasibility_tol=1e-9, dual_tol=1e-8):
    """Return the FluidSolution invariants that ``sol`` violates."""
    if not sol.optimal:
        return ["status is {}".format(sol.status.value)]
    problems = []
    load = lp.cons.dot(sol.phi)
    if np.any(load > lp.rhs + feasibility_tol):
        problems.append("resource constraint exceeded: {}".format((load - lp.rhs).tolist()))
    if np.any(sol.phi < 0) or np.any(sol.phi > 1):
        problems.append("control outside [0, 1]")
    if np.any(sol.lam < 0):
        problems.append("negative dual")
    slackness = sol.lam * (lp.rhs - load)
    if np.any(np.abs(slackness) > dual_tol):
        problems.append("complementary slackness off by {}".format(float(np.abs(slackness).max())))
    gap = abs(sol.objective - dual_objective(lp, sol.lam))
    if gap > dual_tol:
        problems.append("duality gap {}".format(gap))
    return problems
