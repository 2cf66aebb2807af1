import itertools
import math

import mock
import numpy as np
from django.test import SimpleTestCase

from core_model.instance import true_expectations
from core_model.presets import load_preset
from estimators.expectations import ExpectationEstimate
from fluid_lp.solver import (
    FluidLp,
    SolveStatus,
    binding_constraints,
    build_fluid_lp,
    check_solution,
    dual_objective,
    solve_lp,
)
from utils.exceptions import DomainError


def preset_lp(kappa):
    instance = load_preset("paper-nondegenerate")
    R, C = true_expectations(instance)
    return build_fluid_lp(instance.context_mass, ExpectationEstimate(R, C, None), kappa)


def random_lp(rng, reward_floor=0.0):
    k = rng.integers(1, 5)
    n = rng.integers(1, 4)
    u = rng.dirichlet(np.ones(k))
    estimate = ExpectationEstimate(rng.uniform(reward_floor, 1.0, k), rng.random((n, k)), None)
    return build_fluid_lp(u, estimate, rng.uniform(0.1, 2.0, n))


def vertex_value(lp):
    """Best objective over all basic feasible points of {A x <= kappa, 0 <= x <= 1}."""
    k = lp.n_vars
    rows = np.vstack([lp.cons, -np.eye(k), np.eye(k)])
    rhs = np.concatenate([lp.rhs, np.zeros(k), np.ones(k)])
    best = -math.inf
    for active in itertools.combinations(range(rows.shape[0]), k):
        active = list(active)
        system = rows[active]
        if abs(np.linalg.det(system)) < 1e-12:
            continue
        x = np.linalg.solve(system, rhs[active])
        if np.all(rows.dot(x) <= rhs + 1e-9):
            best = max(best, float(lp.obj.dot(x)))
    return best


class TestPresetCheckpoints(SimpleTestCase):
    def test_coefficients(self):
        lp = preset_lp((1.0, 1.0))
        np.testing.assert_allclose(lp.obj, [0.3, 0.36, 0.32], atol=1e-15)
        np.testing.assert_allclose(lp.cons, [[0.3, 0.6, 0.4], [0.6, 0.3, 0.4]], atol=1e-15)

    def test_nondegenerate_optimum(self):
        lp = preset_lp((1.0, 1.0))
        sol = solve_lp(lp)
        self.assertIs(sol.status, SolveStatus.OPTIMAL)
        np.testing.assert_allclose(sol.phi, [2.0 / 3, 2.0 / 3, 1.0], atol=1e-9)
        self.assertAlmostEqual(sol.objective, 0.76, places=12)
        self.assertEqual(sol.binding, (0, 1))
        self.assertEqual(check_solution(lp, sol), [])

    def test_degenerate_optimum(self):
        lp = preset_lp((1.0, 1.15))
        sol = solve_lp(lp)
        np.testing.assert_allclose(sol.phi, [1.0, 0.5, 1.0], atol=1e-9)
        self.assertAlmostEqual(sol.objective, 0.80, places=12)
        self.assertEqual(check_solution(lp, sol), [])

    def test_box_only(self):
        lp = preset_lp((10.0, 10.0))
        sol = solve_lp(lp)
        np.testing.assert_allclose(sol.phi, [1.0, 1.0, 1.0])
        self.assertAlmostEqual(sol.objective, 0.98, places=12)
        self.assertEqual(sol.binding, ())
        np.testing.assert_array_equal(sol.lam, [0.0, 0.0])

    def test_binding_tolerance(self):
        lp = preset_lp((1.0, 1.0))
        sol = solve_lp(lp)
        self.assertEqual(binding_constraints(sol, lp.rhs, lp.cons), (0, 1))
        box = solve_lp(preset_lp((10.0, 10.0)))
        self.assertEqual(binding_constraints(box, lp.rhs * 10, lp.cons), ())
        self.assertEqual(binding_constraints(box, lp.rhs * 10, lp.cons, tol=math.inf), (0, 1))


class TestBuildFluidLp(SimpleTestCase):
    def test_point_mass_context(self):
        estimate = ExpectationEstimate([0.7, 0.2], [[0.5, 0.5]], None)
        lp = build_fluid_lp([1.0, 0.0], estimate, [0.4])
        np.testing.assert_array_equal(lp.obj, [0.7, 0.0])
        sol = solve_lp(lp)
        self.assertAlmostEqual(sol.phi[0], 0.8)
        self.assertAlmostEqual(sol.objective, 0.56)

    def test_dimension_mismatch(self):
        estimate = ExpectationEstimate([0.7, 0.2], [[0.5, 0.5]], None)
        with self.assertRaises(DomainError):
            build_fluid_lp([0.5, 0.3, 0.2], estimate, [0.4])
        with self.assertRaises(DomainError):
            build_fluid_lp([0.5, 0.5], estimate, [0.4, 0.4])

    def test_negative_budget(self):
        estimate = ExpectationEstimate([0.7, 0.2], [[0.5, 0.5]], None)
        with self.assertRaises(DomainError):
            build_fluid_lp([0.5, 0.5], estimate, [-0.1])

    def test_exhausted_resource_blocks_its_consumers(self):
        estimate = ExpectationEstimate([0.7, 0.2], [[0.5, 0.0], [0.1, 0.1]], None)
        sol = solve_lp(build_fluid_lp([0.5, 0.5], estimate, [0.0, 1.0]))
        np.testing.assert_allclose(sol.phi, [0.0, 1.0], atol=1e-12)


class TestSolveLp(SimpleTestCase):
    def test_matches_vertex_enumeration(self):
        rng = np.random.default_rng(2024)
        for _ in range(200):
            lp = random_lp(rng)
            sol = solve_lp(lp)
            self.assertTrue(sol.optimal)
            self.assertAlmostEqual(sol.objective, vertex_value(lp), delta=1e-9)
            self.assertEqual(check_solution(lp, sol), [])

    def test_monotone_in_budget(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            lp = random_lp(rng)
            larger = FluidLp(lp.obj, lp.cons, lp.rhs + rng.uniform(0.0, 0.5, lp.n_cons))
            self.assertGreaterEqual(solve_lp(larger).objective, solve_lp(lp).objective - 1e-12)

    def test_budget_difference_bound(self):
        rng = np.random.default_rng(12)
        for _ in range(200):
            lp = random_lp(rng)
            other = FluidLp(lp.obj, lp.cons, rng.uniform(0.1, 2.0, lp.n_cons))
            j_first = solve_lp(lp).objective
            j_other = solve_lp(other).objective
            shortfall = float(np.max(np.maximum(lp.rhs - other.rhs, 0.0)))
            self.assertLessEqual(j_first - j_other, shortfall / lp.rhs.min() * j_first + 1e-9)

    def test_activity_lower_bound(self):
        rng = np.random.default_rng(13)
        for _ in range(500):
            k = rng.integers(1, 5)
            n = rng.integers(1, 4)
            u = rng.dirichlet(np.ones(k))
            estimate = ExpectationEstimate(rng.uniform(0.05, 1.0, k), rng.random((n, k)), None)
            kappa = rng.uniform(0.1, 2.0, n)
            sol = solve_lp(build_fluid_lp(u, estimate, kappa))
            self.assertGreaterEqual(u.dot(sol.phi), min(1.0, kappa.min()) - 1e-9)

    def test_dual_objective_closes_the_gap(self):
        rng = np.random.default_rng(14)
        for _ in range(100):
            lp = random_lp(rng)
            sol = solve_lp(lp)
            self.assertTrue(np.all(sol.lam >= 0))
            self.assertAlmostEqual(dual_objective(lp, sol.lam), sol.objective, delta=1e-8)

    def test_warm_start_reaches_the_same_value(self):
        rng = np.random.default_rng(15)
        lp = random_lp(rng)
        previous = solve_lp(lp)
        for _ in range(50):
            shifted = FluidLp(lp.obj, lp.cons, np.maximum(lp.rhs + rng.normal(0.0, 0.05, lp.n_cons), 0.0))
            warm = solve_lp(shifted, warm_start=previous)
            self.assertAlmostEqual(warm.objective, solve_lp(shifted).objective, delta=1e-12)
            previous = warm

    def test_warm_start_on_a_nearby_budget_needs_no_pivot(self):
        with mock.patch("numpy.linalg.cond", return_value=1.0) as cond:
            previous = solve_lp(preset_lp((1.0, 1.0)))
            self.assertGreater(previous.pivots, 0)
            self.assertTrue(cond.called)
            cond.reset_mock()

            lp = preset_lp((1.001, 1.002))
            warm = solve_lp(lp, warm_start=previous)
            cond.assert_not_called()
        self.assertEqual((warm.pivots, warm.basis), (0, previous.basis))
        np.testing.assert_allclose(warm.phi, solve_lp(lp).phi, atol=1e-12)

    def test_deterministic(self):
        lp = preset_lp((1.0, 1.15))
        first, second = solve_lp(lp), solve_lp(lp)
        np.testing.assert_array_equal(first.phi, second.phi)
        self.assertEqual((first.basis, first.pivots), (second.basis, second.pivots))

    def test_condition_guard(self):
        sol = solve_lp(preset_lp((1.0, 1.0)), condition_limit=1.0)
        self.assertIs(sol.status, SolveStatus.NUMERIC_FAILURE)
        self.assertIsNone(sol.phi)
        self.assertIn("status is numeric_failure", check_solution(preset_lp((1.0, 1.0)), sol))

    def test_binding_needs_optimal_solution(self):
        sol = solve_lp(preset_lp((1.0, 1.0)), condition_limit=1.0)
        with self.assertRaises(DomainError):
            binding_constraints(sol, [1.0, 1.0], [[0.3, 0.6, 0.4], [0.6, 0.3, 0.4]])
