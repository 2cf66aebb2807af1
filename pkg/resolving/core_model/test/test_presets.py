import numpy as np
from django.test import SimpleTestCase

from core_model.presets import PRESETS, load_preset
from core_model.instance import fluid_value
from utils.exceptions import DomainError


class TestPresets(SimpleTestCase):
    def test_tables(self):
        instance = load_preset("paper-nondegenerate")
        np.testing.assert_array_equal(instance.context_mass, [0.3, 0.3, 0.4])
        np.testing.assert_array_equal(instance.reward_table, [[1.2, 0.8], [1.3, 1.1], [0.7, 0.9]])
        np.testing.assert_array_equal(
            instance.consumption_table,
            [[[0.9, 1.1], [1.8, 2.2], [1.2, 0.8]], [[2.1, 1.9], [0.8, 1.2], [0.9, 1.1]]],
        )
        self.assertEqual((instance.r_max, instance.c_max, instance.T), (1.3, 2.2, 5000))

    def test_budgets(self):
        self.assertEqual(PRESETS["paper-nondegenerate"], (1.0, 1.0))
        self.assertEqual(PRESETS["paper-degenerate"], (1.0, 1.15))
        np.testing.assert_array_equal(load_preset("paper-degenerate").rho, [1.0, 1.15])

    def test_fluid_values(self):
        self.assertAlmostEqual(fluid_value(load_preset("paper-nondegenerate")), 3800.0, places=8)
        self.assertAlmostEqual(fluid_value(load_preset("paper-degenerate")), 4000.0, places=8)

    def test_horizon(self):
        self.assertEqual(load_preset("paper-degenerate", T=40000).T, 40000)

    def test_unknown(self):
        with self.assertRaises(DomainError):
            load_preset("paper")
