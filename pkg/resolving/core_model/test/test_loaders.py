import os
import shutil
import tempfile

import numpy as np
from django.test import SimpleTestCase

from core_model.presets import load_preset
from core_model.instance import fluid_value
from core_model.loaders import dump_instance, load_instance
from utils.exceptions import ConfigError

from .factories import ContinuousInstanceFactory

EXAMPLE_FILE = """\
# three contexts, two factors, two resources
name = example
T = 5000
rho = 1 1
r_max = 1.3
c_max = 2.2
context_mass = 0.3 0.3 0.4
factor_kind = finite
factor_mass = 0.5 0.5
reward = [
    1.2 0.8
    1.3 1.1
    0.7 0.9
]
consumption_1 = [
    0.9 1.1
    1.8 2.2
    1.2 0.8
]
consumption_2 = [
    2.1 1.9
    0.8 1.2
    0.9 1.1
]
"""


class TestLoadInstance(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def write(self, text):
        path = os.path.join(self.directory, "instance.txt")
        with open(path, "w") as handle:
            handle.write(text)
        return path

    def test_example_file_matches_preset(self):
        instance = load_instance(self.write(EXAMPLE_FILE))
        preset = load_preset("paper-nondegenerate")
        np.testing.assert_array_equal(instance.reward_table, preset.reward_table)
        np.testing.assert_array_equal(instance.consumption_table, preset.consumption_table)
        self.assertAlmostEqual(fluid_value(instance), 3800.0, places=7)

    def test_missing_horizon(self):
        text = EXAMPLE_FILE.replace("T = 5000\n", "")
        with self.assertRaises(ConfigError) as caught:
            load_instance(self.write(text))
        self.assertEqual(caught.exception.field, "T")

    def test_unknown_keys_are_listed(self):
        text = EXAMPLE_FILE + "colour = blue\nsize = 3\n"
        with self.assertRaisesRegex(ConfigError, "unknown keys: colour, size"):
            load_instance(self.write(text))

    def test_parse_error_carries_line_number(self):
        text = EXAMPLE_FILE.replace("factor_kind = finite", "factor_kind finite")
        with self.assertRaises(ConfigError) as caught:
            load_instance(self.write(text))
        self.assertEqual(caught.exception.line, 8)

    def test_missing_consumption_block(self):
        text = EXAMPLE_FILE.split("consumption_2")[0]
        with self.assertRaises(ConfigError) as caught:
            load_instance(self.write(text))
        self.assertEqual(caught.exception.field, "consumption_2")

    def test_invalid_mass(self):
        text = EXAMPLE_FILE.replace("context_mass = 0.3 0.3 0.4", "context_mass = 0.3 0.3 0.3")
        with self.assertRaisesRegex(ConfigError, "sums to"):
            load_instance(self.write(text))

    def test_finite_round_trip(self):
        preset = load_preset("paper-degenerate", T=1234)
        path = dump_instance(preset, os.path.join(self.directory, "dumped.txt"))
        loaded = load_instance(path)
        self.assertEqual(loaded.T, 1234)
        self.assertEqual(loaded.name, "paper-degenerate")
        np.testing.assert_array_equal(loaded.rho, preset.rho)
        np.testing.assert_array_equal(loaded.consumption_table, preset.consumption_table)

    def test_continuous_round_trip(self):
        instance = ContinuousInstanceFactory()
        path = dump_instance(instance, os.path.join(self.directory, "continuous.txt"))
        loaded = load_instance(path)
        self.assertFalse(loaded.factor_space.is_finite)
        self.assertEqual(loaded.factor_space.grid_points, instance.factor_space.grid_points)
        np.testing.assert_array_equal(loaded.reward_table, instance.reward_table)
