import csv
import os
import shutil
import tempfile
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from simulator.reports import REPORT_COLUMNS

# one context and one factor: every trial earns exactly the fluid value
DETERMINISTIC_INSTANCE = """\
name = deterministic
T = 20
rho = 5
context_mass = 1
factor_kind = finite
factor_mass = 1
reward = [
    0.5
]
consumption_1 = [
    0.2
]
"""


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def path(self, name):
        return os.path.join(self.directory, name)

    def write(self, name, text):
        with open(self.path(name), "w") as handle:
            handle.write(text)
        return self.path(name)

    def read_csv(self, name):
        with open(self.path(name)) as handle:
            return list(csv.DictReader(handle))


class TestRunCommand(CommandTestCase):
    def run_command(self, **options):
        stdout = StringIO()
        call_command("run", stdout=stdout, **options)
        return stdout.getvalue()

    def test_writes_report(self):
        instance = self.write("instance.txt", DETERMINISTIC_INSTANCE)
        output = self.run_command(
            instance=instance,
            horizons=[20, 40],
            estimations=2,
            trials=2,
            out=self.path("regret.csv"),
            gnuplot=self.path("regret.dat"),
            workers=1,
        )
        rows = self.read_csv("regret.csv")
        self.assertEqual(list(rows[0]), REPORT_COLUMNS)
        self.assertEqual([row["T"] for row in rows], ["20", "40"])
        self.assertEqual([float(row["mean_regret"]) for row in rows], [0.0, 0.0])
        self.assertTrue(os.path.exists(self.path("regret.dat")))
        self.assertIn("report written to", output)
        self.assertIn("note: no slope", output)

    def test_trajectories(self):
        instance = self.write("instance.txt", DETERMINISTIC_INSTANCE)
        self.run_command(
            instance=instance,
            horizons=[20, 40],
            estimations=2,
            trials=1,
            out=self.path("regret.csv"),
            trajectories=True,
            workers=1,
        )
        self.assertEqual(len(self.read_csv("regret_trajectory_T20.csv")), 20)
        self.assertEqual(len(self.read_csv("regret_trajectory_T40.csv")), 40)

    def test_config_file_with_overrides(self):
        self.write("instance.txt", DETERMINISTIC_INSTANCE)
        config = self.write(
            "experiment.txt",
            "preset = paper-nondegenerate\nmode = full\nhorizons = 10 20\nn_estimations = 2\n"
            "n_trials = 1\nseed = 3\nout = {}\n".format(self.path("ignored.csv")),
        )
        self.run_command(
            config=config,
            instance=self.path("instance.txt"),
            out=self.path("regret.csv"),
            dump_config=self.path("effective.txt"),
            workers=1,
        )
        self.assertFalse(os.path.exists(self.path("ignored.csv")))
        with open(self.path("effective.txt")) as handle:
            effective = handle.read()
        self.assertIn("instance = ", effective)
        self.assertNotIn("preset", effective)
        self.assertIn("horizons = 10 20", effective)

    def test_unwritable_dump_exits_with_2(self):
        instance = self.write("instance.txt", DETERMINISTIC_INSTANCE)
        with self.assertRaises(CommandError) as ctx:
            self.run_command(
                instance=instance,
                horizons=[20],
                estimations=2,
                trials=1,
                out=self.path("regret #1.csv"),
                dump_config=self.path("effective.txt"),
                workers=1,
            )
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertFalse(os.path.exists(self.path("effective.txt")))
        self.assertFalse(os.path.exists(self.path("regret #1.csv")))

    def test_invalid_configuration_exits_with_2(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command(
                preset="paper-nondegenerate",
                horizons=[100, 50],
                estimations=2,
                trials=1,
                out=self.path("regret.csv"),
            )
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertFalse(os.path.exists(self.path("regret.csv")))

    def test_single_estimation_exits_with_2(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command(
                preset="paper-nondegenerate", horizons=[50], estimations=1, trials=1, out=self.path("regret.csv")
            )
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertFalse(os.path.exists(self.path("regret.csv")))

    def test_bad_instance_file_exits_with_2(self):
        instance = self.write("instance.txt", DETERMINISTIC_INSTANCE.replace("rho = 5", "rho = -1"))
        with self.assertRaises(CommandError) as ctx:
            self.run_command(instance=instance, horizons=[20], estimations=2, trials=1, out=self.path("r.csv"))
        self.assertEqual(ctx.exception.returncode, 2)


class TestEsttestCommand(CommandTestCase):
    def test_weissman_passes(self):
        stdout = StringIO()
        call_command("esttest", "weissman", reps=200, seed=3, out=self.path("weissman.csv"), stdout=stdout)
        self.assertEqual(len(self.read_csv("weissman.csv")), 200)
        self.assertIn("passed", stdout.getvalue())

    def test_kde_rate(self):
        stdout = StringIO()
        call_command(
            "esttest", "kde-rate", ms=[100, 2000], reps=5, grid_points=101, out=self.path("kde.csv"), stdout=stdout
        )
        self.assertEqual(len(self.read_csv("kde.csv")), 10)

    def test_zero_bandwidth_constant_exits_with_2(self):
        with self.assertRaises(CommandError) as ctx:
            call_command("esttest", "kde-rate", c_h=0.0, out=self.path("kde.csv"), stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertFalse(os.path.exists(self.path("kde.csv")))

    def test_zero_repetitions_exit_with_2(self):
        with self.assertRaises(CommandError) as ctx:
            call_command("esttest", "weissman", reps=0, out=self.path("weissman.csv"), stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertFalse(os.path.exists(self.path("weissman.csv")))

    def test_failing_suite_exits_with_1(self):
        # a loose threshold with no slack: some of the 500 runs will cross it
        with self.assertRaises(CommandError) as ctx:
            call_command(
                "esttest", "weissman", epsilon=0.99, slack=0.0, reps=500, out=self.path("w.csv"), stdout=StringIO()
            )
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertTrue(os.path.exists(self.path("w.csv")))
