from django.test import SimpleTestCase, tag

from estimators.harness import KDE_RATE_COLUMNS, WEISSMAN_COLUMNS, kde_rate_suite, weissman_suite


class TestWeissmanSuite(SimpleTestCase):
    def test_small_run(self):
        result = weissman_suite(reps=200, seed=3)
        self.assertTrue(result.passed)
        self.assertEqual(len(result.rows), 200)
        self.assertEqual(sorted(result.rows[0]), sorted(WEISSMAN_COLUMNS))

    def test_seeded(self):
        first = weissman_suite(reps=50, seed=7)
        second = weissman_suite(reps=50, seed=7)
        self.assertEqual(first.rows, second.rows)

    def test_other_support_size(self):
        result = weissman_suite(a=6, m=500, reps=100, seed=1)
        self.assertTrue(result.passed)

    @tag("slow")
    def test_concentration_bound(self):
        result = weissman_suite(a=4, m=1000, epsilon=0.1, reps=2000, seed=0)
        self.assertLessEqual(result.summary["violation_rate"], 0.12)
        self.assertTrue(result.passed)


class TestKdeRateSuite(SimpleTestCase):
    def test_small_run(self):
        result = kde_rate_suite(ms=(100, 2000), reps=5, seed=0, grid_points=101)
        self.assertTrue(result.passed, result.summary)
        self.assertEqual(len(result.rows), 10)
        self.assertEqual(sorted(result.rows[0]), sorted(KDE_RATE_COLUMNS))

    def test_no_repetitions_fails(self):
        self.assertFalse(kde_rate_suite(ms=(100, 200), reps=0).passed)

    @tag("slow")
    def test_error_decreases_with_samples(self):
        result = kde_rate_suite(ms=(100, 10000), reps=50, seed=0)
        medians = result.summary["median_sup_error"]
        self.assertLess(medians[10000], medians[100])
        self.assertTrue(result.passed)
