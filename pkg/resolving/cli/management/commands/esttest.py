from django.conf import settings as django_settings
from django.core.management.base import BaseCommand, CommandError

from cli.jsonschemas import kde_rate_schema, weissman_schema
from estimators.harness import kde_rate_suite, weissman_suite
from utils import kvformat
from utils.csvdump import dump_rows
from utils.exceptions import ConfigError, DomainError


class Command(BaseCommand):
    help = "Run a statistical check of the distribution estimators and write per-repetition rows as CSV."

    def add_arguments(self, parser):
        parser.add_argument("kind", choices=["weissman", "kde-rate"])
        parser.add_argument("--a", type=int, default=4, help="support size")
        parser.add_argument("--m", type=int, default=1000, help="sample size")
        parser.add_argument("--epsilon", type=float, default=0.1)
        parser.add_argument("--slack", type=float, default=0.12, help="allowed violation rate")
        parser.add_argument("--ms", type=int, nargs="+", default=[100, 10000], help="sample sizes")
        parser.add_argument("--reps", type=int, help="repetitions [2000 weissman, 50 kde-rate]")
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--kernel")
        parser.add_argument("--c-h", type=float)
        parser.add_argument("--grid-points", type=int, default=201)
        parser.add_argument("--out", help="CSV path [<kind>.csv]")

    def weissman(self, options):
        params = {
            "a": options["a"],
            "m": options["m"],
            "epsilon": options["epsilon"],
            "reps": 2000 if options.get("reps") is None else options["reps"],
            "seed": options["seed"],
            "slack": options["slack"],
        }
        kvformat.validate(params, weissman_schema)
        return weissman_suite(**params)

    def kde_rate(self, options):
        params = {
            "ms": options["ms"],
            "reps": 50 if options.get("reps") is None else options["reps"],
            "seed": options["seed"],
            "kernel": options.get("kernel") or getattr(django_settings, "RESOLVE_KERNEL", "gaussian4"),
            "c_h": (
                getattr(django_settings, "RESOLVE_BANDWIDTH_CONSTANT", 1.0)
                if options.get("c_h") is None else options["c_h"]
            ),
            "grid_points": options["grid_points"],
        }
        kvformat.validate(params, kde_rate_schema)
        return kde_rate_suite(**params)

    def handle(self, *args, **options):
        kind = options["kind"]
        try:
            result = self.weissman(options) if kind == "weissman" else self.kde_rate(options)
        except (ConfigError, DomainError) as e:
            raise CommandError("invalid parameters: {}".format(e), returncode=2)

        out = options.get("out") or "{}.csv".format(kind)
        dump_rows(result.rows, result.columns, out)
        for key, value in sorted(result.summary.items()):
            self.stdout.write("{}: {}".format(key, value))
        self.stdout.write("{} {} ({} rows in {})".format(
            result.name, "passed" if result.passed else "FAILED", len(result.rows), out
        ))
        if not result.passed:
            raise CommandError("{} suite failed".format(result.name), returncode=1)
