import logging
import os

from django.conf import settings as django_settings
from django.core.management.base import BaseCommand, CommandError

from cli.config import (
    config_from_dict,
    config_to_dict,
    dump_config,
    load_config,
    resolve_instance,
    resolve_policy,
    resolve_workers,
)
from core_model.presets import PRESETS
from simulator.experiment import check_regret_sanity, run_experiment
from simulator.reports import summary_table, write_gnuplot, write_report_csv
from simulator.trials import run_trial
from utils.exceptions import ConfigError, DomainError
from utils.streams import trial_seed

logger = logging.getLogger(__name__)

# option dest -> config key
OPTION_KEYS = {
    "preset": "preset",
    "instance": "instance",
    "mode": "mode",
    "horizons": "horizons",
    "estimations": "n_estimations",
    "trials": "n_trials",
    "seed": "seed",
    "out": "out",
    "policy": "policy",
    "c_h": "c_h",
    "kernel": "kernel",
    "grid_points": "grid_points",
    "workers": "workers",
    "gnuplot": "gnuplot",
}
FLAG_KEYS = {"trajectories": "trajectories", "t_quantile": "t_quantile"}


def trajectory_path(out, T):
    stem, _ = os.path.splitext(out)
    return "{}_trajectory_T{}.csv".format(stem, T)


class Command(BaseCommand):
    help = "Estimate the regret of a policy over a ladder of horizons and write a CSV report."

    def add_arguments(self, parser):
        parser.add_argument("--config", help="experiment file (key = value lines)")
        parser.add_argument("--preset", choices=sorted(PRESETS))
        parser.add_argument("--instance", help="instance file")
        parser.add_argument("--mode", choices=["full", "partial"])
        parser.add_argument("--horizons", type=int, nargs="+")
        parser.add_argument("--estimations", type=int, help="batches per horizon")
        parser.add_argument("--trials", type=int, help="trials per batch")
        parser.add_argument("--seed", type=int, help="master seed")
        parser.add_argument("--out", help="report CSV path")
        parser.add_argument("--policy", choices=["resolving", "static"])
        parser.add_argument("--paper-protocol", action="store_true", help="50 x 400 trials, T = 5000 * 2^k, k = 0..5")
        parser.add_argument("--trajectories", action="store_true", help="write the first trial of every horizon")
        parser.add_argument("--t-quantile", action="store_true", help="Student-t confidence intervals")
        parser.add_argument("--c-h", type=float, help="bandwidth constant")
        parser.add_argument("--kernel")
        parser.add_argument("--grid-points", type=int)
        parser.add_argument("--workers", type=int)
        parser.add_argument("--gnuplot", help="also write a gnuplot data file")
        parser.add_argument("--dump-config", help="write the effective configuration and continue")

    def build_config(self, options):
        data = {}
        if options.get("config"):
            data.update(config_to_dict(load_config(options["config"])))
        if options.get("paper_protocol"):
            protocol = django_settings.RESOLVE_PAPER_PROTOCOL
            data.update(
                horizons=protocol["horizons"],
                n_estimations=protocol["n_estimations"],
                n_trials=protocol["n_trials"],
            )
        # a source given on the command line replaces the one in the file
        if options.get("preset") is not None or options.get("instance") is not None:
            data.pop("preset", None)
            data.pop("instance", None)
        for dest, key in OPTION_KEYS.items():
            if options.get(dest) is not None:
                data[key] = options[dest]
        for dest, key in FLAG_KEYS.items():
            if options.get(dest):
                data[key] = True

        protocol = django_settings.RESOLVE_DEFAULT_PROTOCOL
        data.setdefault("horizons", protocol["horizons"])
        data.setdefault("n_estimations", protocol["n_estimations"])
        data.setdefault("n_trials", protocol["n_trials"])
        data.setdefault("mode", "full")
        data.setdefault("seed", 0)
        data.setdefault("out", "regret.csv")
        return config_from_dict(data)

    def handle(self, *args, **options):
        try:
            config = self.build_config(options)
            instance = resolve_instance(config)
            policy_spec = resolve_policy(config)
        except (ConfigError, DomainError) as e:
            raise CommandError("invalid configuration: {}".format(e), returncode=2)

        if options.get("dump_config"):
            try:
                dump_config(config, options["dump_config"])
            except ConfigError as e:
                raise CommandError("cannot dump configuration: {}".format(e), returncode=2)

        logger.info(
            "running %s on %s (%s) horizons=%s %dx%d",
            config.policy,
            config.source,
            config.mode.value,
            list(config.horizons),
            config.n_estimations,
            config.n_trials,
        )
        report = run_experiment(
            instance,
            config.mode,
            config.horizons,
            config.n_estimations,
            config.n_trials,
            config.seed,
            policy_spec=policy_spec,
            workers=resolve_workers(config),
            t_quantile=config.t_quantile,
        )

        write_report_csv(report, config.out)
        if config.gnuplot:
            write_gnuplot(report, config.gnuplot)
        if config.trajectories:
            for T in config.horizons:
                path = trajectory_path(config.out, T)
                run_trial(
                    instance.with_horizon(T),
                    config.mode,
                    policy_spec,
                    trial_seed(config.seed, T, 0, 0),
                    trajectory_path=path,
                )
                logger.info("trajectory of T=%d written to %s", T, path)

        self.stdout.write(summary_table(report))
        self.stdout.write("report written to {}".format(config.out))

        violations = check_regret_sanity(report)
        if violations:
            raise CommandError(
                "mean regret below minus its CI half-width at T = {}".format(
                    ", ".join(str(h.T) for h in violations)
                ),
                returncode=1,
            )
