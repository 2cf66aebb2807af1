"""Report emission: CSV, gnuplot data and the console summary."""
import os

from utils.csvdump import dump_rows

REPORT_COLUMNS = [
    "T",
    "mode",
    "fluid_value",
    "mean_regret",
    "ci99_halfwidth",
    "n_estimations",
    "n_trials",
    "slope_global",
]


def report_rows(report):
    slope = "" if report.slope is None else report.slope
    return [
        {
            "T": h.T,
            "mode": report.mode.value,
            "fluid_value": h.fluid_value,
            "mean_regret": h.mean_regret,
            "ci99_halfwidth": h.ci99_halfwidth,
            "n_estimations": report.n_estimations,
            "n_trials": report.n_trials,
            "slope_global": slope,
        }
        for h in report.horizons
    ]


def write_report_csv(report, path):
    """Write one row per horizon with the columns of REPORT_COLUMNS."""
    return dump_rows(report_rows(report), REPORT_COLUMNS, path)


def write_gnuplot(report, path):
    """Write a whitespace separated data file for a line-plus-band plot.

    Plot with e.g. ``plot 'f.dat' u 1:2 w l, '' u 1:3:4 w filledcurves``.
    """
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w") as handle:
        handle.write("# mode {} n_estimations {} n_trials {}\n".format(
            report.mode.value, report.n_estimations, report.n_trials
        ))
        handle.write("# T mean_regret lower upper fluid_value\n")
        for h in report.horizons:
            handle.write("{} {!r} {!r} {!r} {!r}\n".format(
                h.T,
                h.mean_regret,
                h.mean_regret - h.ci99_halfwidth,
                h.mean_regret + h.ci99_halfwidth,
                h.fluid_value,
            ))
    return path


def summary_table(report):
    lines = ["{:>8}  {:>12}  {:>10}  {:>12}".format("T", "regret", "ci99", "fluid")]
    for h in report.horizons:
        lines.append("{:>8}  {:>12.4f}  {:>10.4f}  {:>12.4f}".format(
            h.T, h.mean_regret, h.ci99_halfwidth, h.fluid_value
        ))
    slope = "n/a" if report.slope is None else "{:.4f}".format(report.slope)
    lines.append("log-log slope: {}".format(slope))
    lines.extend("note: {}".format(note) for note in report.notes)
    return "\n".join(lines)
