"""CSV helpers."""
import csv
import os


def dump_rows(rows, headers, outfile_path):
    """
    Write an iterable of dict rows to a CSV file.

    Usage::

        >> from utils.csvdump import dump_rows
        >> dump_rows([{"t": 1, "a": 0}], ["t", "a"], "trajectory.csv")

    Missing keys are written as empty cells.
    """
    directory = os.path.dirname(outfile_path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(outfile_path, "w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=headers, extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    return outfile_path


def format_vector(values):
    """Join a vector into a single CSV cell."""
    return " ".join(repr(float(v)) for v in values)
