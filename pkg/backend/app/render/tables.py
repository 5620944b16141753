import csv
import io

from app.core.config import settings
from app.tracking.analysis import RegionGrid
from app.tracking.exactnum import format_number
from app.tracking.model import SimTrace


def _writer(buffer: io.StringIO):
    return csv.writer(buffer, lineterminator="\n")


def grid_csv(grid: RegionGrid) -> str:
    """One row per cell, ordered by r_t, then r_p"""
    buffer = io.StringIO()
    writer = _writer(buffer)
    writer.writerow(["r_p", "r_t", "class", "lemma"])
    places = settings.decimal_places
    for r_p, r_t, problem_class, lemma in grid.rows():
        writer.writerow([
            format_number(r_p, places),
            format_number(r_t, places),
            problem_class.value,
            lemma.value if lemma is not None else "",
        ])
    return buffer.getvalue()


def trace_csv(trace: SimTrace) -> str:
    buffer = io.StringIO()
    writer = _writer(buffer)
    writer.writerow(["k", "prior_size", "action", "posterior_size", "ppc_ok", "ttc_ok"])
    places = settings.decimal_places
    for step in trace.steps:
        writer.writerow([
            step.k,
            format_number(step.prior_size, places),
            step.action.token,
            format_number(step.posterior_size, places),
            str(step.ppc_ok).lower(),
            str(step.ttc_ok).lower(),
        ])
    return buffer.getvalue()
