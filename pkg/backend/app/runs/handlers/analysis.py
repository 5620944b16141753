import os

from app.core.config import settings
from app.core.models import OutputFormat
from app.render.svg import render_region_map
from app.render.tables import grid_csv
from app.runs.result import RunResult
from app.schemas.instance import RunConfig
from app.schemas.report import RtStarOut, dump, power_out
from app.tracking.analysis import DEFAULT_WINDOW, OVER_CONSTRAINED_CODES, region_map, rt_star, tracking_power
from app.tracking.exactnum import format_fixed, format_rational, parse_rational


def run_rtstar(config: RunConfig) -> RunResult:
    """Tightest tracking bound for (r_p, delta, c)"""
    config.params.require("r_p", "delta", "c")
    params = config.params
    value = rt_star(parse_rational(params.r_p), parse_rational(params.delta), params.c)
    if config.format_or(OutputFormat.TEXT) is OutputFormat.JSON:
        doc = RtStarOut(r_p=params.r_p, delta=params.delta, c=params.c, rt_star=format_rational(value))
        return RunResult(text=dump(doc) + "\n")
    return RunResult(text=format_rational(value) + "\n")


def _map_paths(config: RunConfig, fmt: OutputFormat, c: int):
    if config.output is None:
        stem = os.path.join(settings.output_dir, f"region_map_c{c}")
    elif fmt is OutputFormat.BOTH:
        stem = os.path.splitext(config.output)[0]
    else:
        return {fmt: config.output}
    wanted = [OutputFormat.CSV, OutputFormat.SVG] if fmt is OutputFormat.BOTH else [fmt]
    return {f: f"{stem}.{f.value}" for f in wanted}


def run_map(config: RunConfig) -> RunResult:
    """Classification grid at delta = 2, written as CSV and/or SVG"""
    config.params.require("c")
    c = config.params.c
    fmt = config.format_or(OutputFormat.BOTH)
    if fmt not in (OutputFormat.CSV, OutputFormat.SVG, OutputFormat.BOTH):
        fmt = OutputFormat.BOTH
    grid = region_map(c, config.resolution or settings.map_resolution, config.window_bounds() or DEFAULT_WINDOW)

    result = RunResult()
    for kind, path in _map_paths(config, fmt, c).items():
        result.artifacts[path] = grid_csv(grid) if kind is OutputFormat.CSV else render_region_map(grid)
    over = grid.count(OVER_CONSTRAINED_CODES, above_diagonal=True)
    result.text = "".join(f"wrote {path}\n" for path in result.artifacts)
    result.notes.append(f"{grid.resolution}x{grid.resolution} cells, {over} over-constrained with r_p < r_t")
    return result


def run_power(config: RunConfig) -> RunResult:
    """Tracking power p(c) with its grid error bound"""
    config.params.require("c")
    estimate = tracking_power(config.params.c, config.resolution or settings.power_resolution)
    doc = power_out(estimate, settings.decimal_places)
    if config.format_or(OutputFormat.JSON) is OutputFormat.TEXT:
        text = (
            f"p({estimate.c}) = {format_fixed(estimate.estimate, 4)} "
            f"± {format_fixed(estimate.error_bound, 4)} (resolution {estimate.resolution})\n"
        )
        return RunResult(text=text)
    return RunResult(text=dump(doc) + "\n")
