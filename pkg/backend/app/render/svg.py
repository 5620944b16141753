from fractions import Fraction
from typing import List, Optional

from jinja2 import Environment, FileSystemLoader, select_autoescape

from app.core.config import settings
from app.core.models import ProblemClass
from app.tracking.analysis import NORMAL_DELTA, RegionGrid, rt_star
from app.tracking.classifier import GRID_LABELS
from app.tracking.exactnum import format_fixed, format_number


COLOURS = {
    ProblemClass.UNDER_CONSTRAINED: "#4daf4a",
    ProblemClass.OVER_CONSTRAINED: "#999999",
    ProblemClass.BOUNDARY: "#f4a6c6",
    ProblemClass.TRIVIALLY_INFEASIBLE: "#ffffff",
}

LEGEND = [
    ("under-constrained", COLOURS[ProblemClass.UNDER_CONSTRAINED]),
    ("over-constrained", COLOURS[ProblemClass.OVER_CONSTRAINED]),
    ("boundary", COLOURS[ProblemClass.BOUNDARY]),
    ("trivially infeasible", COLOURS[ProblemClass.TRIVIALLY_INFEASIBLE]),
]

templates = Environment(
    loader=FileSystemLoader(settings.templates_dir),
    autoescape=select_autoescape(["svg", "j2"]),
    trim_blocks=True,
    lstrip_blocks=True,
)


def _coord(value: Fraction) -> str:
    return format_fixed(value, 3)


def _runs(grid: RegionGrid, cell: Fraction) -> List[dict]:
    """Each row's horizontal runs of equal label as one rect; rows drawn with r_t upward"""
    rects = []
    n = grid.resolution
    for j in range(n):
        row = grid.codes[j]
        y = (n - 1 - j) * cell
        start = 0
        for i in range(1, n + 1):
            if i < n and row[i] == row[start]:
                continue
            problem_class, _ = GRID_LABELS[int(row[start])]
            rects.append({
                "x": _coord(start * cell),
                "y": _coord(y),
                "width": _coord((i - start) * cell),
                "height": _coord(cell),
                "fill": COLOURS[problem_class],
            })
            start = i
    return rects


def _envelope(grid: RegionGrid, size: int) -> Optional[str]:
    rp_lo, rp_hi, rt_lo, rt_hi = grid.window
    points = []
    for r_p in grid.rp_centres:
        r_t = rt_star(r_p, NORMAL_DELTA, grid.c)
        if not rt_lo <= r_t <= rt_hi:
            continue
        x = (r_p - rp_lo) / (rp_hi - rp_lo) * size
        y = size - (r_t - rt_lo) / (rt_hi - rt_lo) * size
        points.append(f"{_coord(x)},{_coord(y)}")
    return " ".join(points) if len(points) > 1 else None


def render_region_map(grid: RegionGrid) -> str:
    size = settings.svg_canvas
    cell = Fraction(size, grid.resolution)
    rp_lo, rp_hi, rt_lo, rt_hi = grid.window
    template = templates.get_template("region_map.svg.j2")
    return template.render(
        size=size,
        title=(
            f"c = {grid.c}, r_p in [{format_number(rp_lo)}, {format_number(rp_hi)}], "
            f"r_t in [{format_number(rt_lo)}, {format_number(rt_hi)}], units of delta/2"
        ),
        rects=_runs(grid, cell),
        envelope=_envelope(grid, size),
        legend=LEGEND,
    )
