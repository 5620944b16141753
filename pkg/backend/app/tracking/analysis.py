"""Parameter-space analyses: tightest tracking bound, boundary triangles, tracking power, region maps.

Maps and power estimates use the normalization delta = 2, so r_p and r_t are in
units of delta / 2.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from app.core.exceptions import InvalidInstanceError
from app.core.models import Lemma, ProblemClass
from app.tracking.classifier import GRID_LABELS, classify_lattice
from app.tracking.exactnum import NumberLike, parse_rational


logger = logging.getLogger(__name__)

NORMAL_DELTA = Fraction(2)

Point = Tuple[Fraction, Fraction]
Window = Tuple[Fraction, Fraction, Fraction, Fraction]

DEFAULT_WINDOW: Window = (Fraction(0), Fraction(2), Fraction(0), Fraction(2))

# GRID_LABELS indices that count towards tracking power
SOLVABLE_OR_BOUNDARY = (2, 3, 4)
OVER_CONSTRAINED_CODES = (1, 5, 6)


def c_star(r_p: Fraction, delta: Fraction) -> int:
    return math.ceil(Fraction(delta) / Fraction(r_p))


def rt_star(r_p: NumberLike, delta: NumberLike, c: int) -> Fraction:
    """Tightest r_t for which every initial I-state in [r_p, r_t] can be tracked privately"""
    r_p, delta = parse_rational(r_p), parse_rational(delta)
    if r_p <= 0 or delta <= 0 or c < 1:
        raise InvalidInstanceError("rt_star needs r_p > 0, delta > 0 and c >= 1")
    if r_p >= delta:
        return 2 * r_p
    if c == 1:
        return delta
    k = c_star(r_p, delta)
    if c < k:
        return delta / c
    if r_p <= delta * k / (k * k - 1):
        return (k + 1) * r_p / k
    return delta / (k - 1)


@dataclass(frozen=True)
class Triangle:
    a: int
    vertices: Tuple[Point, Point, Point]

    @classmethod
    def for_a(cls, a: int) -> "Triangle":
        if a < 2:
            raise InvalidInstanceError("boundary triangles exist for a >= 2")
        q = a * a + a - 1
        return cls(a, (
            (Fraction(2, a), Fraction(2 * a + 2, a * a)),
            (Fraction(2 * a, a * a - 1), Fraction(2, a - 1)),
            (Fraction(2 * (a + 1), q), Fraction(2 * (a + 1) ** 2, q) - 2),
        ))

    @property
    def centroid(self) -> Point:
        xs, ys = zip(*self.vertices)
        return sum(xs) / 3, sum(ys) / 3

    @property
    def min_rt(self) -> Fraction:
        return min(v[1] for v in self.vertices)

    @property
    def max_rt(self) -> Fraction:
        return max(v[1] for v in self.vertices)

    def contains(self, r_p: NumberLike, r_t: NumberLike, strict: bool = True) -> bool:
        x, y = parse_rational(r_p), parse_rational(r_t)
        signs = []
        for (x1, y1), (x2, y2) in zip(self.vertices, self.vertices[1:] + self.vertices[:1]):
            signs.append((x2 - x1) * (y - y1) - (y2 - y1) * (x - x1))
        if strict:
            return all(s > 0 for s in signs) or all(s < 0 for s in signs)
        return all(s >= 0 for s in signs) or all(s <= 0 for s in signs)


def boundary_triangles(c: int) -> List[Triangle]:
    return [Triangle.for_a(a) for a in range(2, c + 1)]


@dataclass(frozen=True)
class PowerEstimate:
    c: int
    resolution: int
    estimate: Fraction
    error_bound: Fraction


def _edge_cells(good: np.ndarray, inside: np.ndarray) -> int:
    """Cells inside the region whose label differs from an inside 4-neighbour"""
    edge = np.zeros(good.shape, dtype=bool)
    for axis in (0, 1):
        differ = good[1:, :] != good[:-1, :] if axis == 0 else good[:, 1:] != good[:, :-1]
        both = inside[1:, :] & inside[:-1, :] if axis == 0 else inside[:, 1:] & inside[:, :-1]
        hit = differ & both
        if axis == 0:
            edge[1:, :] |= hit
            edge[:-1, :] |= hit
        else:
            edge[:, 1:] |= hit
            edge[:, :-1] |= hit
    return int(np.count_nonzero(edge & inside))


def tracking_power(c: int, resolution: int) -> PowerEstimate:
    """Area of solvable-or-boundary instances in 0 <= r_p <= r_t <= 2, by cell counting"""
    logger.info("++ tracking_power")
    n = resolution
    odd = 2 * np.arange(n, dtype=np.int64) + 1
    r_t, r_p = np.meshgrid(odd, odd, indexing="ij")
    codes = classify_lattice(r_p, r_t, np.int64(2 * n), c)
    good = np.isin(codes, SOLVABLE_OR_BOUNDARY)
    rows, cols = np.indices((n, n))
    upper = rows > cols
    diagonal = rows == cols
    full = int(np.count_nonzero(good & upper))
    half = int(np.count_nonzero(good & diagonal))
    area = Fraction(4, n * n)
    estimate = Fraction(2 * full + half, 2) * area
    error = _edge_cells(good, rows >= cols) * area
    logger.info("-- tracking_power")
    return PowerEstimate(c, resolution, estimate, error)


@dataclass(frozen=True)
class RegionGrid:
    """codes[j, i] is the GRID_LABELS index at (rp_centres[i], rt_centres[j])"""

    c: int
    resolution: int
    window: Window
    rp_centres: Tuple[Fraction, ...]
    rt_centres: Tuple[Fraction, ...]
    codes: np.ndarray

    def label_at(self, i: int, j: int) -> Tuple[ProblemClass, Optional[Lemma]]:
        return GRID_LABELS[int(self.codes[j, i])]

    def rows(self):
        """(r_p, r_t, class, lemma) ordered by r_t, then r_p"""
        for j, r_t in enumerate(self.rt_centres):
            for i, r_p in enumerate(self.rp_centres):
                yield (r_p, r_t) + self.label_at(i, j)

    def count(self, codes, above_diagonal: bool = False) -> int:
        """Cells carrying any of `codes`; optionally only those with r_p < r_t"""
        mask = np.isin(self.codes, codes)
        if above_diagonal:
            rp = np.array(self.rp_centres, dtype=object)
            rt = np.array(self.rt_centres, dtype=object)
            mask = mask & (rt[:, None] > rp[None, :]).astype(bool)
        return int(np.count_nonzero(mask))


def _centres(lo: Fraction, hi: Fraction, n: int) -> List[Fraction]:
    step = (hi - lo) / (2 * n)
    return [lo + (2 * i + 1) * step for i in range(n)]


def region_map(c: int, resolution: int, window: Window = DEFAULT_WINDOW) -> RegionGrid:
    """classify() at every cell centre of a resolution x resolution grid, delta = 2"""
    if resolution < 2:
        raise InvalidInstanceError("resolution must be at least 2")
    rp_lo, rp_hi, rt_lo, rt_hi = (parse_rational(v) for v in window)
    if rp_lo < 0 or rt_lo < 0 or rp_hi <= rp_lo or rt_hi <= rt_lo:
        raise InvalidInstanceError("window must be nonnegative with lo < hi on both axes")
    rp = _centres(rp_lo, rp_hi, resolution)
    rt = _centres(rt_lo, rt_hi, resolution)
    scale = math.lcm(*(x.denominator for x in rp + rt + [NORMAL_DELTA]))
    rp_int = np.array([int(x * scale) for x in rp], dtype=object)
    rt_int = np.array([int(x * scale) for x in rt], dtype=object)
    codes = classify_lattice(rp_int[None, :], rt_int[:, None], int(NORMAL_DELTA * scale), c)
    return RegionGrid(c, resolution, (rp_lo, rp_hi, rt_lo, rt_hi), tuple(rp), tuple(rt), codes)
