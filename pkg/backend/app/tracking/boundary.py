"""Boundary-instance analysis: partition, impossibility zones, case labels, strategies.

For a boundary instance the sizes split into a PLUS region [r_p, A], the open
impossibility zone (A, B) and a MINUS region [B, r_t], where A = a*r_t - delta and
B = (a+1)*r_p - delta. Left of the zone only PLUS keeps the next size in bounds,
right of it only MINUS does, so the strategy from any start is forced. Zones are
the forced-action preimages of the first zone; whatever they never cover is the
feasible set.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from app.core.exceptions import (
    InfeasibleStartError,
    NotBoundaryError,
    UndeterminedError,
)
from app.core.models import CaseLabel, ProblemClass, Verdict
from app.tracking.classifier import classify
from app.tracking.exactnum import (
    Interval,
    IntervalSet,
    NumberLike,
    affine_image,
    format_number,
    format_rational,
    parse_rational,
)
from app.tracking.model import MINUS, PLUS, Action, ProblemInstance, StrategyWord


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Partition:
    """PLUS chain indexed right-to-left from the zone, MINUS chain left-to-right"""

    plus_intervals: Tuple[Interval, ...]
    minus_intervals: Tuple[Interval, ...]
    zone0: Interval

    @property
    def p(self) -> int:
        return len(self.plus_intervals)

    @property
    def m(self) -> int:
        return len(self.minus_intervals)

    @property
    def plus_region(self) -> Interval:
        return Interval.closed(self.plus_intervals[-1].lo, self.zone0.lo)

    @property
    def minus_region(self) -> Interval:
        return Interval.closed(self.zone0.hi, self.minus_intervals[-1].hi)

    @property
    def cells(self) -> Tuple[Interval, ...]:
        return self.plus_intervals + self.minus_intervals

    def tiling(self) -> IntervalSet:
        return IntervalSet(self.cells + (self.zone0,))


@dataclass(frozen=True)
class Zone:
    j: int
    interval: Interval


@dataclass
class ZoneReport:
    instance: ProblemInstance
    partition: Partition
    zones: List[Zone]
    case_label: Optional[CaseLabel]
    verdict: Verdict
    ratio: Optional[Fraction]
    feasible_set: IntervalSet
    taint_fractions: List[Fraction] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def zone_set(self) -> IntervalSet:
        return IntervalSet(z.interval for z in self.zones)

    @property
    def strategy_rule(self) -> str:
        zone0 = self.partition.zone0
        return (
            f"+ when size <= {format_number(zone0.lo)}; "
            f"- when size >= {format_number(zone0.hi)}"
        )

    def forced_action(self, x: NumberLike) -> Action:
        x = parse_rational(x)
        zone0 = self.partition.zone0
        if x <= zone0.lo:
            return PLUS
        if x >= zone0.hi:
            return MINUS
        raise InfeasibleStartError(f"initial I-state infeasible: size {format_number(x)} is in {zone0}")

    def zone_index(self, x: NumberLike) -> Optional[int]:
        for zone in self.zones:
            if x in zone.interval:
                return zone.j
        return None


def _require_boundary(p: ProblemInstance) -> None:
    result = classify(p)
    if result.problem_class is not ProblemClass.BOUNDARY:
        raise NotBoundaryError(f"not a boundary problem: {p} classifies as {result}")


def build_partition(p: ProblemInstance) -> Partition:
    _require_boundary(p)
    a = p.a
    zone0 = Interval.open(a * p.r_t - p.delta, (a + 1) * p.r_p - p.delta)

    plus = []
    right = zone0.lo
    while True:
        left = a * right - p.delta
        if left <= p.r_p:
            plus.append(Interval.closed(p.r_p, right))
            break
        plus.append(Interval(left, right, False, True))
        right = left

    minus = []
    left = zone0.hi
    while True:
        right = (a + 1) * left - p.delta
        if right >= p.r_t:
            minus.append(Interval.closed(left, p.r_t))
            break
        minus.append(Interval.closed(left, right))
        left = right

    partition = Partition(tuple(plus), tuple(minus), zone0)
    if partition.p > 1 and partition.m > 1:
        logger.warning("partition of %s has p=%d and m=%d", p, partition.p, partition.m)
    return partition


def _pull(interval: Interval, scale: int, delta: Fraction, times: int) -> Interval:
    lo, hi = interval.lo, interval.hi
    for _ in range(times):
        lo, hi = scale * lo - delta, scale * hi - delta
    return Interval.open(lo, hi)


def _closed_form_label(p: ProblemInstance, part: Partition) -> Tuple[Optional[CaseLabel], Optional[Fraction]]:
    """Label from the positions of r_p, r_t and their one-step images; None if no test applies"""
    a, delta, zone0 = p.a, p.delta, part.zone0
    if part.m == 1:
        n, scale, outer = part.p, a, p.r_p
        cells = part.plus_intervals
        y = (p.r_t + delta) / (a + 1)
        if outer in _pull(zone0, scale, delta, n):
            return CaseLabel.L9, None
        if y <= cells[n - 1].hi:
            return CaseLabel.L10, None
        inner = _pull(zone0, scale, delta, n - 1)
        if y in inner:
            return CaseLabel.L11, None
        if n < 2 or y not in cells[n - 2]:
            return None, None
        v = cells[n - 1].hi - p.r_p
        w = y - inner.hi
        low, high = Fraction(1, a**n * (a + 1)), Fraction(a ** (n - 1) * (a + 1))
    else:
        n, scale, outer = part.m, a + 1, p.r_t
        cells = part.minus_intervals
        y = (p.r_p + delta) / a
        if outer in _pull(zone0, scale, delta, n):
            return CaseLabel.L9, None
        if y >= cells[n - 1].lo:
            return CaseLabel.L10, None
        inner = _pull(zone0, scale, delta, n - 1)
        if y in inner:
            return CaseLabel.L11, None
        if n < 2 or y not in cells[n - 2]:
            return None, None
        v = p.r_t - cells[n - 1].lo
        w = inner.lo - y
        low, high = Fraction(1, (a + 1) ** n * a), Fraction((a + 1) ** (n - 1) * a)
    ratio = w / v
    if low <= ratio <= high:
        return CaseLabel.L12_FEASIBLE, ratio
    return CaseLabel.L12_INFEASIBLE, ratio


def _taint_fraction(single: IntervalSet, covered: IntervalSet) -> Fraction:
    total = single.measure()
    if total == 0:
        return Fraction(0) if single.subtract(covered) else Fraction(1)
    return single.intersect(covered).measure() / total


def _check_zone(part: Partition, zone: Interval) -> None:
    homes = [cell for cell in part.cells if zone.issubset(cell)]
    if not homes:
        logger.warning("zone %s straddles partition cells", zone)


def backpropagate_zones(p: ProblemInstance, max_periods: int) -> ZoneReport:
    logger.info("++ backpropagate_zones")
    part = build_partition(p)
    a, delta = p.a, p.delta
    plus_region = IntervalSet.of(part.plus_region)
    minus_region = IntervalSet.of(part.minus_region)
    single = minus_region if part.m == 1 else plus_region
    whole = IntervalSet.of(p.bounds)

    label, ratio = _closed_form_label(p, part)
    zones = [Zone(0, part.zone0)]
    newest = IntervalSet.of(part.zone0)
    covered = newest
    taint = []
    notes = []
    verdict = None
    cap = max_periods * (part.p + part.m + 1)
    j = 0
    while verdict is None:
        via_plus = affine_image(newest, a, -delta).intersect(plus_region)
        via_minus = affine_image(newest, a + 1, -delta).intersect(minus_region)
        if via_plus and via_minus:
            logger.warning("zone %d has preimages under both actions", j)
        new = via_plus.union(via_minus).subtract(covered)
        if new.is_empty:
            verdict = Verdict.FEASIBLE
            break
        j += 1
        for piece in new:
            _check_zone(part, piece)
            zones.append(Zone(j, piece))
        covered = covered.union(new)
        taint.append(_taint_fraction(single, covered))
        logger.debug("zone %d: %s (taint %s)", j, new, format_number(taint[-1]))
        if single.subtract(covered).is_empty:
            verdict = Verdict.INFEASIBLE
        elif j >= cap:
            break
        newest = new

    if verdict is None:
        # an exhausted cap never yields feasible or infeasible
        verdict = Verdict.UNDETERMINED
        hint = f" (closed-form case {label.value})" if label is not None else ""
        notes.append(f"zones still growing after {j} steps; no verdict{hint}")
    elif label is None or label.feasible != (verdict is Verdict.FEASIBLE):
        relabel = CaseLabel.L12_FEASIBLE if verdict is Verdict.FEASIBLE else CaseLabel.L12_INFEASIBLE
        logger.warning("closed-form case %s disagrees with back-propagation; using %s",
                       label.value if label else None, relabel.value)
        notes.append(
            f"case {label.value if label else 'unresolved'} relabelled {relabel.value} "
            "to match back-propagation"
        )
        label = relabel

    if verdict is Verdict.INFEASIBLE:
        feasible = IntervalSet.empty()
    else:
        feasible = whole.subtract(covered)
    logger.info("-- backpropagate_zones")
    return ZoneReport(p, part, zones, label, verdict, ratio, feasible, taint, notes)


def synthesize_strategy(report: ZoneReport, eta0_size: NumberLike) -> StrategyWord:
    """Unroll the forced actions from eta0_size until a feasible component repeats"""
    x = parse_rational(eta0_size)
    if report.verdict is Verdict.UNDETERMINED:
        raise UndeterminedError("zone analysis is undetermined; no strategy can be certified")
    if x not in report.feasible_set:
        raise InfeasibleStartError(f"initial I-state infeasible: size {format_number(x)}")

    seen = {}
    actions = []
    while True:
        component = report.feasible_set.component_index(x)
        if component in seen:
            start = seen[component]
            break
        seen[component] = len(actions)
        action = report.forced_action(x)
        actions.append(action)
        x = (x + report.instance.delta) / action.count(report.instance.a)

    lone = MINUS if report.partition.m == 1 else PLUS
    cycle = actions[start:]
    k = cycle.index(lone) if lone in cycle else 0
    return StrategyWord(tuple(actions[:start + k]), tuple(cycle[k:] + cycle[:k]))


def tau_relaxed_feasible(report: ZoneReport, tau: int) -> IntervalSet:
    """Feasible set once a pursuer gives up after tau steps: zones with index >= tau are safe"""
    relaxed = IntervalSet(z.interval for z in report.zones if z.j >= tau)
    return report.feasible_set.union(relaxed)


def describe(report: ZoneReport) -> str:
    label = report.case_label.value if report.case_label else "none"
    return (
        f"{report.verdict.value} ({label}); p={report.partition.p} m={report.partition.m}; "
        f"zones={len(report.zones)}; ratio={format_rational(report.ratio) if report.ratio else '-'}"
    )
