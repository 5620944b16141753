import random
from fractions import Fraction

import pytest

from app.core.exceptions import InfeasibleStartError, NotBoundaryError, UndeterminedError
from app.core.models import CaseLabel, Verdict
from app.tracking.boundary import (
    backpropagate_zones,
    build_partition,
    describe,
    synthesize_strategy,
    tau_relaxed_feasible,
)
from app.tracking.exactnum import Interval, IntervalSet
from app.tracking.model import MINUS, PLUS, ProblemInstance, simulate, step_size
from app.tracking.oracle import brute_force_survival, maximal_invariant_set
from app.tracking.presets import get_preset
from app.tracking.sampling import random_boundary_instance


def closed(lo, hi):
    return Interval.closed(lo, hi)


def opened(lo, hi):
    return Interval.open(lo, hi)


@pytest.fixture
def example1():
    return get_preset("example1").instance()


@pytest.fixture
def example2():
    return get_preset("example2").instance()


@pytest.fixture
def report1(example1):
    return backpropagate_zones(example1, 64)


# Partition

def test_partition_example1(example1):
    """Test the partition of [r_p, r_t] into PLUS cells, zone and MINUS cells"""
    part = build_partition(example1)
    assert part.zone0 == opened("76.9", 77)
    assert part.p == 1 and part.m == 3
    assert part.plus_intervals == (closed(76, "76.9"),)
    assert part.minus_intervals == (closed(77, 81), closed(81, 97), closed(97, "101.3"))
    assert part.tiling() == IntervalSet.of(example1.bounds)


def test_partition_example2(example2):
    """Test the partition for delta = 223"""
    part = build_partition(example2)
    assert part.zone0 == opened("80.9", 81)
    assert part.p == 1 and part.m == 2
    assert part.minus_intervals == (closed(81, 101), closed(101, "101.3"))


def test_partition_rejects_non_boundary():
    """Test that only boundary instances are partitioned"""
    with pytest.raises(NotBoundaryError, match="not a boundary problem"):
        build_partition(get_preset("teeth").instance())


def test_partition_tiles_random_instances():
    """Test that cells and zone tile [r_p, r_t] and that p or m is one"""
    rng = random.Random(21)
    for _ in range(100):
        p = random_boundary_instance(rng)
        part = build_partition(p)
        assert part.tiling() == IntervalSet.of(p.bounds)
        assert part.p == 1 or part.m == 1


# Zones

def test_zones_example1(report1):
    """Test zones, case and feasible set for the first reference instance"""
    assert [(z.j, z.interval) for z in report1.zones] == [
        (0, opened("76.9", 77)),
        (1, opened("80.6", 81)),
        (2, opened("95.4", 97)),
    ]
    assert report1.case_label is CaseLabel.L10
    assert report1.verdict is Verdict.FEASIBLE
    assert report1.feasible_set == IntervalSet.of(
        closed(76, "76.9"), closed(77, "80.6"), closed(81, "95.4"), closed(97, "101.3")
    )
    assert report1.notes == []


def test_zones_example2(example2):
    """Test the ratio case: three zones, feasible, ratio 28/9"""
    report = backpropagate_zones(example2, 64)
    assert [z.interval for z in report.zones] == [
        opened("80.9", 81), opened("100.6", 101), opened("78.8", 80), opened("92.2", 97),
    ]
    assert report.case_label is CaseLabel.L12_FEASIBLE
    assert report.ratio == Fraction(28, 9)
    assert report.feasible_set == IntervalSet.of(
        closed(76, "78.8"), closed(80, "80.9"), closed(81, "92.2"), closed(97, "100.6"), closed(101, "101.3")
    )


def test_zones_agree_with_fixpoint(example2):
    """Test the back-propagated feasible set against the invariant-set fixpoint"""
    oracle = maximal_invariant_set(example2, 200)
    assert oracle.converged
    assert backpropagate_zones(example2, 64).feasible_set == oracle.safe_set


def test_zones_triangle_preset():
    """Test a single-cell instance inside the a = 2 triangle"""
    report = backpropagate_zones(get_preset("triangle").instance(), 64)
    assert report.case_label is CaseLabel.L10
    assert report.feasible_set == IntervalSet.of(closed("1.15", "1.3"), closed("1.45", "1.65"))


def test_zones_infeasible_instance():
    """Test that a zone covering the single-cell region empties the feasible set"""
    report = backpropagate_zones(get_preset("doomed").instance(), 64)
    assert report.verdict is Verdict.INFEASIBLE
    assert report.case_label is CaseLabel.L9
    assert report.feasible_set.is_empty
    assert [z.interval for z in report.zones][1:] == [
        Interval(Fraction("1.25"), Fraction("1.5"), True, False),
        closed("1.75", "1.78"),
    ]
    assert report.taint_fractions[-1] == 1


def test_zone_helpers(report1):
    """Test forced actions and zone lookup"""
    assert report1.forced_action("76.9") == PLUS
    assert report1.forced_action(77) == MINUS
    with pytest.raises(InfeasibleStartError):
        report1.forced_action("76.95")
    assert report1.zone_index(96) == 2
    assert report1.zone_index(90) is None
    assert "76.9" in report1.strategy_rule
    assert describe(report1).startswith("feasible (L10)")


def test_zones_random_match_fixpoint():
    """Test back-propagation against the fixpoint on random boundary instances"""
    rng = random.Random(22)
    compared = 0
    for _ in range(30):
        p = random_boundary_instance(rng)
        report = backpropagate_zones(p, 16)
        oracle = maximal_invariant_set(p, 200)
        if report.verdict is Verdict.UNDETERMINED or not oracle.converged:
            continue
        assert report.feasible_set == oracle.safe_set
        compared += 1
    assert compared > 0


def test_zones_cap_gives_undetermined():
    """Test that running out of periods never turns into a verdict"""
    p = ProblemInstance(Fraction("23.375"), Fraction("46.31"), Fraction(11), 3)
    report = backpropagate_zones(p, 1)
    assert report.verdict is Verdict.UNDETERMINED
    assert "no verdict (closed-form case L12_infeasible)" in report.notes[-1]
    with pytest.raises(UndeterminedError):
        synthesize_strategy(report, "23.375")

    resolved = backpropagate_zones(p, 64)
    oracle = maximal_invariant_set(p, 500)
    assert resolved.verdict is Verdict.FEASIBLE
    assert resolved.case_label is CaseLabel.L12_FEASIBLE
    assert any("relabelled" in note for note in resolved.notes)
    assert oracle.converged
    assert resolved.feasible_set == oracle.safe_set


def test_zones_lie_in_one_cell():
    """Test that every zone past the first sits inside a single partition cell"""
    rng = random.Random(24)
    for _ in range(60):
        report = backpropagate_zones(random_boundary_instance(rng), 16)
        for zone in report.zones[1:]:
            assert any(zone.interval.issubset(cell) for cell in report.partition.cells), zone


def test_forced_action_is_unique():
    """Test that exactly one basis action keeps a non-zone size in bounds"""
    rng = random.Random(25)
    for _ in range(40):
        p = random_boundary_instance(rng)
        report = backpropagate_zones(p, 16)
        for _ in range(25):
            x = p.r_p + (p.r_t - p.r_p) * Fraction(rng.randint(0, 1000), 1000)
            if x in report.partition.zone0:
                continue
            keeps = [act for act in (PLUS, MINUS) if p.r_p <= step_size(x, act, p) <= p.r_t]
            assert keeps == [report.forced_action(x)]


def test_survival_matches_zone_index():
    """Test that a size in zone j survives exactly j + 1 steps"""
    rng = random.Random(26)
    checked = 0
    for _ in range(80):
        p = random_boundary_instance(rng)
        if p.c != p.a:
            continue
        report = backpropagate_zones(p, 4)
        for zone in report.zones:
            x = (zone.interval.lo + zone.interval.hi) / 2
            assert brute_force_survival(p, x, zone.j + 5) == zone.j + 1
            checked += 1
    assert checked > 20


# Strategies

def test_strategy_example1(report1):
    """Test the strategy words from both ends of [r_p, r_t]"""
    assert str(synthesize_strategy(report1, 76)) == "(+---)*"
    assert str(synthesize_strategy(report1, "101.3")) == "---|(+---)*"
    assert str(synthesize_strategy(report1, 97)) == "---|(+---)*"


def test_strategy_triangle_preset():
    """Test a strategy whose cycle starts with the lone MINUS"""
    report = backpropagate_zones(get_preset("triangle").instance(), 64)
    assert str(synthesize_strategy(report, "1.15")) == "+|(-+)*"


def test_strategy_rejects_infeasible_start(report1):
    """Test that sizes inside a zone have no strategy"""
    with pytest.raises(InfeasibleStartError, match="initial I-state infeasible"):
        synthesize_strategy(report1, "76.95")
    with pytest.raises(InfeasibleStartError):
        synthesize_strategy(report1, 96)


def test_strategy_needs_verdict(report1):
    """Test that an undetermined report refuses to produce a strategy"""
    report1.verdict = Verdict.UNDETERMINED
    with pytest.raises(UndeterminedError):
        synthesize_strategy(report1, 76)


def test_strategy_is_sound_on_random_instances():
    """Test that synthesized strategies keep every size in bounds"""
    rng = random.Random(23)
    for _ in range(30):
        p = random_boundary_instance(rng)
        report = backpropagate_zones(p, 16)
        if report.verdict is not Verdict.FEASIBLE:
            continue
        for part in report.feasible_set:
            for start in (part.lo, (part.lo + part.hi) / 2, part.hi):
                word = synthesize_strategy(report, start)
                assert simulate(p, word, start, 300).violation is None


def test_example1_strategy_long_run(example1, report1):
    """Test the synthesized word over 10^4 exact steps"""
    word = synthesize_strategy(report1, 76)
    assert simulate(example1, word, 76, 10_000).violation is None


# Pursuer horizon

def test_tau_relaxation(report1):
    """Test that zones from index tau on become safe"""
    whole = IntervalSet.of(closed(76, "101.3"))
    assert tau_relaxed_feasible(report1, 0) == whole
    assert tau_relaxed_feasible(report1, 2) == IntervalSet.of(
        closed(76, "76.9"), closed(77, "80.6"), closed(81, "101.3")
    )
    assert tau_relaxed_feasible(report1, 3) == report1.feasible_set
    assert tau_relaxed_feasible(report1, 50) == report1.feasible_set


def test_tau_relaxation_is_monotone(example2):
    """Test that a longer pursuit never enlarges the feasible set"""
    report = backpropagate_zones(example2, 64)
    sets = [tau_relaxed_feasible(report, tau) for tau in range(6)]
    for larger, smaller in zip(sets, sets[1:]):
        assert smaller.issubset(larger)
