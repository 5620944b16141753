import random
from fractions import Fraction

from app.tracking.classifier import violation_horizon
from app.tracking.exactnum import Interval, IntervalSet
from app.tracking.model import ProblemInstance
from app.tracking.oracle import brute_force_survival, maximal_invariant_set
from app.tracking.presets import get_preset
from app.tracking.sampling import random_boundary_instance


def test_teeth_instance_keeps_everything():
    """Test that an always-MINUS instance is invariant from the first pass"""
    result = maximal_invariant_set(get_preset("teeth").instance(), 200)
    assert result.converged
    assert result.iterations == 1
    assert result.safe_set == IntervalSet.of(Interval.closed(1, 2))


def test_example1_fixpoint():
    """Test the fixpoint for the first reference instance"""
    result = maximal_invariant_set(get_preset("example1").instance(), 200)
    assert result.converged
    assert result.safe_set == IntervalSet.of(
        Interval.closed(76, Fraction("76.9")),
        Interval.closed(77, Fraction("80.6")),
        Interval.closed(81, Fraction("95.4")),
        Interval.closed(97, Fraction("101.3")),
    )


def test_gap_instance_is_empty():
    """Test that an over-constrained instance has no safe size"""
    result = maximal_invariant_set(get_preset("gap").instance(), 200)
    assert result.converged
    assert result.safe_set.is_empty


def test_doomed_instance_is_empty():
    """Test the fixpoint when the zones swallow the single-cell region"""
    result = maximal_invariant_set(get_preset("doomed").instance(), 200)
    assert result.converged
    assert result.safe_set.is_empty


def test_iteration_cap():
    """Test that hitting the cap reports non-convergence"""
    result = maximal_invariant_set(get_preset("example1").instance(), 1)
    assert not result.converged
    assert result.iterations == 1


def test_trivially_infeasible_start():
    """Test that r_p > r_t starts from the empty set"""
    result = maximal_invariant_set(ProblemInstance(Fraction(3), Fraction(2), Fraction(1), 1), 10)
    assert result.converged
    assert result.safe_set.is_empty


def test_survival_example1():
    """Test exhaustive search from zone points and from a feasible size"""
    p = get_preset("example1").instance()
    assert brute_force_survival(p, "76.95", 50) == 1
    assert brute_force_survival(p, "80.7", 50) == 2
    assert brute_force_survival(p, 76, 50) == 50
    assert brute_force_survival(p, 70, 50) == 0


def test_survival_gap_within_horizon():
    """Test that every start on the gap instance fails within the bound"""
    p = get_preset("gap").instance()
    bound = violation_horizon(p)
    for start in ("1.2", "1.3", "1.4"):
        assert brute_force_survival(p, start, 20) <= bound + 1


def test_fixpoint_shrinks_monotonically():
    """Test that each extra iteration only removes sizes"""
    rng = random.Random(31)
    instances = [get_preset(name).instance() for name in ("example1", "example2", "doomed", "gap")]
    instances += [random_boundary_instance(rng) for _ in range(10)]
    for p in instances:
        previous = maximal_invariant_set(p, 1).safe_set
        for cap in range(2, 15):
            current = maximal_invariant_set(p, cap).safe_set
            assert current.issubset(previous)
            previous = current


def test_survival_long_horizon():
    """Test exhaustive search far past the recursion limit"""
    p = get_preset("example1").instance()
    assert brute_force_survival(p, 76, 5000) == 5000
    assert brute_force_survival(p, "80.7", 5000) == 2
