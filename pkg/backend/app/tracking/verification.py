"""Randomized sweep comparing the analyzer against the invariant-set oracle."""
import logging
import random
from dataclasses import dataclass, field
from typing import List

from app.core.models import Verdict
from app.tracking.boundary import backpropagate_zones
from app.tracking.exactnum import IntervalSet
from app.tracking.oracle import maximal_invariant_set
from app.tracking.sampling import (
    random_boundary_instance,
    random_over_instance,
    random_under_instance,
)


logger = logging.getLogger(__name__)


@dataclass
class VerificationReport:
    samples: int
    seed: int
    boundary_checked: int = 0
    boundary_skipped: int = 0
    under_checked: int = 0
    under_skipped: int = 0
    over_checked: int = 0
    over_skipped: int = 0
    shape_violations: int = 0
    mismatches: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches and not self.shape_violations


def run_verification(samples: int, seed: int, zone_max_periods: int, oracle_cap: int) -> VerificationReport:
    logger.info("++ run_verification")
    rng = random.Random(seed)
    report = VerificationReport(samples, seed)
    for _ in range(samples):
        instance = random_boundary_instance(rng)
        zones = backpropagate_zones(instance, zone_max_periods)
        if zones.partition.p != 1 and zones.partition.m != 1:
            report.shape_violations += 1
            report.mismatches.append(f"p={zones.partition.p} m={zones.partition.m} for {instance}")
        oracle = maximal_invariant_set(instance, oracle_cap)
        if zones.verdict is Verdict.UNDETERMINED or not oracle.converged:
            report.boundary_skipped += 1
        elif zones.feasible_set != oracle.safe_set:
            report.mismatches.append(
                f"boundary {instance}: zones give {zones.feasible_set}, oracle gives {oracle.safe_set}"
            )
        else:
            report.boundary_checked += 1

        instance = random_under_instance(rng)
        oracle = maximal_invariant_set(instance, oracle_cap)
        if not oracle.converged:
            report.under_skipped += 1
        elif oracle.safe_set != IntervalSet.of(instance.bounds):
            report.mismatches.append(f"under-constrained {instance}: oracle gives {oracle.safe_set}")
        else:
            report.under_checked += 1

        instance = random_over_instance(rng)
        oracle = maximal_invariant_set(instance, oracle_cap)
        if not oracle.converged:
            report.over_skipped += 1
        elif not oracle.safe_set.is_empty:
            report.mismatches.append(f"over-constrained {instance}: oracle gives {oracle.safe_set}")
        else:
            report.over_checked += 1
    for line in report.mismatches:
        logger.warning(line)
    logger.info("-- run_verification")
    return report
