"""Exact classification of problem instances.

Decision order (all comparisons exact, first match wins):

    1. r_p > r_t                                   trivially infeasible
    2. delta > c * r_t                             over-constrained (L4)
    3. delta >= a * r_p                            under-constrained (L3)
    4. a * r_t >= (a + 1) * r_p                    under-constrained (L5)
    5. r_p <= a*r_t - delta, (a+1)*r_p - delta <= r_t   boundary (L7)
    6. otherwise                                   over-constrained (L6i / L6ii)

Ties: delta == a * r_p goes to L3; delta == c * r_t is not L4; an empty
impossibility zone (a * r_t == (a + 1) * r_p) goes to L5.
"""
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from app.core.models import Lemma, ProblemClass
from app.tracking.model import FeedbackRule, MINUS, ProblemInstance, StrategyWord


Witness = Union[StrategyWord, FeedbackRule]

GRID_LABELS = (
    (ProblemClass.TRIVIALLY_INFEASIBLE, None),
    (ProblemClass.OVER_CONSTRAINED, Lemma.L4),
    (ProblemClass.UNDER_CONSTRAINED, Lemma.L3),
    (ProblemClass.UNDER_CONSTRAINED, Lemma.L5),
    (ProblemClass.BOUNDARY, Lemma.L7),
    (ProblemClass.OVER_CONSTRAINED, Lemma.L6I),
    (ProblemClass.OVER_CONSTRAINED, Lemma.L6II),
)

# bound on every product classify_lattice forms before it leaves int64
INT64_SAFE = 2 ** 62


@dataclass(frozen=True)
class Classification:
    problem_class: ProblemClass
    lemma: Optional[Lemma]
    a: int
    witness: Optional[Witness] = None

    @property
    def solvable(self) -> bool:
        return self.problem_class is ProblemClass.UNDER_CONSTRAINED

    def __str__(self) -> str:
        text = self.problem_class.value
        if self.lemma is not None:
            text += f" ({self.lemma.value})"
        return text


def classify(p: ProblemInstance) -> Classification:
    a = p.a
    if p.r_p > p.r_t:
        return Classification(ProblemClass.TRIVIALLY_INFEASIBLE, None, a)
    if p.delta > p.c * p.r_t:
        return Classification(ProblemClass.OVER_CONSTRAINED, Lemma.L4, a)
    if p.delta >= a * p.r_p:
        return Classification(ProblemClass.UNDER_CONSTRAINED, Lemma.L3, a, StrategyWord((), (MINUS,)))
    if a * p.r_t >= (a + 1) * p.r_p:
        witness = FeedbackRule((a + 1) * p.r_p)
        return Classification(ProblemClass.UNDER_CONSTRAINED, Lemma.L5, a, witness)
    if p.r_p <= a * p.r_t - p.delta and (a + 1) * p.r_p - p.delta <= p.r_t:
        return Classification(ProblemClass.BOUNDARY, Lemma.L7, a)
    if p.delta > a * p.r_t - p.r_p:
        return Classification(ProblemClass.OVER_CONSTRAINED, Lemma.L6I, a)
    return Classification(ProblemClass.OVER_CONSTRAINED, Lemma.L6II, a)


def violation_horizon(p: ProblemInstance, result: Optional[Classification] = None) -> Optional[int]:
    """Step bound by which every strategy violates a constraint, for over-constrained instances"""
    result = result or classify(p)
    a = result.a
    span = p.r_t - p.r_p
    if result.lemma is Lemma.L4:
        return math.ceil(span / (p.delta - p.c * p.r_t))
    if result.lemma is Lemma.L6I:
        return math.ceil((a + 1) * span / (a * p.r_p - p.delta))
    if result.lemma is Lemma.L6II:
        return math.ceil(a * span / (p.delta - (a - 1) * p.r_t))
    return None


def _lattice_dtype(r_p, r_t, delta, c: int):
    top = max(int(np.max(v)) for v in (r_p, r_t, delta))
    a_max = -(-int(np.max(delta)) // int(np.min(r_t)))
    return np.int64 if top * (max(c, a_max) + 1) < INT64_SAFE else object


def classify_lattice(r_p: np.ndarray, r_t: np.ndarray, delta: np.ndarray, c: int) -> np.ndarray:
    """Vectorized classify over integer arrays; returns indices into GRID_LABELS.

    Inputs must be positive integers (rational points scaled by a common denominator).
    Falls back to Python integers when an int64 product could overflow.
    """
    dtype = _lattice_dtype(r_p, r_t, delta, c)
    r_p, r_t, delta = np.broadcast_arrays(
        np.asarray(r_p, dtype=dtype),
        np.asarray(r_t, dtype=dtype),
        np.asarray(delta, dtype=dtype),
    )
    a = -(-delta // r_t)
    codes = np.full(r_p.shape, 6, dtype=np.int8)
    zone_ok = (r_p <= a * r_t - delta) & ((a + 1) * r_p - delta <= r_t)
    rules = [
        (r_p > r_t, 0),
        (delta > c * r_t, 1),
        (delta >= a * r_p, 2),
        (a * r_t >= (a + 1) * r_p, 3),
        (zone_ok, 4),
        (delta > a * r_t - r_p, 5),
    ]
    decided = np.zeros(r_p.shape, dtype=bool)
    for mask, code in rules:
        hit = np.asarray(mask, dtype=bool) & ~decided
        codes[hit] = code
        decided |= hit
    return codes
