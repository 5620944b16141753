"""Independent check: greatest invariant set and exhaustive finite-horizon search.

Works from the raw size dynamics only; nothing here knows about instance classes
or impossibility zones.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from app.tracking.exactnum import IntervalSet, NumberLike, affine_image, parse_rational
from app.tracking.model import ProblemInstance


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleResult:
    safe_set: IntervalSet
    converged: bool
    iterations: int


def maximal_invariant_set(p: ProblemInstance, iteration_cap: int) -> OracleResult:
    """Shrink [r_p, r_t] to the largest subset the PLUS/MINUS dynamics can stay inside"""
    logger.info("++ maximal_invariant_set")
    a = p.a
    splits = [i for i in (a, a + 1) if i <= p.c + 1]
    if p.r_p > p.r_t:
        current = IntervalSet.empty()
    else:
        current = IntervalSet.of(p.bounds)

    iterations = 0
    converged = False
    while iterations < iteration_cap:
        iterations += 1
        preimage = IntervalSet.empty()
        for i in splits:
            preimage = preimage.union(affine_image(current, i, -p.delta))
        shrunk = current.intersect(preimage)
        logger.debug("iteration %d: %s", iterations, shrunk)
        if shrunk == current:
            converged = True
            break
        current = shrunk
    logger.info("-- maximal_invariant_set")
    return OracleResult(current, converged, iterations)


def brute_force_survival(p: ProblemInstance, eta0_size: NumberLike, depth: int) -> int:
    """Longest in-bounds size sequence from eta0_size over every split s(1..c+1), capped at depth.

    eta0_size itself counts as the first step. Depth-first with an explicit stack
    so long horizons do not hit the recursion limit.
    """
    start = parse_rational(eta0_size)
    if not p.r_p <= start <= p.r_t:
        return 0
    top = p.c + 1
    known: Dict[Tuple[Fraction, int], int] = {}

    def open_frame(x: Fraction, budget: int):
        if budget <= 1:
            return 1, None
        if (x, budget) in known:
            return known[x, budget], None
        prior = x + p.delta
        lo = max(1, math.ceil(prior / p.r_t))
        hi = min(top, math.floor(prior / p.r_p))
        return None, [x, budget, prior, iter(range(lo, hi + 1)), 0]

    value, frame = open_frame(start, depth)
    if frame is None:
        return value
    stack = [frame]
    while stack:
        x, budget, prior, splits, best = frame = stack[-1]
        i = next(splits, None) if best < budget - 1 else None
        if i is None:
            value = known[x, budget] = 1 + best
            stack.pop()
            if stack:
                stack[-1][4] = max(stack[-1][4], value)
            continue
        child, child_frame = open_frame(prior / i, budget - 1)
        if child_frame is None:
            frame[4] = max(best, child)
        else:
            stack.append(child_frame)
    return value
