"""Seeded generators of random problem instances, one per instance class."""
import random
from fractions import Fraction

from app.core.models import ProblemClass
from app.tracking.analysis import Triangle
from app.tracking.classifier import classify
from app.tracking.model import ProblemInstance


MAX_TRIES = 10_000


def random_rational(rng: random.Random, lo: int, hi: int, denominator: int = 20) -> Fraction:
    """Uniform rational in (lo, hi] with the given denominator (before reduction)"""
    return Fraction(rng.randint(lo * denominator + 1, hi * denominator), denominator)


def random_scale(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 20), rng.randint(1, 20))


def random_triangle_point(rng: random.Random, triangle: Triangle):
    weights = [rng.randint(1, 50) for _ in range(3)]
    total = sum(weights)
    r_p = sum(w * v[0] for w, v in zip(weights, triangle.vertices)) / total
    r_t = sum(w * v[1] for w, v in zip(weights, triangle.vertices)) / total
    return r_p, r_t


def random_boundary_instance(rng: random.Random, max_a: int = 5) -> ProblemInstance:
    """Strict interior of a triangle (a >= 2), or the a = 1 band, rescaled by a random factor"""
    a = rng.randint(1, max_a)
    if a == 1:
        r_p = 2 + random_rational(rng, 0, 4)
        lower = max(r_p + 2, 2 * r_p - 2)
        r_t = lower + (2 * r_p - lower) * Fraction(rng.randint(0, 99), 100)
        c = rng.randint(1, 6)
    else:
        r_p, r_t = random_triangle_point(rng, Triangle.for_a(a))
        c = rng.randint(a, a + 3)
    lam = random_scale(rng)
    return ProblemInstance(lam * r_p, lam * r_t, lam * 2, c)


def _rejection(rng: random.Random, wanted: ProblemClass) -> ProblemInstance:
    for _ in range(MAX_TRIES):
        r_p = random_rational(rng, 0, 4)
        r_t = random_rational(rng, 0, 4)
        instance = ProblemInstance(r_p, r_t, Fraction(2), rng.randint(1, 6))
        if classify(instance).problem_class is wanted:
            return instance
    raise RuntimeError(f"no {wanted.value} instance found in {MAX_TRIES} draws")


def random_under_instance(rng: random.Random) -> ProblemInstance:
    return _rejection(rng, ProblemClass.UNDER_CONSTRAINED)


def random_over_instance(rng: random.Random) -> ProblemInstance:
    return _rejection(rng, ProblemClass.OVER_CONSTRAINED)
