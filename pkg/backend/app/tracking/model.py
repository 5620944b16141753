"""Problem instances, I-state size dynamics, sensing vectors and simulation.

Sizes evolve as x -> (x + delta) / i when the robot splits the prior I-state into
i even cells. Under even splits the posterior size does not depend on where the
target actually is, so simulation tracks sizes only.
"""
import logging
import math
import re
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from app.core.exceptions import (
    InconsistentObservationError,
    InfeasibleStartError,
    InvalidInstanceError,
    SensorCapabilityError,
    StrategyFormatError,
)
from app.core.models import ActionKind
from app.tracking.exactnum import (
    NEG_INF,
    POS_INF,
    Interval,
    NumberLike,
    format_number,
    format_rational,
    parse_rational,
)


logger = logging.getLogger(__name__)


def derived_a(delta: Fraction, r_t: Fraction) -> int:
    """Number of r_t's needed to cover delta: ceil(delta / r_t)"""
    return math.ceil(Fraction(delta) / Fraction(r_t))


@dataclass(frozen=True)
class ProblemInstance:
    r_p: Fraction
    r_t: Fraction
    delta: Fraction
    c: int
    eta0: Optional[Interval] = None

    def __post_init__(self):
        for name in ("r_p", "r_t", "delta"):
            value = parse_rational(getattr(self, name))
            if value <= 0:
                raise InvalidInstanceError(f"{name} must be positive, got {format_rational(value)}")
            object.__setattr__(self, name, value)
        if isinstance(self.c, bool) or not isinstance(self.c, int) or self.c < 1:
            raise InvalidInstanceError(f"c must be a positive integer, got {self.c!r}")
        if self.eta0 is not None and not self.r_p <= self.eta0.length <= self.r_t:
            logger.warning(
                "initial I-state %s has size %s outside [%s, %s]",
                self.eta0, format_number(self.eta0.length),
                format_number(self.r_p), format_number(self.r_t),
            )

    @property
    def a(self) -> int:
        return derived_a(self.delta, self.r_t)

    @property
    def eta0_ok(self) -> Optional[bool]:
        if self.eta0 is None:
            return None
        return self.r_p <= self.eta0.length <= self.r_t

    @property
    def bounds(self) -> Interval:
        return Interval.closed(self.r_p, self.r_t)

    def scaled(self, lam: NumberLike) -> "ProblemInstance":
        lam = parse_rational(lam)
        return ProblemInstance(lam * self.r_p, lam * self.r_t, lam * self.delta, self.c)

    def __str__(self) -> str:
        return (
            f"r_p={format_number(self.r_p)} r_t={format_number(self.r_t)} "
            f"delta={format_number(self.delta)} c={self.c}"
        )


# Actions

@dataclass(frozen=True)
class Action:
    """An even split; PLUS and MINUS resolve to a and a+1 cells for a given instance"""

    kind: ActionKind
    parts: Optional[int] = None

    def __post_init__(self):
        if self.kind is ActionKind.SPLIT:
            if self.parts is None or self.parts < 1:
                raise StrategyFormatError(f"split needs a positive cell count, got {self.parts!r}")
        elif self.parts is not None:
            raise StrategyFormatError("only explicit splits carry a cell count")

    @classmethod
    def split(cls, i: int) -> "Action":
        return cls(ActionKind.SPLIT, i)

    def count(self, a: int) -> int:
        if self.kind is ActionKind.PLUS:
            return a
        if self.kind is ActionKind.MINUS:
            return a + 1
        return self.parts

    def resolve(self, p: ProblemInstance) -> int:
        i = self.count(p.a)
        if i > p.c + 1:
            raise SensorCapabilityError(
                f"action {self.token} needs {i} cells, which exceeds sensor capability (c+1 = {p.c + 1})"
            )
        return i

    @property
    def token(self) -> str:
        if self.kind is ActionKind.SPLIT:
            return f"s{self.parts}"
        return self.kind.value

    def __str__(self) -> str:
        return self.token


PLUS = Action(ActionKind.PLUS)
MINUS = Action(ActionKind.MINUS)

_TOKEN_RE = re.compile(r"\+|-|s(\d+)")


def parse_actions(text: str) -> Tuple[Action, ...]:
    actions = []
    position = 0
    compact = "".join(text.split())
    while position < len(compact):
        match = _TOKEN_RE.match(compact, position)
        if not match:
            raise StrategyFormatError(f"unexpected {compact[position]!r} in action list {text!r}")
        if match.group(1) is not None:
            actions.append(Action.split(int(match.group(1))))
        elif match.group(0) == "+":
            actions.append(PLUS)
        else:
            actions.append(MINUS)
        position = match.end()
    return tuple(actions)


def step_size(x: NumberLike, act: Action, p: ProblemInstance) -> Fraction:
    """Posterior size after splitting the prior (x + delta) evenly"""
    return (parse_rational(x) + p.delta) / act.count(p.a)


def step_size_inv(y: NumberLike, act: Action, p: ProblemInstance) -> Fraction:
    """Size that lands on y under `act`"""
    return act.count(p.a) * parse_rational(y) - p.delta


# Policies

@dataclass(frozen=True)
class StrategyWord:
    """Open-loop strategy: play `prefix` once, then repeat `cycle` forever"""

    prefix: Tuple[Action, ...]
    cycle: Tuple[Action, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise StrategyFormatError("strategy cycle must not be empty")

    @classmethod
    def parse(cls, text: str) -> "StrategyWord":
        compact = "".join(text.split())
        if not compact.endswith(")*") or "(" not in compact:
            raise StrategyFormatError(f"strategy must end with a '(...)*' cycle: {text!r}")
        start = compact.rindex("(")
        head = compact[:start]
        if head.endswith("|"):
            head = head[:-1]
        if "|" in head or "(" in head or ")" in head:
            raise StrategyFormatError(f"malformed strategy prefix: {text!r}")
        return cls(parse_actions(head), parse_actions(compact[start + 1:-2]))

    def action_at(self, k: int) -> Action:
        """Action played at step k (0-based)"""
        if k < len(self.prefix):
            return self.prefix[k]
        return self.cycle[(k - len(self.prefix)) % len(self.cycle)]

    def choose(self, k: int, size: Fraction, p: ProblemInstance) -> Action:
        return self.action_at(k)

    def __str__(self) -> str:
        cycle = "(" + "".join(a.token for a in self.cycle) + ")*"
        if not self.prefix:
            return cycle
        return "".join(a.token for a in self.prefix) + "|" + cycle


@dataclass(frozen=True)
class FeedbackRule:
    """Closed-loop policy: MINUS when the prior size reaches `threshold`, otherwise PLUS"""

    threshold: Fraction

    def __post_init__(self):
        object.__setattr__(self, "threshold", parse_rational(self.threshold))

    @classmethod
    def parse(cls, text: str) -> "FeedbackRule":
        _, _, value = text.strip().partition(":")
        return cls(parse_rational(value))

    def choose(self, k: int, size: Fraction, p: ProblemInstance) -> Action:
        return MINUS if size + p.delta >= self.threshold else PLUS

    def __str__(self) -> str:
        return f"feedback:{format_rational(self.threshold)}"


Policy = Union[StrategyWord, FeedbackRule]


def parse_policy(text: str) -> Policy:
    if text.strip().startswith("feedback:"):
        return FeedbackRule.parse(text)
    return StrategyWord.parse(text)


# Sensing

@dataclass(frozen=True)
class SensingVector:
    set_points: Tuple[Fraction, ...]

    def __post_init__(self):
        points = tuple(parse_rational(u) for u in self.set_points)
        if not points:
            raise InvalidInstanceError("a sensing vector needs at least one set-point")
        if any(left >= right for left, right in zip(points, points[1:])):
            raise InvalidInstanceError("set-points must be strictly increasing")
        object.__setattr__(self, "set_points", points)

    @property
    def c(self) -> int:
        return len(self.set_points)

    def cell(self, pos: NumberLike) -> Interval:
        """Observation cell of `pos`: (-inf, u1], (u1, u2], ..., (uc, inf)"""
        pos = parse_rational(pos)
        index = bisect_left(self.set_points, pos)
        lo = self.set_points[index - 1] if index > 0 else NEG_INF
        if index < len(self.set_points):
            return Interval(lo, self.set_points[index], False, True)
        return Interval(lo, POS_INF, False, False)


def posterior_from_sensing(prior: Interval, v: SensingVector, panda_pos: NumberLike) -> Interval:
    if panda_pos not in prior:
        raise InconsistentObservationError(
            f"inconsistent observation: position {panda_pos} is not in prior {prior}"
        )
    return prior.intersect(v.cell(panda_pos))


def worst_case_cells(prior_size: NumberLike, cuts: Sequence[NumberLike]) -> Tuple[Fraction, Fraction]:
    """Smallest and largest nonempty cells when [0, prior_size] is cut at `cuts`"""
    size = parse_rational(prior_size)
    inside = sorted({u for u in (parse_rational(u) for u in cuts) if 0 < u < size})
    edges = [Fraction(0)] + inside + [size]
    cells = [right - left for left, right in zip(edges, edges[1:])]
    return min(cells), max(cells)


# Simulation

@dataclass(frozen=True)
class SimStep:
    k: int
    prior_size: Fraction
    action: Action
    posterior_size: Fraction
    ppc_ok: bool
    ttc_ok: bool

    @property
    def ok(self) -> bool:
        return self.ppc_ok and self.ttc_ok


@dataclass(frozen=True)
class SimTrace:
    eta0_size: Fraction
    steps: Tuple[SimStep, ...] = field(default_factory=tuple)

    @property
    def violation(self) -> Optional[SimStep]:
        if self.steps and not self.steps[-1].ok:
            return self.steps[-1]
        return None

    @property
    def sizes(self) -> List[Fraction]:
        return [self.eta0_size] + [s.posterior_size for s in self.steps]


def simulate(p: ProblemInstance, policy: Policy, eta0_size: NumberLike, horizon: int) -> SimTrace:
    """Run `policy` from eta0_size, stopping at the first PPC/TTC violation or at horizon"""
    x = parse_rational(eta0_size)
    if horizon < 1:
        raise InvalidInstanceError("horizon must be at least 1")
    if not p.r_p <= x <= p.r_t:
        raise InfeasibleStartError(
            f"initial I-state infeasible: size {format_number(x)} is outside "
            f"[{format_number(p.r_p)}, {format_number(p.r_t)}]"
        )
    steps = []
    size = x
    for k in range(1, horizon + 1):
        action = policy.choose(k - 1, size, p)
        i = action.resolve(p)
        prior = size + p.delta
        posterior = prior / i
        step = SimStep(k, prior, action, posterior, posterior >= p.r_p, posterior <= p.r_t)
        steps.append(step)
        if not step.ok:
            logger.debug("violation at step %d: size %s", k, format_number(posterior))
            break
        size = posterior
    return SimTrace(x, tuple(steps))
