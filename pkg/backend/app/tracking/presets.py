from dataclasses import dataclass
from typing import Dict, Optional

from app.core.exceptions import InvalidInstanceError
from app.tracking.exactnum import parse_rational
from app.tracking.model import ProblemInstance


@dataclass(frozen=True)
class Preset:
    name: str
    r_p: str
    r_t: str
    delta: str
    c: int
    description: str
    note: Optional[str] = None

    def instance(self) -> ProblemInstance:
        return ProblemInstance(parse_rational(self.r_p), parse_rational(self.r_t), parse_rational(self.delta), self.c)

    def matches(self, r_p, r_t, delta, c) -> bool:
        """True when the given parameters are this preset's, however the numbers are written"""
        if None in (r_p, r_t, delta, c):
            return False
        ours = (self.r_p, self.r_t, self.delta)
        return c == self.c and all(parse_rational(x) == parse_rational(y) for x, y in zip((r_p, r_t, delta), ours))


EXAMPLE2_NOTE = (
    "the interval list and strategy usually quoted for this instance do not follow from the "
    "size dynamics (76 -> 299/3 under + -> 242/3 -> 911/12 < 76 under -); the zones and feasible "
    "set reported here are derived by back-propagation and agree with the invariant-set fixpoint"
)

PRESETS: Dict[str, Preset] = {
    p.name: p
    for p in (
        Preset("example1", "76", "101.3", "227", 4, "boundary, one PLUS cell and three MINUS cells"),
        Preset("example2", "76", "101.3", "223", 4, "boundary, ratio-test case", EXAMPLE2_NOTE),
        Preset("teeth", "1", "2", "3", 3, "under-constrained, always MINUS"),
        Preset("feedback", "1", "2.5", "0.5", 1, "under-constrained, state feedback"),
        Preset("gap", "1.2", "1.4", "2", 2, "over-constrained gap"),
        Preset("triangle", "1.15", "1.65", "2", 2, "boundary, inside the a = 2 triangle"),
        Preset("doomed", "1.25", "1.78", "2", 2, "boundary, every initial I-state fails"),
    )
}


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise InvalidInstanceError(f"unknown preset {name!r}; choose from {', '.join(sorted(PRESETS))}")


def find_preset(r_p, r_t, delta, c) -> Optional[Preset]:
    """Preset whose parameters equal the given ones, if any"""
    return next((p for p in PRESETS.values() if p.matches(r_p, r_t, delta, c)), None)
