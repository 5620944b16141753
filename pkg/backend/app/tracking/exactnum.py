"""Exact rational scalars and interval sets with explicit endpoint topology.

Every size, bound and motion diameter in the analyzer is a `Fraction`. Intervals
remember whether each endpoint is included, and `IntervalSet` keeps a canonical,
sorted, merged list of disjoint parts so that set equality is structural equality.

Unbounded endpoints (`NEG_INF`, `POS_INF`) exist only so that sensing cells such as
(-inf, u1] can be written down; measuring or mapping an unbounded set is an error.
"""
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Tuple, Union

from app.core.exceptions import (
    DegenerateMapError,
    EmptyIntervalError,
    InvalidNumberError,
    UnboundedSetError,
)
from app.core.models import SetOp


Rational = Fraction
Bound = Union[Fraction, float]
NumberLike = Union[Fraction, int, str]

NEG_INF = -math.inf
POS_INF = math.inf

_INTERVAL_RE = re.compile(r"^\s*([\[(])\s*([^,]+?)\s*,\s*([^,]+?)\s*([\])])\s*$")


def parse_rational(value: NumberLike) -> Fraction:
    """Parse a decimal or "p/q" string (or int/Fraction) into an exact Fraction"""
    if isinstance(value, bool):
        raise InvalidNumberError(f"not a number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # binary floats never enter core paths
        raise InvalidNumberError(f"binary float {value!r} is not exact; pass a string")
    if not isinstance(value, str):
        raise InvalidNumberError(f"not a number: {value!r}")
    text = value.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InvalidNumberError(f"not an exact rational: {value!r}")


def format_rational(x: Fraction) -> str:
    """Serialize as "p/q", or "p" when q = 1"""
    return str(Fraction(x))


def _decimal_exponent(denominator: int) -> Optional[int]:
    twos = fives = 0
    while denominator % 2 == 0:
        denominator //= 2
        twos += 1
    while denominator % 5 == 0:
        denominator //= 5
        fives += 1
    if denominator != 1:
        return None
    return max(twos, fives)


def format_number(x: Bound, places: int = 6) -> str:
    """Human rendering: exact decimal when it terminates, otherwise rounded to `places`"""
    if isinstance(x, float):
        return "-inf" if x < 0 else "inf"
    x = Fraction(x)
    exponent = _decimal_exponent(x.denominator)
    if exponent is None:
        return format_fixed(x, places)
    if exponent == 0:
        return str(x.numerator)
    scaled = abs(x.numerator * 10**exponent // x.denominator)
    digits = str(scaled).rjust(exponent + 1, "0")
    whole, frac = digits[:-exponent], digits[-exponent:].rstrip("0")
    sign = "-" if x < 0 else ""
    return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"


def format_fixed(x: Fraction, places: int) -> str:
    """Round half away from zero to a fixed number of decimal places"""
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    scaled = abs(x) * 10**places
    rounded = math.floor(scaled + Fraction(1, 2))
    digits = str(rounded).rjust(places + 1, "0")
    if places == 0:
        return f"{sign}{digits}"
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def _coerce_bound(value) -> Bound:
    if isinstance(value, float) and math.isinf(value):
        return value
    return parse_rational(value)


def _is_empty(lo: Bound, hi: Bound, lo_closed: bool, hi_closed: bool) -> bool:
    if lo < hi:
        return False
    return not (lo == hi and lo_closed and hi_closed)


@dataclass(frozen=True)
class Interval:
    """A nonempty interval; lo/hi flags say whether each endpoint is included"""

    lo: Bound
    hi: Bound
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        lo = _coerce_bound(self.lo)
        hi = _coerce_bound(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if isinstance(lo, float) and self.lo_closed or isinstance(hi, float) and self.hi_closed:
            raise EmptyIntervalError("infinite endpoints must be open")
        if _is_empty(lo, hi, self.lo_closed, self.hi_closed):
            raise EmptyIntervalError(f"empty interval {self._render()}")

    @classmethod
    def closed(cls, lo: NumberLike, hi: NumberLike) -> "Interval":
        return cls(lo, hi, True, True)

    @classmethod
    def open(cls, lo: NumberLike, hi: NumberLike) -> "Interval":
        return cls(lo, hi, False, False)

    @classmethod
    def point(cls, x: NumberLike) -> "Interval":
        return cls(x, x, True, True)

    @classmethod
    def make(cls, lo: Bound, hi: Bound, lo_closed: bool, hi_closed: bool) -> Optional["Interval"]:
        """Like the constructor, but returns None for an empty range"""
        if _is_empty(lo, hi, lo_closed, hi_closed):
            return None
        return cls(lo, hi, lo_closed, hi_closed)

    @property
    def is_bounded(self) -> bool:
        return not (isinstance(self.lo, float) or isinstance(self.hi, float))

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def length(self) -> Fraction:
        if not self.is_bounded:
            raise UnboundedSetError(f"unbounded interval {self} has no finite measure")
        return self.hi - self.lo

    def contains(self, x: NumberLike) -> bool:
        x = parse_rational(x)
        if self.lo < x < self.hi:
            return True
        return (x == self.lo and self.lo_closed) or (x == self.hi and self.hi_closed)

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def intersect(self, other: "Interval") -> Optional["Interval"]:
        if self.lo > other.lo:
            lo, lo_closed = self.lo, self.lo_closed
        elif self.lo < other.lo:
            lo, lo_closed = other.lo, other.lo_closed
        else:
            lo, lo_closed = self.lo, self.lo_closed and other.lo_closed
        if self.hi < other.hi:
            hi, hi_closed = self.hi, self.hi_closed
        elif self.hi > other.hi:
            hi, hi_closed = other.hi, other.hi_closed
        else:
            hi, hi_closed = self.hi, self.hi_closed and other.hi_closed
        return Interval.make(lo, hi, lo_closed, hi_closed)

    def issubset(self, other: "Interval") -> bool:
        return self.intersect(other) == self

    def _render(self, places: int = 6) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{format_number(self.lo, places)}, {format_number(self.hi, places)}{right}"

    def __str__(self) -> str:
        return self._render()


def parse_interval(text: str) -> Interval:
    """Parse "[a, b]", "(a, b]", "[a, b)" or "(a, b)" with exact endpoints"""
    match = _INTERVAL_RE.match(text)
    if not match:
        raise InvalidNumberError(f"not an interval: {text!r}")
    left, lo, hi, right = match.groups()
    return Interval(parse_rational(lo), parse_rational(hi), left == "[", right == "]")


def _connects(left: Interval, right: Interval) -> bool:
    # `right` starts at or after `left`
    if right.lo < left.hi:
        return True
    return right.lo == left.hi and (left.hi_closed or right.lo_closed)


def _hull(left: Interval, right: Interval) -> Interval:
    if right.hi > left.hi:
        hi, hi_closed = right.hi, right.hi_closed
    elif right.hi < left.hi:
        hi, hi_closed = left.hi, left.hi_closed
    else:
        hi, hi_closed = left.hi, left.hi_closed or right.hi_closed
    return Interval(left.lo, hi, left.lo_closed, hi_closed)


def _difference(base: Interval, holes: Iterable[Interval]) -> List[Interval]:
    clipped = [h for h in (base.intersect(h) for h in holes) if h is not None]
    clipped.sort(key=lambda iv: (iv.lo, not iv.lo_closed))
    pieces = []
    lo, lo_closed = base.lo, base.lo_closed
    for hole in clipped:
        piece = Interval.make(lo, hole.lo, lo_closed, not hole.lo_closed)
        if piece is not None:
            pieces.append(piece)
        if hole.hi > lo or (hole.hi == lo and hole.hi_closed):
            lo, lo_closed = hole.hi, not hole.hi_closed
    tail = Interval.make(lo, base.hi, lo_closed, base.hi_closed)
    if tail is not None:
        pieces.append(tail)
    return pieces


class IntervalSet:
    """Finite union of intervals in canonical form (sorted, disjoint, merged)"""

    __slots__ = ("_parts",)

    def __init__(self, parts: Iterable[Interval] = ()):
        ordered = sorted(parts, key=lambda iv: (iv.lo, not iv.lo_closed))
        stack: List[Interval] = []
        for interval in ordered:
            if stack and _connects(stack[-1], interval):
                stack[-1] = _hull(stack[-1], interval)
            else:
                stack.append(interval)
        self._parts: Tuple[Interval, ...] = tuple(stack)

    @classmethod
    def of(cls, *parts: Interval) -> "IntervalSet":
        return cls(parts)

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls(())

    @property
    def parts(self) -> Tuple[Interval, ...]:
        return self._parts

    @property
    def is_empty(self) -> bool:
        return not self._parts

    def __iter__(self) -> Iterator[Interval]:
        return iter(self._parts)

    def __len__(self) -> int:
        return len(self._parts)

    def __bool__(self) -> bool:
        return bool(self._parts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self._parts == other._parts

    def __hash__(self) -> int:
        return hash(self._parts)

    def __contains__(self, x) -> bool:
        return any(part.contains(x) for part in self._parts)

    def __repr__(self) -> str:
        return f"IntervalSet({str(self)})"

    def __str__(self) -> str:
        if not self._parts:
            return "∅"
        return " ∪ ".join(str(part) for part in self._parts)

    def component_index(self, x: NumberLike) -> Optional[int]:
        for index, part in enumerate(self._parts):
            if part.contains(x):
                return index
        return None

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self._parts + other._parts)

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        result = []
        i = j = 0
        mine, theirs = self._parts, other._parts
        while i < len(mine) and j < len(theirs):
            overlap = mine[i].intersect(theirs[j])
            if overlap is not None:
                result.append(overlap)
            if (mine[i].hi, mine[i].hi_closed) < (theirs[j].hi, theirs[j].hi_closed):
                i += 1
            else:
                j += 1
        return IntervalSet(result)

    def subtract(self, other: "IntervalSet") -> "IntervalSet":
        result = []
        for part in self._parts:
            result.extend(_difference(part, other._parts))
        return IntervalSet(result)

    def issubset(self, other: "IntervalSet") -> bool:
        return self.subtract(other).is_empty

    def measure(self) -> Fraction:
        return sum((part.length for part in self._parts), Fraction(0))


def affine_image(s: IntervalSet, scale: NumberLike, offset: NumberLike) -> IntervalSet:
    """Exact image {scale*x + offset : x in s}; endpoint openness travels with the endpoint"""
    scale = parse_rational(scale)
    offset = parse_rational(offset)
    if scale == 0:
        raise DegenerateMapError("degenerate affine map")
    images = []
    for part in s:
        if not part.is_bounded:
            raise UnboundedSetError(f"cannot map unbounded interval {part}")
        lo = scale * part.lo + offset
        hi = scale * part.hi + offset
        if scale > 0:
            images.append(Interval(lo, hi, part.lo_closed, part.hi_closed))
        else:
            images.append(Interval(hi, lo, part.hi_closed, part.lo_closed))
    return IntervalSet(images)


def set_combine(a: IntervalSet, b: IntervalSet, mode: SetOp) -> IntervalSet:
    mode = SetOp(mode)
    if mode is SetOp.UNION:
        return a.union(b)
    if mode is SetOp.INTERSECT:
        return a.intersect(b)
    return a.subtract(b)


def measure(s: IntervalSet) -> Fraction:
    """Total length; openness does not matter, unbounded parts are an error"""
    return s.measure()
