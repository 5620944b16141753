import enum


class ProblemClass(str, enum.Enum):
    TRIVIALLY_INFEASIBLE = "trivially_infeasible"
    UNDER_CONSTRAINED = "under_constrained"
    OVER_CONSTRAINED = "over_constrained"
    BOUNDARY = "boundary"


class Lemma(str, enum.Enum):
    L3 = "L3"
    L4 = "L4"
    L5 = "L5"
    L6I = "L6i"
    L6II = "L6ii"
    L7 = "L7"


class CaseLabel(str, enum.Enum):
    L9 = "L9"
    L10 = "L10"
    L11 = "L11"
    L12_FEASIBLE = "L12_feasible"
    L12_INFEASIBLE = "L12_infeasible"

    @property
    def feasible(self) -> bool:
        return self in (CaseLabel.L10, CaseLabel.L12_FEASIBLE)


class Verdict(str, enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNDETERMINED = "undetermined"


class SetOp(str, enum.Enum):
    UNION = "union"
    INTERSECT = "intersect"
    SUBTRACT = "subtract"


class ActionKind(str, enum.Enum):
    PLUS = "+"
    MINUS = "-"
    SPLIT = "s"


class OutputFormat(str, enum.Enum):
    JSON = "json"
    CSV = "csv"
    SVG = "svg"
    TEXT = "text"
    BOTH = "both"


class Subcommand(str, enum.Enum):
    CLASSIFY = "classify"
    ZONES = "zones"
    STRATEGY = "strategy"
    SIMULATE = "simulate"
    ORACLE = "oracle"
    RTSTAR = "rtstar"
    MAP = "map"
    POWER = "power"
    VERIFY = "verify"
    SENSE = "sense"
