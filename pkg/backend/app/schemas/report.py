"""JSON output documents. Every rational is serialized as "p/q" (or "p")."""
from typing import List, Optional

from pydantic import BaseModel, Field

from app.core.models import CaseLabel, Lemma, ProblemClass, Verdict
from app.tracking.analysis import PowerEstimate
from app.tracking.boundary import ZoneReport
from app.tracking.classifier import Classification
from app.tracking.exactnum import Interval, IntervalSet, format_fixed, format_rational
from app.tracking.model import ProblemInstance
from app.tracking.oracle import OracleResult
from app.tracking.verification import VerificationReport


class InstanceOut(BaseModel):
    r_p: str
    r_t: str
    delta: str
    c: int
    a: int

    @classmethod
    def build(cls, p: ProblemInstance) -> "InstanceOut":
        return cls(
            r_p=format_rational(p.r_p),
            r_t=format_rational(p.r_t),
            delta=format_rational(p.delta),
            c=p.c,
            a=p.a,
        )


class IntervalOut(BaseModel):
    lo: str
    hi: str
    lo_closed: bool
    hi_closed: bool
    text: str

    @classmethod
    def build(cls, iv: Interval) -> "IntervalOut":
        return cls(
            lo=format_rational(iv.lo),
            hi=format_rational(iv.hi),
            lo_closed=iv.lo_closed,
            hi_closed=iv.hi_closed,
            text=str(iv),
        )


def intervals_out(s: IntervalSet) -> List[IntervalOut]:
    return [IntervalOut.build(part) for part in s]


class ClassificationOut(BaseModel):
    instance: InstanceOut
    problem_class: ProblemClass = Field(..., serialization_alias="class")
    lemma: Optional[Lemma] = None
    a: int
    witness_strategy: Optional[str] = None
    violation_horizon: Optional[int] = None

    @classmethod
    def build(cls, p: ProblemInstance, result: Classification, horizon: Optional[int]) -> "ClassificationOut":
        return cls(
            instance=InstanceOut.build(p),
            problem_class=result.problem_class,
            lemma=result.lemma,
            a=result.a,
            witness_strategy=str(result.witness) if result.witness is not None else None,
            violation_horizon=horizon,
        )


class ZoneOut(IntervalOut):
    j: int

    @classmethod
    def from_zone(cls, j: int, iv: Interval) -> "ZoneOut":
        return cls(j=j, **IntervalOut.build(iv).model_dump())


class ZoneReportOut(BaseModel):
    instance: InstanceOut
    p: int
    m: int
    zone0: IntervalOut
    plus_intervals: List[IntervalOut]
    minus_intervals: List[IntervalOut]
    zones: List[ZoneOut]
    case_label: Optional[CaseLabel] = None
    verdict: Verdict
    ratio_w_over_v: Optional[str] = None
    feasible_set: List[IntervalOut]
    feasible_text: str
    strategy_rule: str
    taint_fractions: List[str]
    tau: Optional[int] = None
    tau_relaxed_set: Optional[List[IntervalOut]] = None
    notes: List[str] = []

    @classmethod
    def build(cls, report: ZoneReport, tau: Optional[int] = None,
              relaxed: Optional[IntervalSet] = None, notes: Optional[List[str]] = None) -> "ZoneReportOut":
        part = report.partition
        return cls(
            instance=InstanceOut.build(report.instance),
            p=part.p,
            m=part.m,
            zone0=IntervalOut.build(part.zone0),
            plus_intervals=[IntervalOut.build(iv) for iv in part.plus_intervals],
            minus_intervals=[IntervalOut.build(iv) for iv in part.minus_intervals],
            zones=[ZoneOut.from_zone(z.j, z.interval) for z in report.zones],
            case_label=report.case_label,
            verdict=report.verdict,
            ratio_w_over_v=format_rational(report.ratio) if report.ratio is not None else None,
            feasible_set=intervals_out(report.feasible_set),
            feasible_text=str(report.feasible_set),
            strategy_rule=report.strategy_rule,
            taint_fractions=[format_rational(t) for t in report.taint_fractions],
            tau=tau,
            tau_relaxed_set=intervals_out(relaxed) if relaxed is not None else None,
            notes=list(report.notes) + list(notes or []),
        )


class OracleOut(BaseModel):
    instance: InstanceOut
    safe_set: List[IntervalOut]
    safe_text: str
    converged: bool
    iterations: int
    eta0: Optional[str] = None
    survival: Optional[int] = None
    depth: Optional[int] = None

    @classmethod
    def build(cls, p: ProblemInstance, result: OracleResult) -> "OracleOut":
        return cls(
            instance=InstanceOut.build(p),
            safe_set=intervals_out(result.safe_set),
            safe_text=str(result.safe_set),
            converged=result.converged,
            iterations=result.iterations,
        )


class RtStarOut(BaseModel):
    r_p: str
    delta: str
    c: int
    rt_star: str


class PowerOut(BaseModel):
    c: int
    resolution: int
    estimate: str
    error_bound: str
    estimate_decimal: str
    error_bound_decimal: str


class VerificationOut(BaseModel):
    samples: int
    seed: int
    passed: bool
    boundary_checked: int
    boundary_skipped: int
    under_checked: int
    under_skipped: int
    over_checked: int
    over_skipped: int
    shape_violations: int
    mismatches: List[str]

    @classmethod
    def build(cls, report: VerificationReport) -> "VerificationOut":
        return cls(
            samples=report.samples,
            seed=report.seed,
            passed=report.passed,
            boundary_checked=report.boundary_checked,
            boundary_skipped=report.boundary_skipped,
            under_checked=report.under_checked,
            under_skipped=report.under_skipped,
            over_checked=report.over_checked,
            over_skipped=report.over_skipped,
            shape_violations=report.shape_violations,
            mismatches=report.mismatches,
        )


def power_out(estimate: PowerEstimate, places: int) -> PowerOut:
    return PowerOut(
        c=estimate.c,
        resolution=estimate.resolution,
        estimate=format_rational(estimate.estimate),
        error_bound=format_rational(estimate.error_bound),
        estimate_decimal=format_fixed(estimate.estimate, places),
        error_bound_decimal=format_fixed(estimate.error_bound, places),
    )


def dump(doc: BaseModel) -> str:
    return doc.model_dump_json(indent=2, by_alias=True)
