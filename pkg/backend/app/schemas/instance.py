from typing import Optional

from pydantic import BaseModel, Field, field_validator

from app.core.config import settings
from app.core.exceptions import InvalidInstanceError, TrackingError
from app.core.models import OutputFormat, Subcommand
from app.tracking.exactnum import Interval, parse_interval, parse_rational
from app.tracking.model import Policy, ProblemInstance, SensingVector, parse_policy


def _exact(value: Optional[str]) -> Optional[str]:
    if value is None:
        return value
    try:
        parse_rational(value)
    except TrackingError as exc:
        raise ValueError(exc.detail)
    return value


class InstanceIn(BaseModel):
    r_p: Optional[str] = Field(None, description="Privacy lower bound")
    r_t: Optional[str] = Field(None, description="Tracking upper bound")
    delta: Optional[str] = Field(None, description="Maximum per-step motion diameter")
    c: Optional[int] = Field(None, ge=1, description="Number of set-points")

    @field_validator("r_p", "r_t", "delta")
    @classmethod
    def exact_number(cls, v):
        return _exact(v)

    def require(self, *names: str) -> None:
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            flags = ", ".join("--" + n.replace("_", "") for n in missing)
            raise InvalidInstanceError(f"missing {flags}")

    def to_instance(self) -> ProblemInstance:
        self.require("r_p", "r_t", "delta", "c")
        return ProblemInstance(parse_rational(self.r_p), parse_rational(self.r_t), parse_rational(self.delta), self.c)


class RunConfig(BaseModel):
    subcommand: Subcommand
    params: InstanceIn = Field(default_factory=InstanceIn)
    note: Optional[str] = Field(None, description="Note attached to a preset instance")
    output_format: Optional[OutputFormat] = None
    output: Optional[str] = None

    eta0: Optional[str] = Field(None, description="Initial I-state size")
    strategy: Optional[str] = None
    horizon: int = Field(settings.simulate_horizon, ge=1)
    tau: Optional[int] = Field(None, ge=0)
    max_periods: int = Field(settings.zone_max_periods, ge=1)
    oracle_cap: int = Field(settings.oracle_iteration_cap, ge=1)
    depth: int = Field(settings.survival_depth, ge=1)

    resolution: Optional[int] = Field(None, ge=2)
    window: Optional[str] = Field(None, description="r_p_lo,r_p_hi,r_t_lo,r_t_hi")
    samples: int = Field(settings.verify_samples, ge=1)
    seed: int = settings.verify_seed

    prior: Optional[str] = None
    set_points: Optional[str] = None
    pos: Optional[str] = None

    @field_validator("eta0", "pos")
    @classmethod
    def exact_number(cls, v):
        return _exact(v)

    @field_validator("window")
    @classmethod
    def four_numbers(cls, v):
        if v is None:
            return v
        parts = v.split(",")
        if len(parts) != 4:
            raise ValueError("window needs four comma-separated numbers")
        for part in parts:
            _exact(part)
        return v

    @field_validator("set_points")
    @classmethod
    def number_list(cls, v):
        if v is None:
            return v
        for part in v.split(","):
            _exact(part)
        return v

    @field_validator("prior", "strategy")
    @classmethod
    def well_formed(cls, v, info):
        if v is None:
            return v
        try:
            parse_interval(v) if info.field_name == "prior" else parse_policy(v)
        except TrackingError as exc:
            raise ValueError(exc.detail)
        return v

    def format_or(self, default: OutputFormat) -> OutputFormat:
        return self.output_format or default

    def instance(self) -> ProblemInstance:
        return self.params.to_instance()

    def eta0_size(self):
        if self.eta0 is None:
            raise InvalidInstanceError(f"{self.subcommand.value} needs --eta0")
        return parse_rational(self.eta0)

    def policy(self) -> Policy:
        if self.strategy is None:
            raise InvalidInstanceError("simulate needs --strategy")
        return parse_policy(self.strategy)

    def window_bounds(self):
        if self.window is None:
            return None
        return tuple(parse_rational(part) for part in self.window.split(","))

    def prior_interval(self) -> Interval:
        if self.prior is None:
            raise InvalidInstanceError("sense needs --prior")
        return parse_interval(self.prior)

    def sensing_vector(self) -> SensingVector:
        if self.set_points is None:
            raise InvalidInstanceError("sense needs --set-points")
        return SensingVector(tuple(parse_rational(u) for u in self.set_points.split(",")))

    def position(self):
        if self.pos is None:
            raise InvalidInstanceError("sense needs --pos")
        return parse_rational(self.pos)
