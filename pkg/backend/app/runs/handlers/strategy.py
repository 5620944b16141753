from app.core.exceptions import InfeasibleStartError, NoStrategyError
from app.core.models import ProblemClass
from app.runs.result import RunResult
from app.schemas.instance import RunConfig
from app.tracking.boundary import backpropagate_zones, synthesize_strategy
from app.tracking.classifier import classify
from app.tracking.exactnum import format_number


def run_strategy(config: RunConfig) -> RunResult:
    """The privacy-preserving tracking strategy for one initial size"""
    instance = config.instance()
    eta0 = config.eta0_size()
    result = classify(instance)

    if result.problem_class is ProblemClass.BOUNDARY:
        report = backpropagate_zones(instance, config.max_periods)
        word = synthesize_strategy(report, eta0)
        return RunResult(text=f"{word}\n")

    if result.problem_class is not ProblemClass.UNDER_CONSTRAINED:
        raise NoStrategyError(f"no strategy exists: instance is {result}")
    if not instance.r_p <= eta0 <= instance.r_t:
        raise InfeasibleStartError(
            f"initial I-state infeasible: size {format_number(eta0)} is outside "
            f"[{format_number(instance.r_p)}, {format_number(instance.r_t)}]"
        )
    return RunResult(text=f"{result.witness}\n")
