from app.render.tables import trace_csv
from app.runs.result import RunResult
from app.schemas.instance import RunConfig
from app.tracking.model import simulate


def run_simulate(config: RunConfig) -> RunResult:
    """Size trace of a strategy, one CSV row per step"""
    trace = simulate(config.instance(), config.policy(), config.eta0_size(), config.horizon)
    result = RunResult(text=trace_csv(trace))
    step = trace.violation
    if step is not None:
        broken = "privacy" if not step.ppc_ok else "tracking"
        result.notes.append(f"{broken} bound violated at step {step.k}")
        result.exit_code = 2
    return result
