from app.runs.result import RunResult
from app.schemas.instance import RunConfig
from app.tracking.model import posterior_from_sensing


def run_sense(config: RunConfig) -> RunResult:
    """Posterior I-state after one observation with explicit set-points"""
    posterior = posterior_from_sensing(config.prior_interval(), config.sensing_vector(), config.position())
    return RunResult(text=f"{posterior}\n")
