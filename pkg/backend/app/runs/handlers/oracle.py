from app.core.models import OutputFormat
from app.runs.result import RunResult
from app.schemas.instance import RunConfig
from app.schemas.report import OracleOut, dump
from app.tracking.exactnum import format_rational
from app.tracking.oracle import brute_force_survival, maximal_invariant_set


def run_oracle(config: RunConfig) -> RunResult:
    """Fixpoint safe set, plus exhaustive survival from --eta0 when given"""
    instance = config.instance()
    result = maximal_invariant_set(instance, config.oracle_cap)
    doc = OracleOut.build(instance, result)
    if config.eta0 is not None:
        eta0 = config.eta0_size()
        doc.eta0 = format_rational(eta0)
        doc.survival = brute_force_survival(instance, eta0, config.depth)
        doc.depth = config.depth

    if config.format_or(OutputFormat.JSON) is OutputFormat.TEXT:
        status = "converged" if result.converged else "not converged"
        text = f"{result.safe_set} ({status} after {result.iterations} iterations)\n"
        if doc.survival is not None:
            text += f"survival from {config.eta0}: {doc.survival}/{doc.depth}\n"
    else:
        text = dump(doc) + "\n"
    return RunResult(text=text, exit_code=0 if result.converged else 3)
