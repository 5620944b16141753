from app.core.models import OutputFormat
from app.runs.result import RunResult
from app.schemas.instance import RunConfig
from app.schemas.report import VerificationOut, dump
from app.tracking.verification import run_verification


def run_verify(config: RunConfig) -> RunResult:
    report = run_verification(config.samples, config.seed, config.max_periods, config.oracle_cap)
    doc = VerificationOut.build(report)
    if config.format_or(OutputFormat.JSON) is OutputFormat.TEXT:
        text = (
            f"{'PASS' if doc.passed else 'FAIL'} seed={doc.seed} samples={doc.samples} "
            f"boundary={doc.boundary_checked} (skipped {doc.boundary_skipped}) "
            f"under={doc.under_checked} (skipped {doc.under_skipped}) "
            f"over={doc.over_checked} (skipped {doc.over_skipped})\n"
        )
        text += "".join(f"mismatch: {line}\n" for line in doc.mismatches)
    else:
        text = dump(doc) + "\n"
    return RunResult(text=text, exit_code=0 if doc.passed else 4)
