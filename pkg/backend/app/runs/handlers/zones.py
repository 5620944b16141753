from app.core.models import OutputFormat, Verdict
from app.runs.result import RunResult
from app.schemas.instance import RunConfig
from app.schemas.report import ZoneReportOut, dump
from app.tracking.boundary import backpropagate_zones, describe, tau_relaxed_feasible


def run_zones(config: RunConfig) -> RunResult:
    """Impossibility zones and feasible initial sizes of a boundary instance"""
    report = backpropagate_zones(config.instance(), config.max_periods)
    relaxed = tau_relaxed_feasible(report, config.tau) if config.tau is not None else None

    if config.format_or(OutputFormat.JSON) is OutputFormat.TEXT:
        lines = [describe(report), f"feasible: {report.feasible_set}"]
        lines += [f"zone {z.j}: {z.interval}" for z in report.zones]
        if relaxed is not None:
            lines.append(f"feasible with tau={config.tau}: {relaxed}")
        text = "\n".join(lines) + "\n"
    else:
        notes = [config.note] if config.note else []
        text = dump(ZoneReportOut.build(report, config.tau, relaxed, notes)) + "\n"

    exit_code = {Verdict.FEASIBLE: 0, Verdict.INFEASIBLE: 2, Verdict.UNDETERMINED: 3}[report.verdict]
    return RunResult(text=text, exit_code=exit_code, notes=list(report.notes))
