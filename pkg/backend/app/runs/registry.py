import logging

from app.core.models import Subcommand
from app.runs.handlers import analysis, classify, oracle, sense, simulate, strategy, verify, zones
from app.runs.result import RunResult
from app.schemas.instance import RunConfig


logger = logging.getLogger(__name__)

handlers = {
    Subcommand.CLASSIFY: classify.run_classify,
    Subcommand.ZONES: zones.run_zones,
    Subcommand.STRATEGY: strategy.run_strategy,
    Subcommand.SIMULATE: simulate.run_simulate,
    Subcommand.ORACLE: oracle.run_oracle,
    Subcommand.RTSTAR: analysis.run_rtstar,
    Subcommand.MAP: analysis.run_map,
    Subcommand.POWER: analysis.run_power,
    Subcommand.VERIFY: verify.run_verify,
    Subcommand.SENSE: sense.run_sense,
}


def run(config: RunConfig) -> RunResult:
    """Dispatch a validated config to its subcommand handler"""
    logger.info("run %s", config.subcommand.value)
    result = handlers[config.subcommand](config)
    if config.note:
        result.notes.append(f"note: {config.note}")
    if config.output and not result.artifacts:
        result.artifacts[config.output] = result.text
        result.text = ""
    return result
