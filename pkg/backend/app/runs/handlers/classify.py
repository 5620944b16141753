from app.core.models import OutputFormat
from app.runs.result import RunResult
from app.schemas.instance import RunConfig
from app.schemas.report import ClassificationOut, dump
from app.tracking.classifier import classify, violation_horizon


def run_classify(config: RunConfig) -> RunResult:
    """Classify an instance and cite the deciding lemma"""
    instance = config.instance()
    result = classify(instance)
    horizon = violation_horizon(instance, result)
    if config.format_or(OutputFormat.JSON) is OutputFormat.TEXT:
        text = f"{result} a={result.a}"
        if result.witness is not None:
            text += f" witness={result.witness}"
        if horizon is not None:
            text += f" violation within {horizon} steps"
        return RunResult(text=text + "\n")
    return RunResult(text=dump(ClassificationOut.build(instance, result, horizon)) + "\n")
