"""PrivTrack command line: python -m app.main <subcommand> [options]"""
import logging
import os
import sys
from typing import Optional

import click
from pydantic import ValidationError

from app.core.config import settings
from app.core.exceptions import InvalidInstanceError, InvalidNumberError, TrackingError
from app.core.models import OutputFormat, Subcommand
from app.runs.registry import run
from app.schemas.instance import InstanceIn, RunConfig
from app.tracking.exactnum import parse_rational
from app.tracking.presets import PRESETS, find_preset, get_preset


class RationalType(click.ParamType):
    """Exact decimal or p/q; the string is passed on unchanged"""

    name = "rational"

    def convert(self, value, param, ctx):
        text = str(value).strip()
        try:
            parse_rational(text)
        except InvalidNumberError as exc:
            self.fail(exc.detail, param, ctx)
        return text


RATIONAL = RationalType()


class TrackingGroup(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except TrackingError as exc:
            click.echo(f"error: {exc.detail}", err=True)
            ctx.exit(exc.exit_code)
        except click.UsageError as exc:
            exc.exit_code = 1
            raise


def _stack(*decorators):
    def apply(func):
        for decorator in reversed(decorators):
            func = decorator(func)
        return func
    return apply


instance_options = _stack(
    click.option("--preset", type=click.Choice(sorted(PRESETS)), help="Named instance; explicit flags override it"),
    click.option("--rp", "r_p", type=RATIONAL, help="Privacy lower bound r_p"),
    click.option("--rt", "r_t", type=RATIONAL, help="Tracking upper bound r_t"),
    click.option("--delta", type=RATIONAL, help="Maximum per-step motion diameter"),
    click.option("--c", "c", type=click.IntRange(min=1), help="Number of set-points"),
)

output_option = click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write to this file instead of stdout")


def format_option(*choices: str):
    return click.option("--format", "output_format", type=click.Choice(list(choices)), default=None,
                        help=f"Output format (default {choices[0]})")


def _params(preset: Optional[str], r_p, r_t, delta, c):
    values = {"r_p": r_p, "r_t": r_t, "delta": delta, "c": c}
    if preset:
        chosen = get_preset(preset)
        defaults = {"r_p": chosen.r_p, "r_t": chosen.r_t, "delta": chosen.delta, "c": chosen.c}
        values = {k: v if v is not None else defaults[k] for k, v in values.items()}
    match = find_preset(**values)
    note = match.note if match else None
    return InstanceIn(**values), note


def _execute(subcommand: Subcommand, preset=None, r_p=None, r_t=None, delta=None, c=None,
             output_format=None, **fields):
    fields = {k: v for k, v in fields.items() if v is not None}
    try:
        params, note = _params(preset, r_p, r_t, delta, c)
        config = RunConfig(
            subcommand=subcommand,
            params=params,
            note=note,
            output_format=OutputFormat(output_format) if output_format else None,
            **fields,
        )
    except ValidationError as exc:
        raise InvalidInstanceError("; ".join(err["msg"] for err in exc.errors()))

    result = run(config)
    for path, content in result.artifacts.items():
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(content)
    if result.text:
        click.echo(result.text, nl=False)
    for note in result.notes:
        click.echo(note, err=True)
    if result.exit_code:
        click.get_current_context().exit(result.exit_code)


@click.group(cls=TrackingGroup)
@click.option("--log-level", default=settings.log_level, show_default=True,
              type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False))
def cli(log_level):
    """Exact analysis of one-dimensional privacy-preserving tracking problems."""
    logging.basicConfig(
        level=log_level.upper(),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


@cli.command()
@instance_options
@format_option("json", "text")
@output_option
def classify(**kwargs):
    """Classify an instance and cite the deciding lemma"""
    _execute(Subcommand.CLASSIFY, **kwargs)


@cli.command()
@instance_options
@click.option("--tau", type=click.IntRange(min=0), help="Pursuer gives up after tau steps")
@click.option("--max-periods", type=click.IntRange(min=1), help="Back-propagation cap, in periods")
@format_option("json", "text")
@output_option
def zones(**kwargs):
    """Impossibility zones and feasible initial sizes of a boundary instance"""
    _execute(Subcommand.ZONES, **kwargs)


@cli.command()
@instance_options
@click.option("--eta0", type=RATIONAL, required=True, help="Initial I-state size")
@click.option("--max-periods", type=click.IntRange(min=1))
@output_option
def strategy(**kwargs):
    """Strategy word (or feedback rule) from an initial size"""
    _execute(Subcommand.STRATEGY, **kwargs)


@cli.command()
@instance_options
@click.option("--strategy", required=True, help="e.g. '(+---)*', '---|(+---)*' or 'feedback:3'")
@click.option("--eta0", type=RATIONAL, required=True, help="Initial I-state size")
@click.option("--horizon", type=click.IntRange(min=1), help="Number of steps")
@output_option
def simulate(**kwargs):
    """Size trace under a strategy, as CSV"""
    _execute(Subcommand.SIMULATE, **kwargs)


@cli.command()
@instance_options
@click.option("--cap", "oracle_cap", type=click.IntRange(min=1), help="Fixpoint iteration cap")
@click.option("--eta0", type=RATIONAL, help="Also search exhaustively from this size")
@click.option("--depth", type=click.IntRange(min=1), help="Exhaustive search depth")
@format_option("json", "text")
@output_option
def oracle(**kwargs):
    """Greatest invariant set of the size dynamics"""
    _execute(Subcommand.ORACLE, **kwargs)


@cli.command()
@click.option("--rp", "r_p", type=RATIONAL, required=True)
@click.option("--delta", type=RATIONAL, required=True)
@click.option("--c", "c", type=click.IntRange(min=1), required=True)
@format_option("text", "json")
@output_option
def rtstar(**kwargs):
    """Tightest tracking bound r_t for (r_p, delta, c)"""
    _execute(Subcommand.RTSTAR, **kwargs)


@cli.command(name="map")
@click.option("--c", "c", type=click.IntRange(min=1), required=True)
@click.option("--resolution", type=click.IntRange(min=2))
@click.option("--window", help="r_p_lo,r_p_hi,r_t_lo,r_t_hi (default 0,2,0,2)")
@format_option("both", "csv", "svg")
@output_option
def region_map(**kwargs):
    """Region map at delta = 2 (CSV and/or SVG)"""
    _execute(Subcommand.MAP, **kwargs)


@cli.command()
@click.option("--c", "c", type=click.IntRange(min=1), required=True)
@click.option("--resolution", type=click.IntRange(min=2))
@format_option("json", "text")
@output_option
def power(**kwargs):
    """Tracking power p(c) with its grid error bound"""
    _execute(Subcommand.POWER, **kwargs)


@cli.command()
@click.option("--samples", type=click.IntRange(min=1))
@click.option("--seed", type=int)
@click.option("--max-periods", type=click.IntRange(min=1))
@click.option("--cap", "oracle_cap", type=click.IntRange(min=1))
@format_option("json", "text")
@output_option
def verify(**kwargs):
    """Randomized sweep of the analyzer against the oracle"""
    _execute(Subcommand.VERIFY, **kwargs)


@cli.command()
@click.option("--prior", required=True, help="Prior interval, e.g. '[0, 10]'")
@click.option("--set-points", required=True, help="Comma-separated, strictly increasing")
@click.option("--pos", type=RATIONAL, required=True, help="Target position")
@output_option
def sense(**kwargs):
    """Posterior I-state after one observation"""
    _execute(Subcommand.SENSE, **kwargs)


if __name__ == "__main__":
    cli()
