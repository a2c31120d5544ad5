import click
from pydantic import BaseModel

from bollobas.exceptions import BollobasError
from bollobas.models.condition import Functional, FunctionalKind
from bollobas.models.scalars import Field, ProbabilityVector
from bollobas.models.system import System
from bollobas.services.construction_service import parse_blocks
from bollobas.services.document_service import dump, parse, serialize

RELATIONS = click.Choice(["bollobas", "skew", "weak"], case_sensitive=False)
FLAVORS = click.Choice(["set", "pair", "tuple"], case_sensitive=False)

source_argument = click.argument("source", type=click.File("r"), default="-")


def probability_option(ctx: click.Context, param: click.Parameter, value: str | None) -> ProbabilityVector | None:
    if value is None:
        return None
    try:
        return ProbabilityVector.parse(value)
    except BollobasError as exc:
        raise click.BadParameter(exc.detail)


def field_option(ctx: click.Context, param: click.Parameter, value: str | None) -> Field | None:
    if value is None:
        return None
    try:
        return Field.from_label(value)
    except BollobasError as exc:
        raise click.BadParameter(exc.detail)


def blocks_option(ctx: click.Context, param: click.Parameter, value: str | None) -> list[list[int]] | None:
    if value is None:
        return None
    try:
        return parse_blocks(value)
    except ValueError:
        raise click.BadParameter(f"'{value}' is not of the form 1+2|3+4")


def integers_option(ctx: click.Context, param: click.Parameter, value: str | None) -> tuple[int, ...] | None:
    if value is None:
        return None
    try:
        return tuple(int(part) for part in value.split(","))
    except ValueError:
        raise click.BadParameter(f"'{value}' is not a comma separated list of integers")


def load(source) -> System:
    return parse(source.read())


def functional_for(name: str | None, p: ProbabilityVector | None, d: int) -> Functional | None:
    # tuza without --p uses the uniform vector of the system's arity
    if name is None:
        return None
    kind = FunctionalKind.from_name(name)
    if kind is FunctionalKind.TUZA and p is None:
        p = ProbabilityVector.uniform(d)
    return Functional(kind, p)


def emit(report: BaseModel) -> None:
    click.echo(dump(report), nl=False)


def emit_system(system: System) -> None:
    click.echo(serialize(system), nl=False)


def options(**values) -> dict[str, str]:
    return {key: str(value) for key, value in values.items() if value is not None}
