import click

from bollobas.commands.common import (
    RELATIONS,
    blocks_option,
    emit,
    emit_system,
    field_option,
    load,
    options,
    source_argument,
)
from bollobas.exceptions import ShapeError
from bollobas.models.condition import ConditionKind, Domain, Relation
from bollobas.models.scalars import format_rational
from bollobas.models.system import SetSystem, embed
from bollobas.schemas.report_schema import ReportDocument
from bollobas.services.construction_service import Family, FamilyName, construct, expected_tightness
from bollobas.services.document_service import to_document
from bollobas.services.search_service import Ground, random_valid_system
from bollobas.services.weight_service import omega

FAMILIES = click.Choice([name.value for name in FamilyName], case_sensitive=False)


@click.command("construct")
@click.option("--family", "name", type=FAMILIES, required=True)
@click.option("--params", "params", default="", help="Family parameters, e.g. n=4 or n=4,blocks=1+2|3+4.")
@click.option("--embedded", is_flag=True, help="Emit the coordinate subspace version.")
@click.option("--report", "with_report", is_flag=True, help="Emit a report with the attained functional values.")
@click.pass_context
def construct_command(ctx: click.Context, name: str, params: str, embedded: bool, with_report: bool) -> None:
    """Build one of the extremal families."""
    family = Family.from_params(name.lower(), params, embedded=embedded)
    system = construct(family)
    if not with_report:
        emit_system(system)
        return
    values, tight = {}, True
    for functional, expected in expected_tightness(family).items():
        value = omega(system, functional)
        values[functional.label] = format_rational(value)
        tight = tight and value == expected
    emit(
        ReportDocument(
            command="construct",
            options=options(family=name, params=params or None, embedded=embedded or None),
            values=values,
            system=to_document(system),
        )
    )
    ctx.exit(0 if tight else 1)


@click.command("embed")
@source_argument
def embed_command(source) -> None:
    """Map a set system to coordinate subspaces over the rationals."""
    system = load(source)
    if not isinstance(system, SetSystem):
        raise ShapeError("only set systems can be embedded")
    emit_system(embed(system))


@click.command("random")
@click.option("--seed", type=int, required=True)
@click.option("--m", "m", type=click.IntRange(min=0), required=True, help="Target number of tuples.")
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--d", "d", type=click.IntRange(min=1), default=2, show_default=True)
@click.option("--kind", "relation", type=RELATIONS, default="skew", show_default=True)
@click.option("--field", "field", callback=field_option, help="Generate subspaces over this field (rationals, GF(p)).")
@click.option("--blocks", callback=blocks_option, help="Partition / coordinate decomposition, e.g. 1+2|3+4.")
def random_command(seed: int, m: int, n: int, d: int, relation: str, field, blocks) -> None:
    """Generate a seeded random system satisfying a condition."""
    ground = Ground(n, field, None if blocks is None else tuple(tuple(block) for block in blocks))
    domain = Domain.SET if field is None else Domain.SUBSPACE
    condition = ConditionKind(Relation(relation.lower()), domain, d)
    emit_system(random_valid_system(ground, condition, m, seed))
