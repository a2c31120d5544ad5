import click

from bollobas.commands.common import (
    RELATIONS,
    blocks_option,
    emit,
    field_option,
    functional_for,
    integers_option,
    options,
    probability_option,
)
from bollobas.models.condition import ConditionKind, Domain, Relation
from bollobas.schemas.report_schema import ReportDocument
from bollobas.services.report_service import search_report
from bollobas.services.search_service import Ground, Objective, SearchProblem, search_max

OBJECTIVES = click.Choice([objective.value for objective in Objective], case_sensitive=False)


@click.command("search")
@click.option("--objective", type=OBJECTIVES, default="max-m", show_default=True)
@click.option("--budget", type=click.IntRange(min=1), help="Node budget (default from BOLLOBAS_NODE_BUDGET).")
@click.option("--time-budget", type=click.FloatRange(min=0), help="Wall-clock seconds per search, 0 for none.")
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--d", "d", type=click.IntRange(min=1), default=2, show_default=True)
@click.option("--kind", "relation", type=RELATIONS, default="skew", show_default=True)
@click.option("--monotone", is_flag=True)
@click.option("--field", "field", callback=field_option, help="Search subspaces over GF(p) instead of subsets.")
@click.option("--blocks", callback=blocks_option, help="Partition / coordinate decomposition, e.g. 1+2|3+4.")
@click.option("--functional", "name", help="Functional for max-weight and counterexample.")
@click.option("--p", "p", callback=probability_option)
@click.option("--sizes", callback=integers_option, help="Only tuples with these component sizes, e.g. 1,1.")
@click.option("--no-prune", "no_prune", is_flag=True, help="Disable bound pruning.")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--force", is_flag=True, help="Ignore the ground size guard.")
@click.pass_context
def search_command(
    ctx: click.Context,
    objective: str,
    budget: int | None,
    time_budget: float | None,
    n: int,
    d: int,
    relation: str,
    monotone: bool,
    field,
    blocks,
    name: str | None,
    p,
    sizes,
    no_prune: bool,
    workers: int,
    force: bool,
) -> None:
    """Exhaustive search of small grounds for extremal systems."""
    ground = Ground(n, field, None if blocks is None else tuple(tuple(block) for block in blocks))
    domain = Domain.SET if field is None else Domain.SUBSPACE
    problem = SearchProblem(
        ground,
        ConditionKind(Relation(relation.lower()), domain, d, monotone),
        Objective(objective.lower()),
        functional_for(name, p, d),
        sizes,
        budget,
        time_budget,
        prune=not no_prune,
        force=force,
    )
    result = search_max(problem, workers=workers)
    emit(
        ReportDocument(
            command="search",
            options=options(
                objective=problem.objective.value,
                n=n,
                d=d,
                kind=relation,
                field=None if field is None else field.label,
                functional=name,
                p=p,
                sizes=None if sizes is None else ",".join(map(str, sizes)),
            ),
            search=search_report(result),
        )
    )
    if problem.objective is Objective.COUNTEREXAMPLE and result.exceeds_bound:
        ctx.exit(1)
