import click

from bollobas.commands.common import (
    RELATIONS,
    emit,
    functional_for,
    load,
    options,
    probability_option,
    source_argument,
)
from bollobas.exceptions import LicensingError
from bollobas.models.condition import ConditionKind
from bollobas.models.scalars import format_rational
from bollobas.schemas.report_schema import ReportDocument
from bollobas.services.report_service import certificate_report, verdict_report, verification_section
from bollobas.services.verify_service import applicable_certificates, verify
from bollobas.services.weight_service import evaluate_inequality, omega


@click.command("verify")
@source_argument
@click.option("--kind", "relation", type=RELATIONS, required=True, help="Condition to check.")
@click.option("--monotone", is_flag=True, help="Also require a_1<=...<=a_m and b_1>=...>=b_m.")
@click.pass_context
def verify_command(ctx: click.Context, source, relation: str, monotone: bool) -> None:
    """Check a system against a Bollobás-type condition."""
    system = load(source)
    kind = ConditionKind.for_system(system, relation.lower(), monotone=monotone)
    report = verify(system, kind)
    certificates = [certificate_report(c) for c in applicable_certificates(system, kind)] if report.verdict else None
    emit(
        ReportDocument(
            command="verify",
            options=options(kind=relation, monotone=monotone or None),
            verification=verification_section(report),
            certificates=certificates or None,
        )
    )
    ctx.exit(0 if report.verdict else 1)


@click.command("weight")
@source_argument
@click.option("--functional", "name", required=True, help="bollobas, yue, partitioned_yue, y26, tuza, scott_wilmer or hegedus_frankl.")
@click.option("--p", "p", callback=probability_option, help="Probability vector for tuza, e.g. 1/2,1/4,1/4.")
@click.pass_context
def weight_command(ctx: click.Context, source, name: str, p) -> None:
    """Evaluate a weight functional and the inequality that bounds it."""
    system = load(source)
    functional = functional_for(name, p, system.d)
    value = omega(system, functional)
    echo = options(functional=functional.kind.value, p=functional.p)
    try:
        verdict = evaluate_inequality(system, functional)
    except LicensingError:
        # the value is always reported; the refusal goes to stderr
        emit(ReportDocument(command="weight", options=echo, values={functional.label: format_rational(value)}))
        raise
    emit(ReportDocument(command="weight", options=echo, verdict=verdict_report(verdict)))
    ctx.exit(0 if verdict.holds else 1)
