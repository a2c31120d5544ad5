import click

from bollobas.commands.common import FLAVORS, emit, functional_for, load, options, probability_option, source_argument
from bollobas.schemas.report_schema import ReportDocument
from bollobas.services.document_service import to_document
from bollobas.services.report_service import certificate_report, trace_report
from bollobas.services.saturation_service import certify_full_system, prove, saturate


@click.command("saturate")
@source_argument
@click.option("--flavor", type=FLAVORS, required=True, help="set, pair (subspace pairs) or tuple (subspace d-tuples).")
@click.option("--functional", "name", help="Invariant functional to track (default depends on the flavor).")
@click.option("--p", "p", callback=probability_option, help="Probability vector for tuza.")
@click.option("--trace", "with_steps", is_flag=True, help="Include every fill-up step in the report.")
@click.option("--reverify/--no-reverify", default=None, help="Re-verify the condition after every step.")
def saturate_command(source, flavor: str, name: str | None, p, with_steps: bool, reverify: bool | None) -> None:
    """Fill up a system until every tuple is full."""
    system = load(source)
    functional = functional_for(name, p, system.d)
    trace = saturate(system, flavor.lower(), functional, reverify=reverify)
    emit(
        ReportDocument(
            command="saturate",
            options=options(flavor=flavor, functional=name, p=p, reverify=reverify),
            trace=trace_report(trace, with_steps=with_steps),
            system=to_document(trace.final),
        )
    )


@click.command("certify")
@source_argument
@click.option("--flavor", type=FLAVORS, required=True)
@click.option("--functional", "name", help="Functional whose type classes are counted.")
@click.option("--p", "p", callback=probability_option, help="Probability vector for tuza.")
@click.option("--saturate", "saturate_first", is_flag=True, help="Saturate non-full inputs before certifying.")
@click.pass_context
def certify_command(ctx: click.Context, source, flavor: str, name: str | None, p, saturate_first: bool) -> None:
    """Count the type classes of a full system and certify its weight bound."""
    system = load(source)
    functional = functional_for(name, p, system.d)
    trace = None
    if saturate_first:
        trace, certificate = prove(system, flavor.lower(), functional)
    else:
        certificate = certify_full_system(system, flavor.lower(), functional)
    emit(
        ReportDocument(
            command="certify",
            options=options(flavor=flavor, functional=name, p=p, saturate=saturate_first or None),
            trace=None if trace is None else trace_report(trace),
            certificates=[certificate_report(certificate)],
        )
    )
    ctx.exit(0 if certificate.holds else 1)
