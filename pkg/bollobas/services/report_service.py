from bollobas.models.certificate import (
    Certificate,
    InequalityVerdict,
    SaturationTrace,
    SearchResult,
    VerificationReport,
)
from bollobas.models.scalars import format_rational, format_scalar
from bollobas.schemas.report_schema import (
    BoundCheckReport,
    CertificateReport,
    SearchReport,
    StepReport,
    TraceReport,
    TypeClassReport,
    VerdictReport,
    VerificationSection,
    ViolationReport,
)
from bollobas.services.document_service import to_document


def verification_section(report: VerificationReport) -> VerificationSection:
    violation = None
    if report.violation is not None:
        v = report.violation
        violation = ViolationReport(clause=v.clause.value, i=v.i + 1, j=None if v.j is None else v.j + 1)
    return VerificationSection(
        condition=report.condition.label,
        verdict=report.verdict,
        violation=violation,
        field_caveat=report.field_caveat,
        duplicate=None if report.duplicate is None else [index + 1 for index in report.duplicate],
    )


def certificate_report(certificate: Certificate) -> CertificateReport:
    return CertificateReport(
        claim=certificate.claim,
        holds=certificate.holds,
        checks=[
            BoundCheckReport(
                label=check.label,
                value=format_rational(check.value),
                bound=format_rational(check.bound),
                holds=check.holds,
                tight=check.tight,
            )
            for check in certificate.checks
        ],
        classes=[
            TypeClassReport(
                key=list(klass.key),
                count=klass.count,
                bound=klass.bound,
                term=format_rational(klass.term),
                holds=klass.holds,
            )
            for klass in certificate.classes
        ],
        weight=None if certificate.weight is None else format_rational(certificate.weight),
        field_caveat=certificate.field_caveat,
        findings=list(certificate.findings),
    )


def verdict_report(verdict: InequalityVerdict) -> VerdictReport:
    return VerdictReport(
        functional=verdict.functional.label,
        value=format_rational(verdict.value),
        bound=format_rational(verdict.bound),
        holds=verdict.holds,
        tight=verdict.tight,
        licensing=verdict.licensing.label,
        field_caveat=verdict.field_caveat,
        notes=list(verdict.notes),
    )


def _element(element) -> str:
    if isinstance(element, int):
        return str(element)
    return "[" + ", ".join(format_scalar(entry) for entry in element) + "]"


def trace_report(trace: SaturationTrace, *, with_steps: bool = False) -> TraceReport:
    steps = None
    if with_steps:
        steps = [
            StepReport(
                index=step.index + 1,
                block=None if step.block is None else step.block + 1,
                element=_element(step.element),
                replacements=len(step.replacements),
                omega=format_rational(step.omega_after),
                phi_before=step.phi_before,
                phi_after=step.phi_after,
            )
            for step in trace.steps
        ]
    return TraceReport(
        flavor=trace.flavor.value,
        functional=trace.functional.label,
        step_count=len(trace.steps),
        initial_m=trace.initial.m,
        final_m=trace.final.m,
        omega=format_rational(trace.omega),
        phi_initial=trace.phi_initial,
        phi_final=trace.phi_final,
        phi_bound=trace.phi_bound,
        steps=steps,
    )


def search_report(result: SearchResult) -> SearchReport:
    return SearchReport(
        best_value=format_rational(result.best_value),
        nodes=result.nodes,
        exhaustive=result.exhaustive,
        exceeds_bound=result.exceeds_bound,
        field_caveat=result.field_caveat,
        witness=to_document(result.witness),
    )
