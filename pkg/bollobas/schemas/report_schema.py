"""Report documents written to stdout; every rational is an exact string."""

from pydantic import BaseModel, Field

from bollobas.schemas.system_schema import SystemDocument


class ViolationReport(BaseModel):
    clause: str
    i: int  # 1-based
    j: int | None = None


class VerificationSection(BaseModel):
    condition: str
    verdict: bool
    violation: ViolationReport | None = None
    field_caveat: bool = False
    duplicate: list[int] | None = None


class BoundCheckReport(BaseModel):
    label: str
    value: str
    bound: str
    holds: bool
    tight: bool


class TypeClassReport(BaseModel):
    key: list[int]
    count: int
    bound: int
    term: str
    holds: bool


class CertificateReport(BaseModel):
    claim: str
    holds: bool
    checks: list[BoundCheckReport] = Field(default_factory=list)
    classes: list[TypeClassReport] = Field(default_factory=list)
    weight: str | None = None
    field_caveat: bool = False
    findings: list[str] = Field(default_factory=list)


class VerdictReport(BaseModel):
    functional: str
    value: str
    bound: str
    holds: bool
    tight: bool
    licensing: str
    field_caveat: bool = False
    notes: list[str] = Field(default_factory=list)


class StepReport(BaseModel):
    index: int  # 1-based
    block: int | None = None  # 1-based
    element: str
    replacements: int
    omega: str
    phi_before: int
    phi_after: int


class TraceReport(BaseModel):
    flavor: str
    functional: str
    step_count: int
    initial_m: int
    final_m: int
    omega: str
    phi_initial: int
    phi_final: int
    phi_bound: int
    steps: list[StepReport] | None = None


class SearchReport(BaseModel):
    best_value: str
    nodes: int
    exhaustive: bool
    exceeds_bound: bool
    field_caveat: bool
    witness: SystemDocument


class ReportDocument(BaseModel):
    command: str
    options: dict[str, str] = Field(default_factory=dict)
    verification: VerificationSection | None = None
    verdict: VerdictReport | None = None
    values: dict[str, str] | None = None
    trace: TraceReport | None = None
    certificates: list[CertificateReport] | None = None
    search: SearchReport | None = None
    system: SystemDocument | None = None
