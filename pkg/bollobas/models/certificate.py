"""Result values produced by the services.

These are plain immutable records; :mod:`bollobas.schemas.report_schema`
turns them into report documents.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any

from bollobas.models.condition import ConditionKind, Flavor, Functional
from bollobas.models.system import System


class Clause(str, Enum):
    DISJOINTNESS = "disjointness"
    CROSS = "cross"
    MONOTONE = "monotone"


@dataclass(frozen=True)
class Violation:
    i: int
    j: int | None
    clause: Clause


@dataclass(frozen=True)
class VerificationReport:
    condition: ConditionKind
    violation: Violation | None = None
    field_caveat: bool = False
    duplicate: tuple[int, int] | None = None

    @property
    def verdict(self) -> bool:
        return self.violation is None

    def __bool__(self) -> bool:
        return self.verdict


@dataclass(frozen=True)
class BoundCheck:
    label: str
    value: Fraction
    bound: Fraction

    @property
    def holds(self) -> bool:
        return self.value <= self.bound

    @property
    def tight(self) -> bool:
        return self.value == self.bound


@dataclass(frozen=True)
class TypeClass:
    """Indices sharing one size profile, counted against a uniform bound."""

    key: tuple
    count: int
    bound: int
    term: Fraction

    @property
    def holds(self) -> bool:
        return self.count <= self.bound


@dataclass(frozen=True)
class Certificate:
    claim: str
    checks: tuple[BoundCheck, ...] = ()
    classes: tuple[TypeClass, ...] = ()
    weight: Fraction | None = None
    field_caveat: bool = False
    findings: tuple[str, ...] = ()

    @property
    def holds(self) -> bool:
        return all(check.holds for check in self.checks) and all(c.holds for c in self.classes)


@dataclass(frozen=True)
class InequalityVerdict:
    functional: Functional
    value: Fraction
    bound: Fraction
    licensing: ConditionKind
    field_caveat: bool = False
    notes: tuple[str, ...] = ()

    @property
    def holds(self) -> bool:
        return self.value <= self.bound

    @property
    def tight(self) -> bool:
        return self.value == self.bound


@dataclass(frozen=True)
class FillUpStep:
    index: int
    block: int | None
    element: Any  # ground element (sets) or vector (subspaces)
    replacements: tuple[tuple, ...]
    omega_before: Fraction
    omega_after: Fraction
    phi_before: int
    phi_after: int


@dataclass(frozen=True)
class SaturationTrace:
    flavor: Flavor
    functional: Functional
    initial: System
    final: System
    steps: tuple[FillUpStep, ...]
    omega: Fraction
    phi_initial: int
    phi_final: int
    phi_bound: int


@dataclass(frozen=True)
class SearchResult:
    best_value: Fraction
    witness: System
    nodes: int
    exhaustive: bool
    exceeds_bound: bool = False
    field_caveat: bool = False
