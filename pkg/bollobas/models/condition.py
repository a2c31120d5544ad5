from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from bollobas.exceptions import ShapeError
from bollobas.models.scalars import ProbabilityVector


class Relation(str, Enum):
    BOLLOBAS = "bollobas"
    SKEW = "skew"
    WEAK = "weak"


class Domain(str, Enum):
    SET = "set"
    SUBSPACE = "subspace"


@dataclass(frozen=True)
class ConditionKind:
    """Which Bollobás-type condition a system is checked against."""

    relation: Relation
    domain: Domain
    d: int = 2
    monotone: bool = False

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ShapeError(f"arity must be positive, got {self.d}")
        if self.relation is Relation.BOLLOBAS and self.d != 2:
            raise ShapeError("the Bollobás condition is only defined for pairs")
        if self.monotone and self.d != 2:
            raise ShapeError("the monotone precondition is only defined for pairs")

    @classmethod
    def for_system(cls, system, relation: Relation | str, *, monotone: bool = False) -> ConditionKind:
        return cls(Relation(relation), Domain(system.kind), system.d, monotone)

    def implies(self, other: ConditionKind) -> bool:
        """Every system satisfying ``self`` also satisfies ``other``."""
        if (self.domain, self.d) != (other.domain, other.d):
            return False
        if other.monotone and not self.monotone:
            return False
        strength = list(Relation)  # bollobas => skew => weak
        return strength.index(self.relation) <= strength.index(other.relation)

    @property
    def label(self) -> str:
        text = f"{self.relation.value} {self.domain.value} {self.d}-tuples"
        return f"monotone {text}" if self.monotone else text


class FunctionalKind(str, Enum):
    BOLLOBAS = "bollobas_sum"
    YUE = "yue_sum"
    PARTITIONED_YUE = "partitioned_yue_sum"
    Y26 = "y26_product_sum"
    TUZA = "tuza_sum"
    SCOTT_WILMER = "scott_wilmer_sum"
    HEGEDUS_FRANKL = "hegedus_frankl_sum"

    @classmethod
    def from_name(cls, name: str) -> FunctionalKind:
        cleaned = name.strip().lower().replace("-", "_")
        for kind in cls:
            if cleaned in (kind.value, kind.value.rsplit("_", 1)[0], kind.value.split("_", 1)[0]):
                return kind
        raise ShapeError(f"unknown functional '{name}'")

    @property
    def needs_context(self) -> bool:
        return self in (FunctionalKind.PARTITIONED_YUE, FunctionalKind.Y26)

    @property
    def pairs_only(self) -> bool:
        return self is not FunctionalKind.TUZA


@dataclass(frozen=True)
class Functional:
    kind: FunctionalKind
    p: ProbabilityVector | None = None

    def __post_init__(self) -> None:
        if self.kind is FunctionalKind.TUZA and self.p is None:
            raise ShapeError("tuza_sum needs a probability vector")
        if self.kind is not FunctionalKind.TUZA and self.p is not None:
            raise ShapeError(f"{self.kind.value} takes no probability vector")

    @classmethod
    def of(cls, name: str | FunctionalKind, p: ProbabilityVector | None = None) -> Functional:
        kind = name if isinstance(name, FunctionalKind) else FunctionalKind.from_name(name)
        return cls(kind, p)

    @property
    def label(self) -> str:
        if self.p is None:
            return self.kind.value
        return f"{self.kind.value}(p={self.p})"


class Flavor(str, Enum):
    """Which fill-up operation and potential a saturation run uses."""

    SET = "set"
    PAIR = "pair"
    TUPLE = "tuple"
