import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations, product
from math import prod
from typing import Any, Mapping

from bollobas.config import settings
from bollobas.exceptions import GuardError, ShapeError
from bollobas.models.condition import Functional, FunctionalKind
from bollobas.models.scalars import ProbabilityVector
from bollobas.models.system import SetSystem, System, embed, mask_of, reversed_system
from bollobas.utils.combinatorics import binomial

logger = logging.getLogger(__name__)


class FamilyName(str, Enum):
    UNIFORM_BOLLOBAS = "uniform_bollobas"
    COMPLEMENT_CHAIN = "complement_chain"
    PARTITIONED_COMPLEMENT_CHAIN = "partitioned_complement_chain"
    FULL_TUZA_TUPLES = "full_tuza_tuples"


def parse_blocks(text: str) -> list[list[int]]:
    """``1+2|3+4`` -> [[1, 2], [3, 4]]."""
    return [[int(p) for p in block.split("+")] for block in text.split("|")]


_REQUIRED = {
    FamilyName.UNIFORM_BOLLOBAS: ("a", "b"),
    FamilyName.COMPLEMENT_CHAIN: ("n",),
    FamilyName.PARTITIONED_COMPLEMENT_CHAIN: ("n", "blocks"),
    FamilyName.FULL_TUZA_TUPLES: ("n", "d"),
}


@dataclass(frozen=True)
class Family:
    name: FamilyName
    parameters: Mapping[str, Any] = field(default_factory=dict)
    embedded: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "name", FamilyName(self.name))
        missing = [key for key in _REQUIRED[self.name] if key not in self.parameters]
        if missing:
            raise ShapeError(f"{self.name.value} needs parameters {', '.join(missing)}")

    @classmethod
    def from_params(cls, name: str, text: str, *, embedded: bool = False) -> "Family":
        """Parse ``k=v,...``; blocks are written ``1+2|3+4``."""
        parameters: dict[str, Any] = {}
        for item in filter(None, (part.strip() for part in text.split(","))):
            key, sep, value = item.partition("=")
            if not sep:
                raise ShapeError(f"parameter '{item}' is not of the form key=value")
            key = key.strip()
            try:
                if key == "blocks":
                    parameters[key] = parse_blocks(value)
                else:
                    parameters[key] = int(value)
            except ValueError:
                raise ShapeError(f"parameter '{item}' has a non-integer value")
        try:
            return cls(FamilyName(name), parameters, embedded)
        except ValueError:
            raise ShapeError(f"unknown family '{name}'")


def _guard(count: int, what: str) -> None:
    if count > settings.CONSTRUCTION_LIMIT:
        raise GuardError(f"{what} has {count} tuples, above the limit {settings.CONSTRUCTION_LIMIT}")


def uniform_bollobas(a: int, b: int) -> SetSystem:
    """Every a-subset of [a+b] paired with its complement."""
    n = a + b
    _guard(binomial(n, a), f"uniform_bollobas({a},{b})")
    full = (1 << n) - 1
    tuples = []
    for chosen in combinations(range(1, n + 1), a):
        mask = mask_of(chosen, n)
        tuples.append((mask, full & ~mask))
    return SetSystem(n, 2, tuple(tuples))


def _chain_masks(n: int) -> list[int]:
    # non-increasing size, ties by the sorted element list
    subsets = [mask_of(chosen, n) for k in range(n + 1) for chosen in combinations(range(1, n + 1), k)]
    return sorted(subsets, key=lambda mask: (-mask.bit_count(), [p for p in range(n) if mask >> p & 1]))


def complement_chain(n: int, partition: tuple[int, ...] | None = None) -> SetSystem:
    _guard(2**n, f"complement_chain({n})")
    full = (1 << n) - 1
    return SetSystem(n, 2, tuple((mask, full & ~mask) for mask in _chain_masks(n)), partition)


def partitioned_complement_chain(n: int, blocks) -> SetSystem:
    return complement_chain(n, tuple(mask_of(block, n) for block in blocks))


def reversed_complement_chain(n: int) -> SetSystem:
    """The complement chain read backwards; no longer skew for n >= 1."""
    return reversed_system(complement_chain(n))


def full_tuza_tuples(n: int, d: int) -> SetSystem:
    """All d^n ordered partitions of [n] into d labelled parts, element 1 varying slowest."""
    if d < 1:
        raise ShapeError(f"arity must be positive, got {d}")
    _guard(d**n, f"full_tuza_tuples({n},{d})")
    tuples = []
    for assignment in product(range(d), repeat=n):
        parts = [0] * d
        for p, ell in enumerate(assignment):
            parts[ell] |= 1 << p
        tuples.append(tuple(parts))
    return SetSystem(n, d, tuple(tuples))


def construct(family: Family) -> System:
    params = family.parameters
    if family.name is FamilyName.UNIFORM_BOLLOBAS:
        system = uniform_bollobas(params["a"], params["b"])
    elif family.name is FamilyName.COMPLEMENT_CHAIN:
        system = complement_chain(params["n"])
    elif family.name is FamilyName.PARTITIONED_COMPLEMENT_CHAIN:
        system = partitioned_complement_chain(params["n"], params["blocks"])
    else:
        system = full_tuza_tuples(params["n"], params["d"])
    logger.info("constructed %s with %d tuples", family.name.value, system.m)
    return embed(system) if family.embedded else system


def expected_tightness(family: Family) -> dict[Functional, Fraction]:
    """Values the family attains exactly, each equal to its licensed bound."""
    params = family.parameters
    if family.name is FamilyName.UNIFORM_BOLLOBAS:
        return {Functional(FunctionalKind.BOLLOBAS): Fraction(1)}
    if family.name is FamilyName.COMPLEMENT_CHAIN:
        return {
            Functional(FunctionalKind.YUE): Fraction(1),
            Functional(FunctionalKind.HEGEDUS_FRANKL): Fraction(params["n"] + 1),
        }
    if family.name is FamilyName.PARTITIONED_COMPLEMENT_CHAIN:
        return {
            Functional(FunctionalKind.PARTITIONED_YUE): Fraction(1),
            Functional(FunctionalKind.Y26): Fraction(prod(1 + len(block) for block in params["blocks"])),
        }
    return {Functional(FunctionalKind.TUZA, ProbabilityVector.uniform(params["d"])): Fraction(1)}
