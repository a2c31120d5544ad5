"""Ordered systems of d-tuples of subsets or subspaces.

Tuple order is part of the value: skew conditions only look at ``i < j``, so
systems are tuples of tuples and equality is order-sensitive. Pair systems are
simply systems with ``d == 2``.

Subsets of [n] are stored as bitmasks (bit ``p - 1`` for element ``p``).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence, Union

from bollobas.exceptions import ShapeError
from bollobas.models.scalars import RATIONALS, Field
from bollobas.models.subspace import Decomposition, Subspace, component, subspace_sum, sum_all


def mask_of(elements: Iterable[int], n: int) -> int:
    mask = 0
    for p in elements:
        if not isinstance(p, int) or not 1 <= p <= n:
            raise ShapeError(f"element {p!r} outside 1..{n}")
        mask |= 1 << (p - 1)
    return mask


def members(mask: int) -> list[int]:
    return [p + 1 for p in range(mask.bit_length()) if mask >> p & 1]


@dataclass(frozen=True)
class SetSystem:
    n: int
    d: int
    tuples: tuple[tuple[int, ...], ...]
    partition: tuple[int, ...] | None = None

    kind = "set"

    def __post_init__(self) -> None:
        if self.n < 0 or self.d < 1:
            raise ShapeError(f"invalid shape n={self.n}, d={self.d}")
        full = self.full_mask
        for i, entry in enumerate(self.tuples):
            if len(entry) != self.d:
                raise ShapeError(f"tuple {i + 1} has {len(entry)} components, expected {self.d}")
            for part in entry:
                if part < 0 or part & ~full:
                    raise ShapeError(f"tuple {i + 1} leaves the ground set [{self.n}]")
        if self.partition is not None:
            seen = 0
            for block in self.partition:
                if block & seen:
                    raise ShapeError("partition blocks overlap")
                if block < 0 or block & ~full:
                    raise ShapeError(f"partition block leaves the ground set [{self.n}]")
                seen |= block
            if seen != full or not self.partition:
                raise ShapeError(f"partition blocks do not cover [{self.n}]")

    @property
    def m(self) -> int:
        return len(self.tuples)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def has_context(self) -> bool:
        return self.partition is not None

    @classmethod
    def from_lists(
        cls,
        n: int,
        tuples: Iterable[Sequence[Iterable[int]]],
        *,
        d: int | None = None,
        partition: Iterable[Iterable[int]] | None = None,
    ) -> SetSystem:
        masks = tuple(tuple(mask_of(part, n) for part in entry) for entry in tuples)
        if d is None:
            d = len(masks[0]) if masks else 2
        blocks = None if partition is None else tuple(mask_of(block, n) for block in partition)
        return cls(n, d, masks, blocks)

    def as_lists(self) -> list[list[list[int]]]:
        return [[members(part) for part in entry] for entry in self.tuples]


@dataclass(frozen=True)
class SubspaceSystem:
    n: int
    field: Field
    d: int
    tuples: tuple[tuple[Subspace, ...], ...]
    decomposition: Decomposition | None = None

    kind = "subspace"

    def __post_init__(self) -> None:
        if self.n < 0 or self.d < 1:
            raise ShapeError(f"invalid shape n={self.n}, d={self.d}")
        for i, entry in enumerate(self.tuples):
            if len(entry) != self.d:
                raise ShapeError(f"tuple {i + 1} has {len(entry)} components, expected {self.d}")
            for part in entry:
                if part.ambient_dim != self.n or part.field != self.field:
                    raise ShapeError(f"tuple {i + 1} is not in {self.field.label}^{self.n}")
        if self.decomposition is not None:
            if self.decomposition.ambient_dim != self.n or self.decomposition.field != self.field:
                raise ShapeError("decomposition lives in a different ambient space")

    @property
    def m(self) -> int:
        return len(self.tuples)

    @property
    def has_context(self) -> bool:
        return self.decomposition is not None

    @property
    def space(self) -> Subspace:
        return Subspace.full(self.n, self.field)


System = Union[SetSystem, SubspaceSystem]


@dataclass(frozen=True)
class TypeVector:
    """Size profile of one tuple, indexed ``sizes[component][block]``."""

    sizes: tuple[tuple[int, ...], ...]

    @property
    def totals(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.sizes)

    @property
    def r(self) -> int:
        return len(self.sizes[0]) if self.sizes else 0

    def block(self, k: int) -> tuple[int, ...]:
        return tuple(row[k] for row in self.sizes)

    def component(self, ell: int) -> tuple[int, ...]:
        return self.sizes[ell]


def size(part: int | Subspace) -> int:
    if isinstance(part, Subspace):
        return part.dim
    return part.bit_count()


def block_sizes(system: System) -> tuple[int, ...]:
    """n_k for the explicit context, or (n,) for the implicit single block."""
    if isinstance(system, SetSystem):
        if system.partition is None:
            return (system.n,)
        return tuple(block.bit_count() for block in system.partition)
    if system.decomposition is None:
        return (system.n,)
    return system.decomposition.dims


def block_masks(system: SetSystem) -> tuple[int, ...]:
    return system.partition if system.partition is not None else (system.full_mask,)


def block_spaces(system: SubspaceSystem) -> tuple[Subspace, ...]:
    if system.decomposition is None:
        return (system.space,)
    return system.decomposition.blocks


def check_index(system: System, i: int) -> None:
    if not 0 <= i < system.m:
        raise ShapeError(f"tuple index {i} outside 0..{system.m - 1}")


def profile(system: System, i: int) -> TypeVector:
    check_index(system, i)
    entry = system.tuples[i]
    if isinstance(system, SetSystem):
        blocks = block_masks(system)
        return TypeVector(tuple(tuple((part & block).bit_count() for block in blocks) for part in entry))
    spaces = block_spaces(system)
    return TypeVector(tuple(tuple(component(part, block).dim for block in spaces) for part in entry))


def embed(system: SetSystem) -> SubspaceSystem:
    """Coordinate embedding: S -> span{e_p : p in S} over the rationals."""
    n = system.n
    tuples = tuple(
        tuple(Subspace.coordinate(members(part), n, RATIONALS) for part in entry)
        for entry in system.tuples
    )
    decomposition = None
    if system.partition is not None:
        decomposition = Decomposition.coordinate([members(block) for block in system.partition], n)
    return SubspaceSystem(n, RATIONALS, system.d, tuples, decomposition)


def is_decomposition_compatible(system: SubspaceSystem) -> bool:
    if system.decomposition is None:
        raise ShapeError("system has no decomposition")
    blocks = system.decomposition.blocks
    for entry in system.tuples:
        for part in entry:
            pieces = [component(part, block) for block in blocks]
            if sum_all(pieces, system.n, system.field) != part:
                return False
    return True


def tuple_union(system: System, i: int) -> int | Subspace:
    entry = system.tuples[i]
    if isinstance(system, SetSystem):
        union = 0
        for part in entry:
            union |= part
        return union
    total = Subspace.zero(system.n, system.field)
    for part in entry:
        total = subspace_sum(total, part)
    return total


def with_tuples(system: System, tuples: Iterable[tuple]) -> System:
    return replace(system, tuples=tuple(tuples))


def replace_tuple(system: System, i: int, replacements: Sequence[tuple]) -> System:
    """Tuple ``i`` replaced in place by ``replacements`` (order kept)."""
    check_index(system, i)
    return with_tuples(system, system.tuples[:i] + tuple(replacements) + system.tuples[i + 1 :])


def reversed_system(system: System) -> System:
    return with_tuples(system, reversed(system.tuples))


def subsystem(system: System, indices: Iterable[int]) -> System:
    return with_tuples(system, (system.tuples[i] for i in indices))


def find_duplicate(system: System) -> tuple[int, int] | None:
    seen: dict[tuple, int] = {}
    for j, entry in enumerate(system.tuples):
        if entry in seen:
            return seen[entry], j
        seen[entry] = j
    return None
