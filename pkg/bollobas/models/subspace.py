"""Subspaces of F^n over an exact field, kept in reduced row echelon form.

A :class:`Subspace` is only ever built through :func:`canonicalize` (or the
named constructors that call it), so two values compare equal exactly when
they span the same subspace.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from bollobas.exceptions import PreconditionError, ShapeError
from bollobas.models.scalars import RATIONALS, Field, Scalar

Row = tuple[Scalar, ...]


def rref(rows: Sequence[Sequence[Scalar]], ncols: int) -> tuple[list[list[Scalar]], list[int]]:
    """Gauss-Jordan elimination; returns the nonzero RREF rows and pivot columns."""
    matrix = [list(row) for row in rows]
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        if top == len(matrix):
            break
        found = next((i for i in range(top, len(matrix)) if matrix[i][col] != 0), None)
        if found is None:
            continue
        matrix[top], matrix[found] = matrix[found], matrix[top]
        lead = matrix[top][col]
        matrix[top] = [entry / lead for entry in matrix[top]]
        for i in range(len(matrix)):
            if i != top and matrix[i][col] != 0:
                factor = matrix[i][col]
                matrix[i] = [a - factor * b for a, b in zip(matrix[i], matrix[top])]
        pivots.append(col)
        top += 1
    return matrix[:top], pivots


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int, field: Field) -> list[list[Scalar]]:
    """Basis of {x : rows . x = 0}, one vector per free column."""
    reduced, pivots = rref(rows, ncols)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vector = [field.zero() for _ in range(ncols)]
        vector[free] = field.one()
        for row, pivot in zip(reduced, pivots):
            vector[pivot] = -row[free]
        basis.append(vector)
    return basis


@dataclass(frozen=True)
class Subspace:
    """Row space of ``basis``; the basis is the unique RREF representative."""

    ambient_dim: int
    field: Field
    basis: tuple[Row, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(c for c, entry in enumerate(row) if entry != 0) for row in self.basis)

    @classmethod
    def zero(cls, ambient_dim: int, field: Field = RATIONALS) -> Subspace:
        return cls(ambient_dim, field, ())

    @classmethod
    def full(cls, ambient_dim: int, field: Field = RATIONALS) -> Subspace:
        return cls.coordinate(range(1, ambient_dim + 1), ambient_dim, field)

    @classmethod
    def coordinate(cls, elements: Iterable[int], ambient_dim: int, field: Field = RATIONALS) -> Subspace:
        # span{e_p : p in elements}, elements 1-based
        rows = []
        for p in sorted(set(elements)):
            if not 1 <= p <= ambient_dim:
                raise ShapeError(f"coordinate {p} outside 1..{ambient_dim}")
            rows.append(tuple(field.one() if c == p - 1 else field.zero() for c in range(ambient_dim)))
        return cls(ambient_dim, field, tuple(rows))

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Scalar | int]], ambient_dim: int, field: Field = RATIONALS) -> Subspace:
        return canonicalize(vectors, ambient_dim, field)

    def contains(self, vector: Sequence[Scalar | int]) -> bool:
        return contains(self, vector)

    def __contains__(self, vector: Sequence[Scalar | int]) -> bool:
        return contains(self, vector)

    def __add__(self, other: Subspace) -> Subspace:
        return subspace_sum(self, other)

    def __and__(self, other: Subspace) -> Subspace:
        return intersection(self, other)

    def __le__(self, other: Subspace) -> bool:
        return is_subspace_of(self, other)


def canonicalize(rows: Iterable[Sequence[Scalar | int]], ambient_dim: int, field: Field = RATIONALS) -> Subspace:
    coerced = []
    for row in rows:
        if len(row) != ambient_dim:
            raise ShapeError(f"row of length {len(row)} in ambient dimension {ambient_dim}")
        coerced.append([field.coerce(entry) for entry in row])
    reduced, _ = rref(coerced, ambient_dim)
    return Subspace(ambient_dim, field, tuple(tuple(row) for row in reduced))


def _check_compatible(*spaces: Subspace) -> None:
    first = spaces[0]
    for other in spaces[1:]:
        if other.ambient_dim != first.ambient_dim:
            raise ShapeError(f"ambient mismatch: {first.ambient_dim} vs {other.ambient_dim}")
        if other.field != first.field:
            raise ShapeError(f"field mismatch: {first.field.label} vs {other.field.label}")


def contains(space: Subspace, vector: Sequence[Scalar | int]) -> bool:
    if len(vector) != space.ambient_dim:
        raise ShapeError(f"vector of length {len(vector)} in ambient dimension {space.ambient_dim}")
    residual = [space.field.coerce(entry) for entry in vector]
    for row, pivot in zip(space.basis, space.pivots):
        factor = residual[pivot]
        if factor != 0:
            residual = [a - factor * b for a, b in zip(residual, row)]
    return all(entry == 0 for entry in residual)


@lru_cache(maxsize=1 << 16)
def _sum(first: Subspace, second: Subspace) -> Subspace:
    if second.dim == 0:
        return first
    if first.dim == 0:
        return second
    return canonicalize(first.basis + second.basis, first.ambient_dim, first.field)


def subspace_sum(first: Subspace, second: Subspace) -> Subspace:
    _check_compatible(first, second)
    return _sum(first, second)


@lru_cache(maxsize=1 << 16)
def _intersection(first: Subspace, second: Subspace) -> Subspace:
    if first.dim == 0 or second.dim == 0:
        return Subspace.zero(first.ambient_dim, first.field)
    # c . [U; W] = 0 on the stacked basis; the U-part of c gives U ∩ W
    stacked = first.basis + second.basis
    transposed = [[row[c] for row in stacked] for c in range(first.ambient_dim)]
    kernel = nullspace(transposed, len(stacked), first.field)
    vectors = []
    for coefficients in kernel:
        vector = [first.field.zero() for _ in range(first.ambient_dim)]
        for coefficient, row in zip(coefficients[: first.dim], first.basis):
            if coefficient != 0:
                vector = [a + coefficient * b for a, b in zip(vector, row)]
        vectors.append(vector)
    return canonicalize(vectors, first.ambient_dim, first.field)


def intersection(first: Subspace, second: Subspace) -> Subspace:
    _check_compatible(first, second)
    return _intersection(first, second)


def component(space: Subspace, block: Subspace) -> Subspace:
    """The part of ``space`` inside a decomposition block."""
    return intersection(space, block)


def meets(first: Subspace, second: Subspace) -> bool:
    # dim(U ∩ W) > 0  iff  dim(U + W) < dim U + dim W
    return subspace_sum(first, second).dim < first.dim + second.dim


def is_subspace_of(inner: Subspace, outer: Subspace) -> bool:
    _check_compatible(inner, outer)
    return all(contains(outer, row) for row in inner.basis)


def sum_all(parts: Sequence[Subspace], ambient_dim: int, field: Field) -> Subspace:
    total = Subspace.zero(ambient_dim, field)
    for part in parts:
        total = subspace_sum(total, part)
    return total


def is_direct_sum(parts: Sequence[Subspace]) -> bool:
    if not parts:
        return True
    _check_compatible(*parts)
    total = sum_all(parts, parts[0].ambient_dim, parts[0].field)
    return total.dim == sum(part.dim for part in parts)


def extension_vector(block: Subspace, inner: Subspace) -> Row | None:
    """First canonical basis row of ``block`` outside ``inner``; None when they agree."""
    _check_compatible(block, inner)
    if not is_subspace_of(inner, block):
        raise PreconditionError("extension_vector needs inner ⊆ block")
    for row in block.basis:
        if not contains(inner, row):
            return row
    return None


def enumerate_subspaces(ambient_dim: int, field: Field) -> Iterator[Subspace]:
    """All subspaces of GF(p)^n ordered by dimension, pivot set, then free entries."""
    elements = list(field.elements())
    zero, one = field.zero(), field.one()
    for k in range(ambient_dim + 1):
        for pivots in combinations(range(ambient_dim), k):
            free = [
                (i, c)
                for i, pivot in enumerate(pivots)
                for c in range(pivot + 1, ambient_dim)
                if c not in pivots
            ]
            for values in product(elements, repeat=len(free)):
                rows = [[zero] * ambient_dim for _ in pivots]
                for i, pivot in enumerate(pivots):
                    rows[i][pivot] = one
                for (i, c), value in zip(free, values):
                    rows[i][c] = value
                yield Subspace(ambient_dim, field, tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class Decomposition:
    """Ordered blocks V_1, ..., V_r with V = V_1 ⊕ ... ⊕ V_r."""

    ambient_dim: int
    blocks: tuple[Subspace, ...]

    def __post_init__(self) -> None:
        if not self.blocks:
            raise ShapeError("a decomposition needs at least one block")
        for block in self.blocks:
            if block.ambient_dim != self.ambient_dim:
                raise ShapeError(f"block in ambient {block.ambient_dim}, expected {self.ambient_dim}")
        _check_compatible(*self.blocks)
        if sum(block.dim for block in self.blocks) != self.ambient_dim or not is_direct_sum(self.blocks):
            raise ShapeError("blocks do not form a direct sum decomposition of the ambient space")

    @property
    def field(self) -> Field:
        return self.blocks[0].field

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(block.dim for block in self.blocks)

    @classmethod
    def trivial(cls, ambient_dim: int, field: Field = RATIONALS) -> Decomposition:
        return cls(ambient_dim, (Subspace.full(ambient_dim, field),))

    @classmethod
    def coordinate(cls, blocks: Sequence[Iterable[int]], ambient_dim: int, field: Field = RATIONALS) -> Decomposition:
        return cls(ambient_dim, tuple(Subspace.coordinate(block, ambient_dim, field) for block in blocks))
