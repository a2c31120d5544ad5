"""Exact scalars: rationals, prime-field residues and probability vectors.

Rationals are plain :class:`fractions.Fraction` values. Prime-field elements
are :class:`PrimeFieldScalar`. Both support ``+ - * /`` and comparison with
``0`` so that the elimination code in :mod:`bollobas.models.subspace` is
written once for either field.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Union

from bollobas.exceptions import DocumentError, PreconditionError, ShapeError

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")
_RESIDUE_RE = re.compile(r"^\s*(-?\d+)\s*(?:mod\s+(\d+)\s*)?$")


@lru_cache(maxsize=None)
def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True, eq=False)
class PrimeFieldScalar:
    """Element of GF(p), stored as a residue in ``[0, p)``.

    Compares equal to an ``int`` only when the int is the residue, and
    hashes like it.
    """

    residue: int
    modulus: int

    def __post_init__(self) -> None:
        if not _is_prime(self.modulus):
            raise ShapeError(f"GF({self.modulus}) is not a prime field")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def _other(self, other: object) -> int:
        if isinstance(other, PrimeFieldScalar):
            if other.modulus != self.modulus:
                raise ShapeError(
                    f"field mismatch: GF({self.modulus}) vs GF({other.modulus})"
                )
            return other.residue
        if isinstance(other, int):
            return other % self.modulus
        return NotImplemented  # type: ignore[return-value]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PrimeFieldScalar):
            return self.modulus == other.modulus and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.residue)

    def __bool__(self) -> bool:
        return self.residue != 0

    def __add__(self, other: object) -> PrimeFieldScalar:
        return PrimeFieldScalar(self.residue + self._other(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other: object) -> PrimeFieldScalar:
        return PrimeFieldScalar(self.residue - self._other(other), self.modulus)

    def __rsub__(self, other: object) -> PrimeFieldScalar:
        return PrimeFieldScalar(self._other(other) - self.residue, self.modulus)

    def __mul__(self, other: object) -> PrimeFieldScalar:
        return PrimeFieldScalar(self.residue * self._other(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> PrimeFieldScalar:
        return PrimeFieldScalar(-self.residue, self.modulus)

    def inverse(self) -> PrimeFieldScalar:
        if self.residue == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.modulus})")
        return PrimeFieldScalar(pow(self.residue, -1, self.modulus), self.modulus)

    def __truediv__(self, other: object) -> PrimeFieldScalar:
        divisor = PrimeFieldScalar(self._other(other), self.modulus)
        return self * divisor.inverse()

    def __repr__(self) -> str:
        return f"{self.residue} mod {self.modulus}"


Scalar = Union[Fraction, PrimeFieldScalar]


@dataclass(frozen=True)
class Field:
    """Field tag: the rationals when ``modulus`` is None, else GF(modulus)."""

    modulus: int | None = None

    def __post_init__(self) -> None:
        if self.modulus is not None and not _is_prime(self.modulus):
            raise ShapeError(f"GF({self.modulus}) is not a prime field")

    @property
    def is_rational(self) -> bool:
        return self.modulus is None

    @property
    def label(self) -> str:
        return "rationals" if self.modulus is None else f"GF({self.modulus})"

    @classmethod
    def from_label(cls, text: str | int | None) -> Field:
        if text is None:
            return RATIONALS
        if isinstance(text, int):
            return cls(text)
        cleaned = text.strip().lower()
        if cleaned in ("rationals", "q", "qq"):
            return RATIONALS
        match = re.fullmatch(r"(?:gf\(\s*(\d+)\s*\)|gf(\d+)|(\d+))", cleaned)
        if not match:
            raise DocumentError(f"unknown field '{text}'")
        return cls(int(next(g for g in match.groups() if g)))

    def zero(self) -> Scalar:
        return self.coerce(0)

    def one(self) -> Scalar:
        return self.coerce(1)

    def coerce(self, value: int | Fraction | PrimeFieldScalar) -> Scalar:
        if self.modulus is None:
            if isinstance(value, PrimeFieldScalar):
                raise ShapeError("cannot coerce a GF(p) scalar into the rationals")
            return Fraction(value)
        if isinstance(value, PrimeFieldScalar):
            if value.modulus != self.modulus:
                raise ShapeError(
                    f"field mismatch: GF({value.modulus}) vs GF({self.modulus})"
                )
            return value
        if isinstance(value, Fraction):
            return PrimeFieldScalar(value.numerator, self.modulus) / value.denominator
        return PrimeFieldScalar(value, self.modulus)

    def parse(self, text: str | int) -> Scalar:
        if isinstance(text, int):
            return self.coerce(text)
        if self.modulus is None:
            return parse_rational(text)
        match = _RESIDUE_RE.match(text)
        if not match:
            raise DocumentError(f"invalid GF({self.modulus}) scalar '{text}'")
        if match.group(2) is not None and int(match.group(2)) != self.modulus:
            raise DocumentError(
                f"scalar '{text}' does not belong to GF({self.modulus})"
            )
        return PrimeFieldScalar(int(match.group(1)), self.modulus)

    def elements(self) -> Iterator[Scalar]:
        if self.modulus is None:
            raise ShapeError("the rationals cannot be enumerated")
        for residue in range(self.modulus):
            yield PrimeFieldScalar(residue, self.modulus)


RATIONALS = Field()


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str | int) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    match = _RATIONAL_RE.match(str(text))
    if not match:
        raise DocumentError(f"invalid rational '{text}'")
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise DocumentError(f"zero denominator in '{text}'")
    return Fraction(int(numerator), int(denominator or 1))


def format_scalar(value: Scalar) -> str:
    if isinstance(value, PrimeFieldScalar):
        return f"{value.residue} mod {value.modulus}"
    return format_rational(value)


@dataclass(frozen=True)
class ProbabilityVector:
    """Positive rationals p_1..p_d summing to exactly 1."""

    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        entries = tuple(Fraction(p) for p in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise PreconditionError("a probability vector needs at least one entry")
        if any(p <= 0 for p in entries):
            raise PreconditionError("probabilities must be positive")
        if sum(entries) != 1:
            raise PreconditionError(
                f"probabilities sum to {format_rational(sum(entries))}, not 1"
            )

    @classmethod
    def parse(cls, text: str) -> ProbabilityVector:
        return cls(tuple(parse_rational(part) for part in text.split(",")))

    @classmethod
    def uniform(cls, d: int) -> ProbabilityVector:
        return cls(tuple(Fraction(1, d) for _ in range(d)))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def __getitem__(self, index: int) -> Fraction:
        return self.entries[index]

    def __str__(self) -> str:
        return ",".join(format_rational(p) for p in self.entries)
