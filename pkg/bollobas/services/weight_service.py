import logging
from fractions import Fraction
from math import prod

from bollobas.exceptions import LicensingError, PreconditionError, ShapeError
from bollobas.models.certificate import InequalityVerdict
from bollobas.models.condition import ConditionKind, Domain, Flavor, Functional, FunctionalKind, Relation
from bollobas.models.scalars import ProbabilityVector, format_rational
from bollobas.models.subspace import component, sum_all
from bollobas.models.system import (
    SetSystem,
    SubspaceSystem,
    System,
    block_masks,
    block_sizes,
    block_spaces,
    is_decomposition_compatible,
    profile,
    size,
)
from bollobas.services.verify_service import field_caveat, verify
from bollobas.utils.combinatorics import binomial, rational_power

logger = logging.getLogger(__name__)


def check_shape(system: System, functional: Functional) -> None:
    kind = functional.kind
    if kind.pairs_only and system.d != 2:
        raise ShapeError(f"{kind.value} is defined for pair systems, got {system.d}-tuples")
    if kind.needs_context and not system.has_context:
        raise ShapeError(f"{kind.value} needs a partition or decomposition")
    if kind is FunctionalKind.TUZA and len(functional.p) != system.d:
        raise ShapeError(f"p has {len(functional.p)} entries but the system has {system.d}-tuples")


def monotone_violation(system: System) -> int | None:
    """First i with a_i > a_{i+1} or b_i < b_{i+1}, else None."""
    sizes = [(size(a), size(b)) for a, b in system.tuples]
    for i in range(len(sizes) - 1):
        if sizes[i][0] > sizes[i + 1][0] or sizes[i][1] < sizes[i + 1][1]:
            return i
    return None


def term(system: System, i: int, functional: Functional) -> Fraction:
    """Contribution of tuple ``i`` to ``omega(system, functional)``."""
    kind = functional.kind
    if kind is FunctionalKind.TUZA:
        return prod(
            (rational_power(p, size(part)) for p, part in zip(functional.p, system.tuples[i])),
            start=Fraction(1),
        )
    if kind in (FunctionalKind.PARTITIONED_YUE, FunctionalKind.Y26):
        a_row, b_row = profile(system, i).sizes
        if kind is FunctionalKind.Y26:
            factors = (binomial(a + b, a) for a, b in zip(a_row, b_row))
        else:
            factors = (binomial(a + b, a) * (1 + a + b) for a, b in zip(a_row, b_row))
        return Fraction(1, prod(factors))
    a, b = (size(part) for part in system.tuples[i])
    if kind is FunctionalKind.YUE:
        return Fraction(1, (1 + a + b) * binomial(a + b, a))
    if kind is FunctionalKind.HEGEDUS_FRANKL:
        return Fraction(1, binomial(a + b, b))
    return Fraction(1, binomial(a + b, a))


def omega(system: System, functional: Functional) -> Fraction:
    check_shape(system, functional)
    if functional.kind is FunctionalKind.SCOTT_WILMER:
        broken = monotone_violation(system)
        if broken is not None:
            raise PreconditionError(
                f"sizes are not monotone at tuples ({broken + 1},{broken + 2})"
            )
    return sum((term(system, i, functional) for i in range(system.m)), Fraction(0))


def inequality_bound(system: System, functional: Functional) -> Fraction:
    kind = functional.kind
    if kind is FunctionalKind.HEGEDUS_FRANKL:
        return Fraction(system.n + 1)
    if kind is FunctionalKind.Y26:
        return Fraction(prod(1 + n_k for n_k in block_sizes(system)))
    return Fraction(1)


def secondary_bound(system: System) -> Fraction:
    """(1 + n/r)^r, the closed form that dominates prod(1 + n_k) for r blocks."""
    r = len(block_sizes(system))
    return rational_power(1 + Fraction(system.n, r), r)


def licensing_conditions(system: System, functional: Functional) -> list[ConditionKind]:
    """Conditions any one of which makes the functional's bound a theorem for ``system``."""
    kind = functional.kind
    domain = Domain(system.kind)
    is_set = domain is Domain.SET
    d = system.d
    skew = ConditionKind(Relation.SKEW, domain, d)
    monotone = ConditionKind(Relation.SKEW, domain, d, monotone=True) if d == 2 else None

    if kind is FunctionalKind.BOLLOBAS:
        return ([ConditionKind(Relation.BOLLOBAS, domain, 2)] if is_set else []) + [monotone]
    if kind is FunctionalKind.SCOTT_WILMER:
        return [monotone]
    if kind is FunctionalKind.YUE:
        return [skew]
    if kind is FunctionalKind.HEGEDUS_FRANKL:
        return [skew] if is_set else []
    if kind is FunctionalKind.PARTITIONED_YUE:
        if not is_set and not is_decomposition_compatible(system):
            return []
        return [skew]
    if kind is FunctionalKind.Y26:
        return [skew] if is_set else []
    if kind is FunctionalKind.TUZA:
        return [ConditionKind(Relation.WEAK, domain, d)] if is_set else [skew]
    return []


def evaluate_inequality(system: System, functional: Functional) -> InequalityVerdict:
    """Exact value of the functional against the bound its licensing condition grants."""
    value = omega(system, functional)
    candidates = licensing_conditions(system, functional)
    licensing = next((kind for kind in candidates if verify(system, kind).verdict), None)
    if licensing is None:
        if not candidates:
            raise LicensingError(f"{functional.kind.value} has no licensed bound for this {system.kind} system")
        wanted = " or ".join(kind.label for kind in candidates)
        raise LicensingError(f"{functional.kind.value} is only bounded for {wanted}")

    bound = inequality_bound(system, functional)
    notes = []
    if functional.kind is FunctionalKind.Y26:
        closed = secondary_bound(system)
        notes.append(f"{format_rational(value)} <= (1+n/r)^r = {format_rational(closed)}: {value <= closed}")
    verdict = InequalityVerdict(functional, value, bound, licensing, field_caveat(system), tuple(notes))
    if not verdict.holds:
        logger.warning(
            "%s = %s exceeds %s under %s",
            functional.label,
            format_rational(value),
            format_rational(bound),
            licensing.label,
        )
    return verdict


def check_flavor(system: System, flavor: Flavor) -> None:
    if flavor is Flavor.SET and not isinstance(system, SetSystem):
        raise ShapeError("the set flavor needs a set system")
    if flavor is not Flavor.SET and not isinstance(system, SubspaceSystem):
        raise ShapeError(f"the {flavor.value} flavor needs a subspace system")
    if flavor is Flavor.PAIR and system.d != 2:
        raise ShapeError("the pair flavor needs a pair system")


def deficits(system: System, i: int) -> tuple[int, ...]:
    """n_k minus the size of tuple ``i`` inside block k, for every block."""
    entry = system.tuples[i]
    if isinstance(system, SetSystem):
        union = 0
        for part in entry:
            union |= part
        return tuple(block.bit_count() - (union & block).bit_count() for block in block_masks(system))
    return tuple(
        block.dim - sum_all([component(part, block) for part in entry], system.n, system.field).dim
        for block in block_spaces(system)
    )


def phi_term(system: System, i: int, flavor: Flavor) -> int:
    if flavor is Flavor.PAIR:
        return prod(2 ** (n_k - d_k) for n_k, d_k in zip(block_sizes(system), deficits(system, i)))
    return sum(size(part) for part in system.tuples[i])


def phi(system: System, flavor: Flavor) -> int:
    check_flavor(system, flavor)
    return sum(phi_term(system, i, flavor) for i in range(system.m))


def phi_upper_bound(system: System, flavor: Flavor) -> int:
    check_flavor(system, flavor)
    n, d = system.n, system.d
    if flavor is Flavor.PAIR:
        return 4**n
    if flavor is Flavor.SET:
        return n * (d + 1) ** n
    return n * d**n


def default_functional(system: System, flavor: Flavor) -> Functional:
    """The weight a flavor's fill-up keeps invariant.

    Set pairs track the Yue weight only when they are skew.
    """
    check_flavor(system, flavor)
    pair_weight = flavor is Flavor.PAIR or (
        flavor is Flavor.SET and system.d == 2 and verify(system, ConditionKind.for_system(system, Relation.SKEW)).verdict
    )
    if pair_weight:
        if system.has_context:
            return Functional(FunctionalKind.PARTITIONED_YUE)
        return Functional(FunctionalKind.YUE)
    return Functional(FunctionalKind.TUZA, ProbabilityVector.uniform(system.d))
