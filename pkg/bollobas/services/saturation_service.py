"""Weight-invariant fill-up, saturation to fullness and type-class certification.

Each fill-up replaces one tuple in place by tuples that cover one more ground
element (or one more basis direction). The invariant functional keeps its exact
value, the potential strictly grows, and once every tuple is full the type
classes are counted against uniform bounds.
"""

import logging
from collections import Counter
from fractions import Fraction
from math import prod

from bollobas.config import settings
from bollobas.exceptions import LicensingError, PreconditionError, SaturationError, ShapeError
from bollobas.models.certificate import BoundCheck, Certificate, FillUpStep, SaturationTrace, TypeClass
from bollobas.models.condition import ConditionKind, Flavor, Functional, FunctionalKind, Relation
from bollobas.models.scalars import format_rational
from bollobas.models.subspace import Subspace, component, extension_vector, sum_all
from bollobas.models.system import (
    SetSystem,
    SubspaceSystem,
    System,
    block_sizes,
    block_spaces,
    check_index,
    is_decomposition_compatible,
    members,
    profile,
    replace_tuple,
    size,
    tuple_union,
)
from bollobas.services.verify_service import field_caveat, verify
from bollobas.services.weight_service import (
    check_flavor,
    check_shape,
    default_functional,
    deficits,
    omega,
    phi,
    phi_term,
    phi_upper_bound,
    term,
)
from bollobas.utils.combinatorics import binomial, multinomial

logger = logging.getLogger(__name__)

# functionals whose weight a flavor's fill-up keeps exactly
_INVARIANT = {
    Flavor.SET: {FunctionalKind.TUZA, FunctionalKind.YUE, FunctionalKind.PARTITIONED_YUE},
    Flavor.PAIR: {FunctionalKind.TUZA, FunctionalKind.YUE, FunctionalKind.PARTITIONED_YUE},
    Flavor.TUPLE: {FunctionalKind.TUZA},
}


def licensing_condition(system: System, flavor: Flavor) -> ConditionKind:
    """The strongest condition the flavor's fill-up preserves and ``system`` satisfies."""
    check_flavor(system, flavor)
    skew = ConditionKind.for_system(system, Relation.SKEW)
    if verify(system, skew).verdict:
        return skew
    if flavor is Flavor.SET:
        weak = ConditionKind.for_system(system, Relation.WEAK)
        if verify(system, weak).verdict:
            return weak
        raise LicensingError("set fill-up needs a weak (or skew) system")
    if flavor is Flavor.TUPLE and verify(system, ConditionKind.for_system(system, Relation.WEAK)).verdict:
        raise LicensingError("weak subspace tuples are not closed under fill-up; only skew ones are")
    raise LicensingError(f"{flavor.value} fill-up needs a skew subspace system")


def _check_functional(system: System, flavor: Flavor, functional: Functional) -> None:
    if functional.kind not in _INVARIANT[flavor]:
        raise PreconditionError(f"{functional.kind.value} is not invariant under {flavor.value} fill-up")
    check_shape(system, functional)


def _check_context(system: System, flavor: Flavor) -> None:
    if flavor is Flavor.PAIR and system.decomposition is not None and not is_decomposition_compatible(system):
        raise PreconditionError("the system is not compatible with its decomposition")


def is_full(system: System, i: int, flavor: Flavor) -> bool:
    check_index(system, i)
    if flavor is Flavor.SET:
        return tuple_union(system, i) == system.full_mask
    if flavor is Flavor.PAIR:
        return not any(deficits(system, i))
    return tuple_union(system, i).dim == system.n


def _set_replacements(entry: tuple[int, ...], x: int) -> tuple[tuple[int, ...], ...]:
    bit = 1 << (x - 1)
    return tuple(entry[:ell] + (entry[ell] | bit,) + entry[ell + 1 :] for ell in range(len(entry)))


def _span_replacements(entry: tuple[Subspace, ...], line: Subspace) -> tuple[tuple[Subspace, ...], ...]:
    # coordinate order: the earlier replacement holds x in the lower coordinate
    return tuple(entry[:ell] + (entry[ell] + line,) + entry[ell + 1 :] for ell in range(len(entry)))


def _first_uncovered(system: SetSystem, i: int) -> int | None:
    missing = system.full_mask & ~tuple_union(system, i)
    return members(missing & -missing)[0] if missing else None


def _pair_extension(system: SubspaceSystem, i: int, k: int):
    block = block_spaces(system)[k]
    inner = sum_all([component(part, block) for part in system.tuples[i]], system.n, system.field)
    return extension_vector(block, inner)


def _checked_replace(system: System, i: int, replacements: tuple) -> System:
    result = replace_tuple(system, i, replacements)
    counts = Counter(result.tuples)
    for entry in replacements:
        if counts[entry] > 1:
            raise SaturationError(f"fill-up of tuple {i + 1} produced a duplicate tuple")
    return result


def fill_up_set_tuple(system: SetSystem, i: int, x: int) -> SetSystem:
    """Replace tuple ``i`` by the d tuples that add ``x`` to one coordinate each."""
    check_flavor(system, Flavor.SET)
    check_index(system, i)
    if not 1 <= x <= system.n:
        raise ShapeError(f"element {x} outside 1..{system.n}")
    if tuple_union(system, i) >> (x - 1) & 1:
        raise PreconditionError(f"x already covered: {x} lies in tuple {i + 1}")
    licensing_condition(system, Flavor.SET)
    return _checked_replace(system, i, _set_replacements(system.tuples[i], x))


def fill_up_subspace_pair(system: SubspaceSystem, i: int, k: int) -> SubspaceSystem:
    """Replace pair ``i`` by (A + <x>, B) then (A, B + <x>) for x extending block ``k``."""
    check_flavor(system, Flavor.PAIR)
    check_index(system, i)
    blocks = block_spaces(system)
    if not 0 <= k < len(blocks):
        raise ShapeError(f"block index {k} outside 0..{len(blocks) - 1}")
    _check_context(system, Flavor.PAIR)
    licensing_condition(system, Flavor.PAIR)
    x = _pair_extension(system, i, k)
    if x is None:
        raise PreconditionError(f"pair {i + 1} is already full in block {k + 1}")
    line = Subspace.span([x], system.n, system.field)
    return _checked_replace(system, i, _span_replacements(system.tuples[i], line))


def fill_up_subspace_tuple(system: SubspaceSystem, i: int) -> SubspaceSystem:
    check_flavor(system, Flavor.TUPLE)
    check_index(system, i)
    licensing_condition(system, Flavor.TUPLE)
    x = extension_vector(system.space, tuple_union(system, i))
    if x is None:
        raise PreconditionError(f"tuple {i + 1} is already full")
    line = Subspace.span([x], system.n, system.field)
    return _checked_replace(system, i, _span_replacements(system.tuples[i], line))


def _next_step(system: System, i: int, flavor: Flavor):
    """(replacements, block, element) of the deterministic fill-up for tuple ``i``."""
    entry = system.tuples[i]
    if flavor is Flavor.SET:
        x = _first_uncovered(system, i)
        block = None
        if system.partition is not None:
            block = next(k for k, mask in enumerate(system.partition) if mask >> (x - 1) & 1)
        return _set_replacements(entry, x), block, x
    if flavor is Flavor.PAIR:
        for k, d_k in enumerate(deficits(system, i)):
            if d_k:
                x = _pair_extension(system, i, k)
                line = Subspace.span([x], system.n, system.field)
                return _span_replacements(entry, line), k, x
    x = extension_vector(system.space, tuple_union(system, i))
    return _span_replacements(entry, Subspace.span([x], system.n, system.field)), None, x


def saturate(
    system: System,
    flavor: Flavor | str,
    functional: Functional | None = None,
    *,
    reverify: bool | None = None,
) -> SaturationTrace:
    """Fill up the lowest non-full tuple until every tuple is full, checking each step."""
    flavor = Flavor(flavor)
    check_flavor(system, flavor)
    _check_context(system, flavor)
    functional = functional or default_functional(system, flavor)
    _check_functional(system, flavor, functional)
    licensing = licensing_condition(system, flavor)
    if reverify is None:
        reverify = settings.REVERIFY_SATURATION

    weight = omega(system, functional)
    phi_initial = phi(system, flavor)
    phi_bound = phi_upper_bound(system, flavor)
    logger.info(
        "saturating %d tuples (%s flavor, %s, %s)", system.m, flavor.value, functional.label, licensing.label
    )

    current, current_phi = system, phi_initial
    steps: list[FillUpStep] = []
    i = 0
    while i < current.m:
        if is_full(current, i, flavor):
            i += 1
            continue
        replacements, block, element = _next_step(current, i, flavor)
        old_term = term(current, i, functional)
        old_phi = phi_term(current, i, flavor)
        following = _checked_replace(current, i, replacements)

        new_terms = [term(following, j, functional) for j in range(i, i + len(replacements))]
        if sum(new_terms, Fraction(0)) != old_term:
            raise SaturationError(
                f"weight changed at tuple {i + 1}: {format_rational(old_term)} -> "
                f"{format_rational(sum(new_terms, Fraction(0)))}"
            )
        gained = sum(phi_term(following, j, flavor) for j in range(i, i + len(replacements))) - old_phi
        expected = 3 * old_phi if flavor is Flavor.PAIR else (current.d - 1) * old_phi + current.d
        if gained != expected:
            raise SaturationError(f"potential grew by {gained} at tuple {i + 1}, expected {expected}")
        if current_phi + gained > phi_bound:
            raise SaturationError(f"potential {current_phi + gained} exceeds its bound {phi_bound}")
        if reverify and not verify(following, licensing).verdict:
            raise SaturationError(f"{licensing.label} lost after filling up tuple {i + 1}")

        steps.append(
            FillUpStep(i, block, element, replacements, weight, weight, current_phi, current_phi + gained)
        )
        logger.debug("step %d: tuple %d, block %s, phi %d -> %d", len(steps), i + 1, block, current_phi, current_phi + gained)
        current, current_phi = following, current_phi + gained

    logger.info("saturation finished after %d steps with %d tuples", len(steps), current.m)
    return SaturationTrace(
        flavor, functional, system, current, tuple(steps), weight, phi_initial, current_phi, phi_bound
    )


def _class_key(system: System, i: int, functional: Functional) -> tuple[int, ...]:
    if functional.kind is FunctionalKind.PARTITIONED_YUE:
        return profile(system, i).sizes[0]
    return tuple(size(part) for part in system.tuples[i])


def _class_bound(system: System, key: tuple[int, ...], functional: Functional) -> int:
    if functional.kind is FunctionalKind.TUZA:
        return multinomial(key)
    if functional.kind is FunctionalKind.YUE:
        return binomial(system.n, key[0])
    return prod(binomial(n_k, a_k) for n_k, a_k in zip(block_sizes(system), key))


def certify_full_system(
    system: System, flavor: Flavor | str, functional: Functional | None = None
) -> Certificate:
    """Count type classes of a full system and rebuild ``omega <= 1`` from them."""
    flavor = Flavor(flavor)
    check_flavor(system, flavor)
    _check_context(system, flavor)
    functional = functional or default_functional(system, flavor)
    _check_functional(system, flavor, functional)
    licensing = licensing_condition(system, flavor)
    if licensing.relation is Relation.WEAK and functional.kind is not FunctionalKind.TUZA:
        raise LicensingError(f"type classes of weak systems are only counted for tuza_sum, not {functional.kind.value}")
    for i in range(system.m):
        if not is_full(system, i, flavor):
            raise PreconditionError(f"tuple {i + 1} is not full")

    counts: Counter = Counter()
    terms: dict[tuple[int, ...], Fraction] = {}
    for i in range(system.m):
        key = _class_key(system, i, functional)
        counts[key] += 1
        terms.setdefault(key, term(system, i, functional))

    caveat = field_caveat(system)
    classes, findings = [], []
    for key in sorted(counts):
        klass = TypeClass(key, counts[key], _class_bound(system, key, functional), terms[key])
        if not klass.holds:
            message = f"type class {key} has {klass.count} tuples, bound {klass.bound}"
            if not caveat:
                raise SaturationError(f"{message} under {licensing.label}")
            logger.warning("finding over %s: %s", system.field.label, message)
            findings.append(message)
        classes.append(klass)

    weight = omega(system, functional)
    chain = sum((Fraction(c.bound) * c.term for c in classes), Fraction(0))
    checks = (
        BoundCheck("omega <= sum of bound * term", weight, chain),
        BoundCheck("sum of bound * term <= 1", chain, Fraction(1)),
    )
    return Certificate(
        f"{functional.label} <= 1 for full {licensing.label}",
        checks,
        tuple(classes),
        weight,
        caveat,
        tuple(findings),
    )


def prove(
    system: System, flavor: Flavor | str, functional: Functional | None = None
) -> tuple[SaturationTrace, Certificate]:
    """Saturate, then certify the full system; the weight must survive both."""
    trace = saturate(system, flavor, functional)
    certificate = certify_full_system(trace.final, trace.flavor, trace.functional)
    if certificate.weight != trace.omega:
        raise SaturationError(
            f"certified weight {format_rational(certificate.weight)} differs from "
            f"{format_rational(trace.omega)}"
        )
    return trace, certificate
