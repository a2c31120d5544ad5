import logging
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Callable

from bollobas.exceptions import LicensingError, PreconditionError, ShapeError
from bollobas.models.certificate import BoundCheck, Certificate, Clause, VerificationReport, Violation
from bollobas.models.condition import ConditionKind, Domain, Relation
from bollobas.models.subspace import is_direct_sum, meets
from bollobas.models.system import (
    SetSystem,
    SubspaceSystem,
    System,
    find_duplicate,
    is_decomposition_compatible,
    profile,
    size,
    subsystem,
)
from bollobas.utils.combinatorics import binomial, multinomial, power_bound

logger = logging.getLogger(__name__)


def _meets(first, second) -> bool:
    if isinstance(first, int):
        return first & second != 0
    return meets(first, second)


def is_independent(entry: tuple) -> bool:
    """Clause (i): pairwise disjoint sets, or a direct sum of subspaces."""
    if isinstance(entry[0], int):
        union = 0
        for part in entry:
            if union & part:
                return False
            union |= part
        return True
    return is_direct_sum(entry)


def cross_holds(relation: Relation, earlier: tuple, later: tuple) -> bool:
    """Clause (ii) for one ordered pair of tuples (``earlier`` has the smaller index)."""
    if relation is Relation.BOLLOBAS:
        return _meets(earlier[0], later[1]) and _meets(later[0], earlier[1])
    d = len(earlier)
    for p, q in combinations(range(d), 2):
        if _meets(earlier[p], later[q]):
            return True
        if relation is Relation.WEAK and _meets(earlier[q], later[p]):
            return True
    return False


def _check_kind(system: System, kind: ConditionKind) -> None:
    if kind.domain.value != system.kind:
        raise ShapeError(f"{kind.label} cannot be checked on a {system.kind} system")
    if kind.d != system.d:
        raise ShapeError(f"{kind.label} cannot be checked on a system of {system.d}-tuples")


def field_caveat(system: System) -> bool:
    return isinstance(system, SubspaceSystem) and not system.field.is_rational


def verify(system: System, kind: ConditionKind) -> VerificationReport:
    """Check ``system`` against ``kind`` and report the first violation."""
    _check_kind(system, kind)
    tuples = system.tuples
    caveat = field_caveat(system)
    duplicate = find_duplicate(system)

    def failed(i: int, j: int | None, clause: Clause) -> VerificationReport:
        return VerificationReport(kind, Violation(i, j, clause), caveat, duplicate)

    for i, entry in enumerate(tuples):
        if not is_independent(entry):
            return failed(i, None, Clause.DISJOINTNESS)

    if kind.relation is Relation.BOLLOBAS:
        for i, first in enumerate(tuples):
            for j, second in enumerate(tuples):
                if i != j and not _meets(first[0], second[1]):
                    return failed(i, j, Clause.CROSS)
    else:
        for i, j in combinations(range(len(tuples)), 2):
            if not cross_holds(kind.relation, tuples[i], tuples[j]):
                return failed(i, j, Clause.CROSS)

    if kind.monotone:
        for i in range(len(tuples) - 1):
            a_now, b_now = (size(part) for part in tuples[i])
            a_next, b_next = (size(part) for part in tuples[i + 1])
            if a_now > a_next or b_now < b_next:
                return failed(i, i + 1, Clause.MONOTONE)

    return VerificationReport(kind, None, caveat, duplicate)


def is_verified(system: System, relation: Relation | str, *, monotone: bool = False) -> bool:
    if relation == Relation.BOLLOBAS and system.d != 2:
        return False
    return verify(system, ConditionKind.for_system(system, relation, monotone=monotone)).verdict


def is_skew_implies_weak_check(system: System) -> bool:
    return not is_verified(system, Relation.SKEW) or is_verified(system, Relation.WEAK)


def recheck_violation(system: System, report: VerificationReport) -> bool:
    """Re-verify the reported witness in isolation; True when it really fails."""
    violation = report.violation
    if violation is None:
        return False
    if violation.clause is Clause.DISJOINTNESS:
        indices = [violation.i]
    else:
        # order is significant for skew and monotone witnesses (always i < j);
        # a Bollobás witness fails in either order
        indices = sorted((violation.i, violation.j))
    return not verify(subsystem(system, indices), report.condition).verdict


def _require(system: System, relation: Relation, purpose: str) -> None:
    report = verify(system, ConditionKind.for_system(system, relation))
    if not report.verdict:
        v = report.violation
        raise LicensingError(
            f"{purpose} needs a verified {report.condition.label}; "
            f"{v.clause.value} fails at {_witness_label(v)}"
        )


def _witness_label(violation: Violation) -> str:
    if violation.j is None:
        return f"tuple {violation.i + 1}"
    return f"tuples ({violation.i + 1},{violation.j + 1})"


def _uniform(values: list) -> object | None:
    if values and all(value == values[0] for value in values):
        return values[0]
    return None


def _record(system: System, claim: str, checks: list[BoundCheck]) -> Certificate:
    caveat = field_caveat(system)
    findings = []
    if caveat:
        for check in checks:
            if not check.holds:
                message = f"{check.label}: {check.value} > {check.bound} over {system.field.label}"
                logger.warning("finding (stated over the reals only): %s", message)
                findings.append(message)
    return Certificate(claim, tuple(checks), field_caveat=caveat, findings=tuple(findings))


def check_uniform_pair_bound(system: System) -> Certificate:
    claim = "uniform skew pairs: m <= C(a+b, a)"
    if system.d != 2:
        raise ShapeError("the uniform pair bound needs a pair system")
    _require(system, Relation.SKEW, claim)
    if system.m == 0:
        return _record(system, claim, [])
    sizes = _uniform([tuple(size(part) for part in entry) for entry in system.tuples])
    if sizes is None:
        raise PreconditionError("component sizes are not uniform")
    a, b = sizes
    return _record(system, claim, [BoundCheck(f"m <= C({a + b},{a})", Fraction(system.m), Fraction(binomial(a + b, a)))])


def _product_bound(system: System, claim: str) -> Certificate:
    if system.m == 0:
        return _record(system, claim, [])
    shape = _uniform([profile(system, i) for i in range(system.m)])
    if shape is None:
        raise PreconditionError("per-block profile is not uniform across tuples")
    a_row, b_row = shape.sizes
    bound = prod(binomial(a + b, a) for a, b in zip(a_row, b_row))
    label = "m <= " + "*".join(f"C({a + b},{a})" for a, b in zip(a_row, b_row))
    return _record(system, claim, [BoundCheck(label, Fraction(system.m), Fraction(bound))])


def check_alon_bound(system: SetSystem) -> Certificate:
    claim = "partitioned uniform skew set pairs: m <= prod_k C(a_k+b_k, a_k)"
    if not isinstance(system, SetSystem) or system.d != 2:
        raise ShapeError("the partitioned uniform bound is stated for set pairs")
    if system.partition is None:
        raise PreconditionError("the system has no partition")
    _require(system, Relation.SKEW, claim)
    return _product_bound(system, claim)


def check_adt1_bound(system: SubspaceSystem) -> Certificate:
    claim = "decomposed uniform skew subspace pairs: m <= prod_k C(a_k+b_k, a_k)"
    if not isinstance(system, SubspaceSystem) or system.d != 2:
        raise ShapeError("the decomposed uniform bound is stated for subspace pairs")
    if system.decomposition is None:
        raise PreconditionError("the system has no decomposition")
    if not is_decomposition_compatible(system):
        raise PreconditionError("the system is not compatible with its decomposition")
    _require(system, Relation.SKEW, claim)
    return _product_bound(system, claim)


def check_cardinality_lemmas(system: System) -> Certificate:
    """Every cardinality bound the system's verified conditions license."""
    n, d, m = system.n, system.d, Fraction(system.m)
    checks: list[BoundCheck] = []
    skew = is_verified(system, Relation.SKEW)
    weak = skew or is_verified(system, Relation.WEAK)
    totals = _uniform([tuple(size(part) for part in entry) for entry in system.tuples])

    if skew:
        label = "m <= 2^n" if d == 2 else "m <= d^n"
        checks.append(BoundCheck(label, m, Fraction(d**n)))
        if totals is not None:
            checks.append(BoundCheck(f"m <= multinomial{totals}", m, Fraction(multinomial(totals))))
    if isinstance(system, SetSystem) and weak:
        checks.append(BoundCheck("m <= (d+1)^n", m, Fraction((d + 1) ** n)))
        if d == 2 and totals is not None:
            a, b = totals
            checks.append(BoundCheck(f"m <= ({a}+{b})^({a}+{b})/({a}^{a}*{b}^{b})", m, power_bound(a, b)))

    if not checks:
        raise PreconditionError("no cardinality bound applies to the verified condition")
    return _record(system, "cardinality bounds", checks)


def applicable_certificates(system: System, kind: ConditionKind) -> list[Certificate]:
    """All bound certificates licensed once ``system`` satisfies ``kind``."""
    if not verify(system, kind).verdict:
        return []
    checkers: list[Callable[[System], Certificate]] = [check_cardinality_lemmas]
    if system.d == 2 and kind.relation is not Relation.WEAK:
        checkers.append(check_uniform_pair_bound)
        checkers.append(check_alon_bound if kind.domain is Domain.SET else check_adt1_bound)
    certificates = []
    for checker in checkers:
        try:
            certificates.append(checker(system))
        except (PreconditionError, LicensingError, ShapeError) as exc:
            logger.debug("skipping %s: %s", checker.__name__, exc.detail)
    return certificates
