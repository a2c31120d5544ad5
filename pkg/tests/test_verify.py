import pytest

from bollobas.exceptions import LicensingError, PreconditionError, ShapeError
from bollobas.models.certificate import Clause
from bollobas.models.condition import ConditionKind, Domain, Relation
from bollobas.models.scalars import Field
from bollobas.models.subspace import Subspace
from bollobas.models.system import SubspaceSystem, embed
from bollobas.services.construction_service import (
    complement_chain,
    full_tuza_tuples,
    reversed_complement_chain,
    uniform_bollobas,
)
from bollobas.services.report_service import verification_section
from bollobas.services.verify_service import (
    applicable_certificates,
    check_adt1_bound,
    check_alon_bound,
    check_cardinality_lemmas,
    check_uniform_pair_bound,
    is_skew_implies_weak_check,
    is_verified,
    recheck_violation,
    verify,
)

from tests.conftest import line, set_system

SKEW = ConditionKind(Relation.SKEW, Domain.SET)


def test_complement_chain_is_skew(chain4):
    report = verify(chain4, SKEW)
    assert report.verdict
    assert report.violation is None
    assert not report.field_caveat
    assert not is_verified(chain4, Relation.BOLLOBAS)


def test_reversed_chain_fails_at_the_first_pair():
    system = reversed_complement_chain(3)
    report = verify(system, SKEW)
    assert not report.verdict
    assert (report.violation.i, report.violation.j, report.violation.clause) == (0, 1, Clause.CROSS)
    assert recheck_violation(system, report)
    section = verification_section(report)
    assert (section.violation.i, section.violation.j) == (1, 2)


def test_uniform_bollobas_family():
    system = uniform_bollobas(2, 2)
    assert system.m == 6
    assert is_verified(system, Relation.BOLLOBAS)
    assert is_verified(system, Relation.SKEW)


def test_disjointness_clause():
    system = set_system(2, [[[1], [2]], [[1], [1, 2]]])
    report = verify(system, SKEW)
    assert report.violation.clause is Clause.DISJOINTNESS
    assert report.violation.i == 1
    assert report.violation.j is None
    assert recheck_violation(system, report)


def test_weak_is_not_skew(weak_not_skew):
    assert not is_verified(weak_not_skew, Relation.SKEW)
    assert is_verified(weak_not_skew, Relation.WEAK)
    assert is_skew_implies_weak_check(weak_not_skew)


def test_monotone_clause(chain4):
    report = verify(chain4, ConditionKind(Relation.SKEW, Domain.SET, monotone=True))
    assert report.violation.clause is Clause.MONOTONE
    assert (report.violation.i, report.violation.j) == (0, 1)
    assert is_verified(uniform_bollobas(1, 1), Relation.SKEW, monotone=True)


def test_duplicates_are_reported():
    system = set_system(2, [[[1], [2]], [[1], [2]]])
    report = verify(system, ConditionKind(Relation.WEAK, Domain.SET))
    assert report.duplicate == (0, 1)
    assert not report.verdict


def test_kind_must_match_the_system(chain4):
    with pytest.raises(ShapeError):
        verify(chain4, ConditionKind(Relation.SKEW, Domain.SUBSPACE))
    with pytest.raises(ShapeError):
        verify(chain4, ConditionKind(Relation.SKEW, Domain.SET, 3))


def test_finite_field_results_carry_a_caveat():
    gf2 = Field(2)
    e1 = Subspace.coordinate([1], 2, gf2)
    e2 = Subspace.coordinate([2], 2, gf2)
    system = SubspaceSystem(2, gf2, 2, ((e1, e2), (e2, e1)))
    report = verify(system, ConditionKind(Relation.BOLLOBAS, Domain.SUBSPACE))
    assert report.verdict
    assert report.field_caveat


def test_subspace_conditions_need_nonzero_intersections():
    system = SubspaceSystem(
        2,
        Field(),
        2,
        ((line([1, 1]), Subspace.coordinate([1], 2)), (Subspace.coordinate([1], 2), line([1, 1]))),
    )
    assert is_verified(system, Relation.BOLLOBAS)
    flipped = SubspaceSystem(
        2,
        Field(),
        2,
        ((line([1, 1]), Subspace.coordinate([1], 2)), (Subspace.coordinate([1], 2), Subspace.coordinate([2], 2))),
    )
    assert not is_verified(flipped, Relation.SKEW)


def test_cardinality_lemmas_on_the_chain(chain4):
    certificate = check_cardinality_lemmas(chain4)
    assert certificate.holds
    labels = {check.label: check for check in certificate.checks}
    assert labels["m <= 2^n"].tight
    assert labels["m <= (d+1)^n"].bound == 81


def test_cardinality_lemmas_for_uniform_pairs():
    certificate = check_cardinality_lemmas(uniform_bollobas(2, 2))
    labels = {check.label: check for check in certificate.checks}
    assert labels["m <= multinomial(2, 2)"].tight
    assert labels["m <= (2+2)^(2+2)/(2^2*2^2)"].bound == 16


def test_cardinality_lemmas_for_full_tuples():
    certificate = check_cardinality_lemmas(full_tuza_tuples(2, 3))
    assert certificate.holds
    assert certificate.checks[0].label == "m <= d^n"
    assert certificate.checks[0].tight


def test_cardinality_lemmas_need_a_condition():
    with pytest.raises(PreconditionError):
        check_cardinality_lemmas(set_system(1, [[[1], [1]]]))


def test_uniform_pair_bound():
    certificate = check_uniform_pair_bound(uniform_bollobas(2, 2))
    assert certificate.holds
    assert certificate.checks[0].tight
    with pytest.raises(PreconditionError):
        check_uniform_pair_bound(complement_chain(2))
    with pytest.raises(LicensingError):
        check_uniform_pair_bound(reversed_complement_chain(2))


def test_partitioned_uniform_bounds(balanced_pairs):
    certificate = check_alon_bound(balanced_pairs)
    assert certificate.holds
    assert certificate.checks[0].label == "m <= C(2,1)*C(2,1)"
    assert certificate.checks[0].tight
    assert check_adt1_bound(embed(balanced_pairs)).checks[0].tight
    with pytest.raises(PreconditionError):
        check_alon_bound(complement_chain(2))


def test_applicable_certificates(chain4, weak_not_skew):
    certificates = applicable_certificates(chain4, SKEW)
    assert [c.claim for c in certificates] == ["cardinality bounds"]
    assert applicable_certificates(weak_not_skew, SKEW) == []
    assert len(applicable_certificates(uniform_bollobas(1, 2), ConditionKind(Relation.BOLLOBAS, Domain.SET))) == 2
