from fractions import Fraction

import pytest

from bollobas.exceptions import LicensingError, PreconditionError, ShapeError
from bollobas.models.condition import Flavor, Functional, FunctionalKind, Relation
from bollobas.models.scalars import ProbabilityVector
from bollobas.models.system import embed
from bollobas.services.construction_service import (
    complement_chain,
    full_tuza_tuples,
    reversed_complement_chain,
    uniform_bollobas,
)
from bollobas.services.weight_service import (
    default_functional,
    evaluate_inequality,
    omega,
    phi,
    phi_upper_bound,
    secondary_bound,
)

YUE = Functional(FunctionalKind.YUE)
PARTITIONED_YUE = Functional(FunctionalKind.PARTITIONED_YUE)
Y26 = Functional(FunctionalKind.Y26)
HEGEDUS_FRANKL = Functional(FunctionalKind.HEGEDUS_FRANKL)
BOLLOBAS = Functional(FunctionalKind.BOLLOBAS)


def test_complement_chain_is_tight(chain4):
    assert omega(chain4, YUE) == 1
    assert omega(chain4, HEGEDUS_FRANKL) == 5
    verdict = evaluate_inequality(chain4, YUE)
    assert verdict.holds and verdict.tight
    assert verdict.licensing.relation is Relation.SKEW
    assert evaluate_inequality(chain4, HEGEDUS_FRANKL).bound == 5


def test_partitioned_chain_is_tight(partitioned_chain):
    assert omega(partitioned_chain, PARTITIONED_YUE) == 1
    verdict = evaluate_inequality(partitioned_chain, Y26)
    assert verdict.value == verdict.bound == 9
    assert verdict.notes == ("9 <= (1+n/r)^r = 9: True",)
    assert secondary_bound(partitioned_chain) == 9


def test_embedded_values_agree(partitioned_chain):
    embedded = embed(partitioned_chain)
    for functional in (YUE, PARTITIONED_YUE, Y26, HEGEDUS_FRANKL):
        assert omega(embedded, functional) == omega(partitioned_chain, functional)
    assert evaluate_inequality(embedded, PARTITIONED_YUE).tight


def test_bollobas_sum():
    system = uniform_bollobas(2, 1)
    verdict = evaluate_inequality(system, BOLLOBAS)
    assert verdict.value == 1
    assert verdict.licensing.label == "bollobas set 2-tuples"


def test_bollobas_sum_is_not_licensed_by_skew_alone():
    with pytest.raises(LicensingError):
        evaluate_inequality(complement_chain(2), BOLLOBAS)
    assert omega(complement_chain(2), BOLLOBAS) == 3


def test_scott_wilmer_needs_monotone_sizes(chain4):
    with pytest.raises(PreconditionError):
        omega(chain4, Functional(FunctionalKind.SCOTT_WILMER))
    system = uniform_bollobas(1, 1)
    verdict = evaluate_inequality(system, Functional(FunctionalKind.SCOTT_WILMER))
    assert verdict.value == 1
    assert verdict.licensing.monotone


def test_tuza_on_full_tuples():
    system = full_tuza_tuples(3, 3)
    assert system.m == 27
    functional = Functional(FunctionalKind.TUZA, ProbabilityVector.parse("1/2,1/4,1/4"))
    verdict = evaluate_inequality(system, functional)
    assert verdict.value == 1
    assert verdict.tight


def test_tuza_empty_components_weigh_one():
    system = full_tuza_tuples(1, 2)
    functional = Functional(FunctionalKind.TUZA, ProbabilityVector.parse("1/3,2/3"))
    assert omega(system, functional) == 1


def test_refusal_keeps_the_value_computable():
    system = reversed_complement_chain(3)
    assert omega(system, YUE) == 1
    with pytest.raises(LicensingError) as excinfo:
        evaluate_inequality(system, YUE)
    assert excinfo.value.exit_code == 1


def test_hegedus_frankl_is_only_licensed_for_sets():
    embedded = embed(complement_chain(2))
    assert omega(embedded, HEGEDUS_FRANKL) == 3
    with pytest.raises(LicensingError):
        evaluate_inequality(embedded, HEGEDUS_FRANKL)


def test_shape_errors(chain4):
    with pytest.raises(ShapeError):
        omega(full_tuza_tuples(2, 3), YUE)
    with pytest.raises(ShapeError):
        omega(chain4, PARTITIONED_YUE)
    with pytest.raises(ShapeError):
        omega(chain4, Functional(FunctionalKind.TUZA, ProbabilityVector.uniform(3)))
    with pytest.raises(ShapeError):
        Functional(FunctionalKind.TUZA)
    with pytest.raises(ShapeError):
        Functional(FunctionalKind.YUE, ProbabilityVector.uniform(2))


def test_potential(chain4):
    assert phi(chain4, Flavor.SET) == 64
    assert phi_upper_bound(chain4, Flavor.SET) == 4 * 81
    embedded = embed(chain4)
    assert phi(embedded, Flavor.PAIR) == 16 * 16
    assert phi_upper_bound(embedded, Flavor.PAIR) == 4**4
    with pytest.raises(ShapeError):
        phi(chain4, Flavor.PAIR)


def test_default_functional(chain4, partitioned_chain, weak_not_skew):
    assert default_functional(chain4, Flavor.SET) == YUE
    assert default_functional(partitioned_chain, Flavor.SET) == PARTITIONED_YUE
    assert default_functional(weak_not_skew, Flavor.SET) == Functional(FunctionalKind.TUZA, ProbabilityVector.uniform(2))
    assert default_functional(embed(chain4), Flavor.PAIR) == YUE
    assert default_functional(embed(chain4), Flavor.TUPLE).kind is FunctionalKind.TUZA
    assert default_functional(full_tuza_tuples(2, 3), Flavor.SET).p == ProbabilityVector.uniform(3)


def test_exact_values_are_fractions(chain4):
    assert isinstance(omega(chain4, YUE), Fraction)
    assert omega(complement_chain(0), YUE) == 1
