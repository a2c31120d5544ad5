import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bollobas.exceptions import PreconditionError, ShapeError
from bollobas.models.condition import ConditionKind, Domain, Flavor, Functional, FunctionalKind, Relation
from bollobas.models.scalars import RATIONALS, Field, PrimeFieldScalar, ProbabilityVector
from bollobas.models.subspace import Decomposition, Subspace, canonicalize, rref
from bollobas.models.system import (
    SetSystem,
    SubspaceSystem,
    embed,
    is_decomposition_compatible,
    mask_of,
    members,
    profile,
)
from bollobas.services.saturation_service import certify_full_system, is_full, saturate
from bollobas.services.search_service import Ground, extend_random, random_valid_system
from bollobas.services.verify_service import is_skew_implies_weak_check, recheck_violation, verify
from bollobas.services.weight_service import check_shape, omega

GF5 = Field(5)

residues = st.integers(min_value=0, max_value=4)
rows5 = st.lists(st.lists(residues, min_size=3, max_size=3), max_size=4)


@given(st.integers(min_value=1, max_value=4), st.integers(min_value=0, max_value=4))
def test_prime_field_inverse(a, b):
    x = PrimeFieldScalar(a, 5)
    assert x * x.inverse() == 1
    assert (x + PrimeFieldScalar(b, 5)) - PrimeFieldScalar(b, 5) == x


@given(rows5, st.randoms(use_true_random=False))
def test_rref_ignores_row_order_and_scaling(rows, rng):
    shuffled = [[(3 * entry) % 5 for entry in row] for row in rows]
    rng.shuffle(shuffled)
    assert canonicalize(rows, 3, GF5) == canonicalize(shuffled, 3, GF5)


@given(rows5, rows5)
def test_dimension_formula(first, second):
    u, w = canonicalize(first, 3, GF5), canonicalize(second, 3, GF5)
    assert (u + w).dim + (u & w).dim == u.dim + w.dim
    assert u <= u + w
    assert u & w <= w


masks = st.integers(min_value=0, max_value=7)
pair_systems = st.lists(st.tuples(masks, masks), max_size=5).map(lambda tuples: SetSystem(3, 2, tuple(tuples)))


@given(pair_systems)
def test_skew_implies_weak(system):
    assert is_skew_implies_weak_check(system)


@given(pair_systems, st.sampled_from(list(Relation)))
def test_reported_violations_recheck(system, relation):
    report = verify(system, ConditionKind.for_system(system, relation))
    assert report.verdict or recheck_violation(system, report)


def _random_p(rng: random.Random, d: int) -> ProbabilityVector:
    weights = [rng.randint(1, 4) for _ in range(d)]
    return ProbabilityVector(tuple(Fraction(w, sum(weights)) for w in weights))


def _random_partition(rng: random.Random, n: int) -> tuple[tuple[int, ...], ...]:
    labels = [rng.randrange(3) for _ in range(n)]
    blocks = (tuple(p for p in range(1, n + 1) if labels[p - 1] == k) for k in range(3))
    return tuple(block for block in blocks if block)


def _random_set_system(rng: random.Random) -> SetSystem:
    n, d = rng.randint(1, 5), rng.choice((2, 3))
    tuples = []
    for _ in range(rng.randint(0, 5)):
        if rng.random() < 0.8:
            labels = [rng.randrange(d + 1) for _ in range(n)]
            tuples.append(tuple(sum(1 << p for p in range(n) if labels[p] == ell + 1) for ell in range(d)))
        else:
            tuples.append(tuple(rng.randrange(1 << n) for _ in range(d)))
    partition = None
    if rng.random() < 0.7:
        partition = tuple(mask_of(block, n) for block in _random_partition(rng, n))
    return SetSystem(n, d, tuple(tuples), partition)


def _outcome(system, functional: Functional):
    try:
        check_shape(system, functional)
        return omega(system, functional)
    except (ShapeError, PreconditionError) as exc:
        return type(exc)


@pytest.mark.parametrize("seed", range(100))
def test_embedding_preserves_verdicts_and_weights(seed):
    rng = random.Random(seed)
    system = _random_set_system(rng)
    embedded = embed(system)
    if system.partition is None:
        assert embedded.decomposition is None
    else:
        blocks = [members(block) for block in system.partition]
        assert embedded.decomposition == Decomposition.coordinate(blocks, system.n)
    for relation in Relation:
        if relation is Relation.BOLLOBAS and system.d != 2:
            continue
        for monotone in (False, True) if system.d == 2 else (False,):
            set_verdict = verify(system, ConditionKind.for_system(system, relation, monotone=monotone))
            subspace_verdict = verify(embedded, ConditionKind.for_system(embedded, relation, monotone=monotone))
            assert set_verdict.violation == subspace_verdict.violation
    for kind in FunctionalKind:
        functional = Functional(kind, _random_p(rng, system.d) if kind is FunctionalKind.TUZA else None)
        assert _outcome(system, functional) == _outcome(embedded, functional)
    for i in range(system.m):
        assert profile(system, i) == profile(embedded, i)


def _rotated_decomposition(rng: random.Random, n: int) -> Decomposition:
    # blocks spanned by rows of a random invertible matrix
    while True:
        matrix = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        if len(rref(matrix, n)[1]) == n:
            break
    cuts = sorted(rng.sample(range(1, n), rng.randint(1, n - 1)))
    bounds = [0, *cuts, n]
    return Decomposition(n, tuple(Subspace.span(matrix[a:b], n) for a, b in zip(bounds, bounds[1:])))


def _invariance_functional(rng: random.Random, system, skew: bool) -> Functional:
    kinds = [FunctionalKind.TUZA]
    if skew and system.d == 2:
        kinds.append(FunctionalKind.YUE)
        if system.has_context:
            kinds.append(FunctionalKind.PARTITIONED_YUE)
    kind = rng.choice(kinds)
    return Functional(kind, _random_p(rng, system.d) if kind is FunctionalKind.TUZA else None)


def _invariance_case(seed: int):
    """(system, flavor, relation, functional) for one seeded saturation run."""
    rng = random.Random(seed)
    case = seed % 4
    if case == 0:
        n = rng.randint(1, 5)
        ground = Ground(n, partition=_random_partition(rng, n) if rng.random() < 0.5 else None)
        system = random_valid_system(ground, ConditionKind(Relation.SKEW, Domain.SET), rng.randint(1, 5), seed)
        return system, Flavor.SET, Relation.SKEW, _invariance_functional(rng, system, True)
    if case == 1:
        n = rng.randint(1, 5)
        ground = Ground(n, partition=_random_partition(rng, n))
        system = random_valid_system(ground, ConditionKind(Relation.WEAK, Domain.SET, 3), rng.randint(1, 3), seed)
        return system, Flavor.SET, Relation.WEAK, _invariance_functional(rng, system, False)
    if case == 2:
        n = rng.randint(2, 4)
        empty = SubspaceSystem(n, RATIONALS, 2, (), _rotated_decomposition(rng, n))
        system = extend_random(empty, ConditionKind(Relation.SKEW, Domain.SUBSPACE), rng.randint(1, 3), seed)
        return system, Flavor.PAIR, Relation.SKEW, _invariance_functional(rng, system, True)
    ground = Ground(rng.randint(1, 3), Field(3))
    system = random_valid_system(ground, ConditionKind(Relation.SKEW, Domain.SUBSPACE, 3), 3, seed)
    return system, Flavor.TUPLE, Relation.SKEW, _invariance_functional(rng, system, True)


@pytest.mark.parametrize("seed", range(200))
def test_saturation_keeps_weight_and_condition(seed):
    system, flavor, relation, functional = _invariance_case(seed)
    # re-verify every step on small grounds only
    trace = saturate(system, flavor, functional, reverify=system.n <= 3)
    assert trace.functional == functional
    assert omega(trace.final, functional) == omega(system, functional) == trace.omega
    assert trace.phi_initial <= trace.phi_final <= trace.phi_bound
    assert all(is_full(trace.final, i, flavor) for i in range(trace.final.m))
    assert verify(trace.final, ConditionKind.for_system(trace.final, relation)).verdict
    if flavor is Flavor.PAIR:
        assert trace.final.decomposition == system.decomposition
        assert is_decomposition_compatible(trace.final)
    certificate = certify_full_system(trace.final, flavor, functional)
    assert certificate.holds
    assert certificate.weight == trace.omega


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_coordinate_subspaces_meet_like_sets(seed):
    rng = random.Random(seed)
    first = [p for p in range(1, 5) if rng.random() < 0.5]
    second = [p for p in range(1, 5) if rng.random() < 0.5]
    u, w = Subspace.coordinate(first, 4), Subspace.coordinate(second, 4)
    assert (u & w) == Subspace.coordinate(set(first) & set(second), 4)
    assert (u + w).dim == len(set(first) | set(second))
