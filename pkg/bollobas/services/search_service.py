"""Exhaustive and randomized search over small grounds.

Candidates are the clause-(i) valid tuples of a ground, in canonical order.
The depth-first search only appends: a candidate may follow the current
sequence when the cross clause holds between every earlier tuple and it, so
every prefix of a sequence is itself a valid system.
"""

import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from bollobas.config import settings
from bollobas.exceptions import GuardError, PreconditionError, ShapeError
from bollobas.models.certificate import SearchResult
from bollobas.models.condition import ConditionKind, Domain, Functional, FunctionalKind, Relation
from bollobas.models.scalars import Field, ProbabilityVector, format_rational
from bollobas.models.subspace import Decomposition, Subspace, enumerate_subspaces, is_direct_sum, rref
from bollobas.models.system import (
    SetSystem,
    SubspaceSystem,
    System,
    block_spaces,
    is_decomposition_compatible,
    mask_of,
    size,
    with_tuples,
)
from bollobas.services.verify_service import cross_holds, field_caveat, is_independent
from bollobas.services.weight_service import check_shape, inequality_bound, licensing_conditions, omega, term

logger = logging.getLogger(__name__)


class Objective(str, Enum):
    MAX_M = "max-m"
    MAX_WEIGHT = "max-weight"
    COUNTEREXAMPLE = "counterexample"


@dataclass(frozen=True)
class Ground:
    """[n] when ``field`` is None, else field^n; blocks are 1-based element lists."""

    n: int
    field: Field | None = None
    partition: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ShapeError(f"ground size must be nonnegative, got {self.n}")
        if self.partition is not None:
            object.__setattr__(self, "partition", tuple(tuple(block) for block in self.partition))

    @property
    def kind(self) -> str:
        return "set" if self.field is None else "subspace"

    def empty_system(self, d: int) -> System:
        if self.field is None:
            partition = None
            if self.partition is not None:
                partition = tuple(mask_of(block, self.n) for block in self.partition)
            return SetSystem(self.n, d, (), partition)
        decomposition = None
        if self.partition is not None:
            decomposition = Decomposition.coordinate(self.partition, self.n, self.field)
        return SubspaceSystem(self.n, self.field, d, (), decomposition)


@dataclass(frozen=True)
class SearchProblem:
    ground: Ground
    condition: ConditionKind
    objective: Objective = Objective.MAX_M
    functional: Functional | None = None
    sizes: tuple[int, ...] | None = None
    node_budget: int | None = None
    time_budget: float | None = None
    prune: bool = True
    force: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "objective", Objective(self.objective))
        if self.condition.domain.value != self.ground.kind:
            raise ShapeError(f"{self.condition.label} cannot be searched on a {self.ground.kind} ground")
        if self.node_budget is not None and self.node_budget <= 0:
            raise ShapeError("node budget must be positive")
        if self.time_budget is not None and self.time_budget < 0:
            raise ShapeError("time budget must be nonnegative")
        if self.sizes is not None and len(self.sizes) != self.condition.d:
            raise ShapeError(f"sizes {self.sizes} do not match {self.condition.d}-tuples")
        if self.objective is not Objective.MAX_M and self.functional is None:
            raise ShapeError(f"the {self.objective.value} objective needs a functional")

    @property
    def d(self) -> int:
        return self.condition.d


def _check_ground(ground: Ground, force: bool) -> None:
    if ground.field is None:
        if ground.n > settings.SET_GROUND_LIMIT and not force:
            raise GuardError(f"n={ground.n} exceeds the set ground limit {settings.SET_GROUND_LIMIT}")
        return
    if ground.field.is_rational:
        raise GuardError("the rationals have infinitely many subspaces; use random generation")
    if ground.n > settings.SUBSPACE_GROUND_LIMIT and not force:
        raise GuardError(f"n={ground.n} exceeds the subspace ground limit {settings.SUBSPACE_GROUND_LIMIT}")


def enumerate_candidates(
    ground: Ground,
    condition: ConditionKind,
    sizes: Sequence[int] | None = None,
    force: bool = False,
) -> Iterator[tuple]:
    """Every clause-(i) valid d-tuple of the ground exactly once, in canonical order.

    Sets follow assignment order: each element gets 0 (uncovered) or the
    coordinate it joins, element 1 varying slowest.
    """
    if condition.domain.value != ground.kind:
        raise ShapeError(f"{condition.label} candidates cannot come from a {ground.kind} ground")
    _check_ground(ground, force)
    d = condition.d
    wanted = tuple(sizes) if sizes is not None else None

    if ground.field is None:
        for assignment in product(range(d + 1), repeat=ground.n):
            parts = [0] * d
            for p, value in enumerate(assignment):
                if value:
                    parts[value - 1] |= 1 << p
            entry = tuple(parts)
            if wanted is None or tuple(part.bit_count() for part in entry) == wanted:
                yield entry
        return

    template = ground.empty_system(d)
    spaces = list(enumerate_subspaces(ground.n, ground.field))
    for entry in product(spaces, repeat=d):
        if wanted is not None and tuple(part.dim for part in entry) != wanted:
            continue
        if not is_direct_sum(entry):
            continue
        if template.decomposition is not None and not is_decomposition_compatible(with_tuples(template, [entry])):
            continue
        yield entry


def _cap(problem: SearchProblem, template: System) -> Fraction | None:
    """A value no system satisfying the search condition can beat, when one is licensed."""
    n, d = problem.ground.n, problem.d
    field = problem.ground.field
    if field is not None and not field.is_rational:
        return None
    if problem.objective is Objective.MAX_M:
        if problem.condition.relation is not Relation.WEAK:
            return Fraction(d**n)
        if problem.condition.domain is Domain.SET:
            return Fraction((d + 1) ** n)
        return None
    if problem.objective is Objective.COUNTEREXAMPLE:
        return None
    try:
        licensed = licensing_conditions(template, problem.functional)
    except ShapeError:
        return None
    if any(problem.condition.implies(kind) for kind in licensed if kind is not None):
        return inequality_bound(template, problem.functional)
    return None


@dataclass
class _Tables:
    candidates: list
    after: list[int]  # after[u]: candidates that may follow u
    weights: list[Fraction]
    ordered: bool  # skew or monotone: any order; otherwise increasing index
    cap: Fraction | None
    target: Fraction | None  # counterexample: stop once the value exceeds this


def _tables(problem: SearchProblem) -> _Tables:
    template = problem.ground.empty_system(problem.d)
    candidates = list(enumerate_candidates(problem.ground, problem.condition, problem.sizes, problem.force))
    relation = problem.condition.relation
    monotone = problem.condition.monotone
    after = []
    for u, first in enumerate(candidates):
        mask = 0
        for v, second in enumerate(candidates):
            if u == v or not cross_holds(relation, first, second):
                continue
            if monotone and (size(first[0]) > size(second[0]) or size(first[1]) < size(second[1])):
                continue
            mask |= 1 << v
        after.append(mask)

    if problem.objective is Objective.MAX_M:
        weights = [Fraction(1)] * len(candidates)
    else:
        check_shape(template, problem.functional)
        weights = [term(with_tuples(template, [entry]), 0, problem.functional) for entry in candidates]

    target = None
    if problem.objective is Objective.COUNTEREXAMPLE:
        target = inequality_bound(template, problem.functional)
        licensed = licensing_conditions(template, problem.functional)
        over_theorem = problem.ground.field is None or problem.ground.field.is_rational
        if over_theorem and any(problem.condition.implies(kind) for kind in licensed if kind is not None):
            raise PreconditionError(
                f"{problem.functional.kind.value} <= {format_rational(target)} is a theorem under "
                f"{problem.condition.label}; no counterexample exists"
            )
    ordered = relation is Relation.SKEW or monotone
    return _Tables(candidates, after, weights, ordered, _cap(problem, template), target)


class _DepthFirst:
    def __init__(self, tables: _Tables, prune: bool, node_budget: int, deadline: float | None) -> None:
        self.tables = tables
        self.prune = prune
        self.node_budget = node_budget
        self.deadline = deadline
        self.best_value = Fraction(0)
        self.best: tuple[int, ...] = ()
        self.nodes = 0
        self.aborted = False
        self.settled = False

    def run(self, prefix: Sequence[int], allowed: int, value: Fraction) -> None:
        self._visit(list(prefix), allowed, value)

    def _optimistic(self, value: Fraction, allowed: int) -> Fraction:
        weights = self.tables.weights
        total = value
        while allowed:
            low = allowed & -allowed
            total += weights[low.bit_length() - 1]
            allowed ^= low
        return total

    def _visit(self, sequence: list[int], allowed: int, value: Fraction) -> None:
        if self.aborted or self.settled:
            return
        self.nodes += 1
        if self.nodes > self.node_budget or (self.deadline is not None and time.monotonic() > self.deadline):
            self.aborted = True
            return
        tables = self.tables
        if value > self.best_value:
            self.best_value, self.best = value, tuple(sequence)
            if tables.target is not None and value > tables.target:
                self.settled = True
                return
            if self.prune and tables.cap is not None and value >= tables.cap:
                self.settled = True
                return
        if self.prune and self._optimistic(value, allowed) <= self.best_value:
            return
        rest = allowed
        while rest:
            low = rest & -rest
            rest ^= low
            c = low.bit_length() - 1
            following = allowed & tables.after[c]
            if not tables.ordered:
                following &= ~((low << 1) - 1)
            sequence.append(c)
            self._visit(sequence, following, value + tables.weights[c])
            sequence.pop()
            if self.aborted or self.settled:
                return


def _budgets(problem: SearchProblem) -> tuple[int, float | None]:
    budget = problem.node_budget if problem.node_budget is not None else settings.NODE_BUDGET
    seconds = problem.time_budget if problem.time_budget is not None else settings.TIME_BUDGET
    return budget, (time.monotonic() + seconds if seconds else None)


def _search_branch(problem: SearchProblem, tables: _Tables, first: int) -> tuple[Fraction, tuple[int, ...], int, bool, bool]:
    budget, deadline = _budgets(problem)
    searcher = _DepthFirst(tables, problem.prune, budget, deadline)
    following = tables.after[first]
    if not tables.ordered:
        following &= ~((1 << (first + 1)) - 1)
    searcher.run([first], following, tables.weights[first])
    return searcher.best_value, searcher.best, searcher.nodes, searcher.aborted, searcher.settled


def search_max(problem: SearchProblem, workers: int = 1) -> SearchResult:
    """Best system for the objective; exhaustive when no budget ran out."""
    tables = _tables(problem)
    template = problem.ground.empty_system(problem.d)
    logger.info(
        "searching %s over %d candidates (%s)", problem.objective.value, len(tables.candidates), problem.condition.label
    )
    everything = (1 << len(tables.candidates)) - 1

    if workers > 1 and tables.candidates:
        best_value, best, nodes, aborted = Fraction(0), (), 1, False
        with ProcessPoolExecutor(max_workers=workers) as pool:
            branches = pool.map(
                _search_branch,
                [problem] * len(tables.candidates),
                [tables] * len(tables.candidates),
                range(len(tables.candidates)),
            )
            # first-branch order: ties keep the lowest prefix
            for value, sequence, explored, branch_aborted, _ in branches:
                nodes += explored
                aborted = aborted or branch_aborted
                if value > best_value:
                    best_value, best = value, sequence
    else:
        budget, deadline = _budgets(problem)
        searcher = _DepthFirst(tables, problem.prune, budget, deadline)
        searcher.run([], everything, Fraction(0))
        best_value, best, nodes, aborted = searcher.best_value, searcher.best, searcher.nodes, searcher.aborted

    witness = with_tuples(template, [tables.candidates[c] for c in best])
    exceeds = False
    if problem.objective is Objective.MAX_M:
        cap = _cap(problem, template)
        exceeds = cap is not None and best_value > cap
    elif witness.m:
        exceeds = best_value > inequality_bound(witness, problem.functional)
    if exceeds:
        logger.warning("best value %s exceeds the bound (finding)", format_rational(best_value))
    logger.info("search finished: best %s after %d nodes (budget hit: %s)", format_rational(best_value), nodes, aborted)
    # stopping at a counterexample proves nothing about the rest of the space
    exhaustive = not aborted and not (tables.target is not None and best_value > tables.target)
    return SearchResult(best_value, witness, nodes, exhaustive, exceeds, field_caveat(witness))


def _random_scalar(rng: random.Random, field: Field):
    if field.is_rational:
        return Fraction(rng.randint(-2, 2))
    return field.coerce(rng.randrange(field.modulus))


def _random_basis(rng: random.Random, block: Subspace) -> list:
    """A random basis of ``block``: a full-rank random combination of its rows."""
    k, field = block.dim, block.field
    for _ in range(settings.RANDOM_ATTEMPTS):
        matrix = [[_random_scalar(rng, field) for _ in range(k)] for _ in range(k)]
        if len(rref(matrix, k)[1]) == k:
            break
    else:
        matrix = [[field.one() if r == c else field.zero() for c in range(k)] for r in range(k)]
    zero = field.zero()
    vectors = []
    for row in matrix:
        vector = [zero] * block.ambient_dim
        for coefficient, basis_row in zip(row, block.basis):
            vector = [a + coefficient * b for a, b in zip(vector, basis_row)]
        vectors.append(vector)
    return vectors


def _propose(rng: random.Random, system: System) -> tuple:
    d = system.d
    if isinstance(system, SetSystem):
        parts = [0] * d
        for p in range(system.n):
            value = rng.randrange(d + 1)
            if value:
                parts[value - 1] |= 1 << p
        return tuple(parts)
    # each basis vector of each block joins one coordinate or none, so the
    # tuple is a direct sum and compatible with the blocks
    rows: list[list] = [[] for _ in range(d)]
    for block in block_spaces(system):
        for vector in _random_basis(rng, block):
            value = rng.randrange(d + 1)
            if value:
                rows[value - 1].append(vector)
    return tuple(Subspace.span(vectors, system.n, system.field) for vectors in rows)


def _fits(system: System, condition: ConditionKind, entry: tuple) -> bool:
    if not is_independent(entry):
        return False
    if condition.monotone and system.m:
        last = system.tuples[-1]
        if size(last[0]) > size(entry[0]) or size(last[1]) < size(entry[1]):
            return False
    return all(cross_holds(condition.relation, earlier, entry) for earlier in system.tuples)


def extend_random(system: System, condition: ConditionKind, m: int, seed: int) -> System:
    """Append random tuples that keep ``condition`` until the system has ``m`` tuples."""
    if condition.domain.value != system.kind or condition.d != system.d:
        raise ShapeError(f"{condition.label} cannot extend a {system.kind} system of {system.d}-tuples")
    rng = random.Random(seed)
    tuples = list(system.tuples)
    current = system
    attempts = max(m - system.m, 0) * settings.RANDOM_ATTEMPTS
    for _ in range(attempts):
        if len(tuples) >= m:
            break
        entry = _propose(rng, current)
        if _fits(current, condition, entry):
            tuples.append(entry)
            current = with_tuples(system, tuples)
    if current.m < m:
        logger.info("random generation stopped at %d of %d tuples (seed %d)", current.m, m, seed)
    return current


def random_valid_system(ground: Ground, condition: ConditionKind, m: int, seed: int) -> System:
    """Seeded greedy system of at most ``m`` tuples satisfying ``condition``."""
    if condition.domain.value != ground.kind:
        raise ShapeError(f"{condition.label} cannot be generated on a {ground.kind} ground")
    return extend_random(ground.empty_system(condition.d), condition, m, seed)


def explore_weak_subspace_conjecture(
    n: int,
    d: int,
    p: ProbabilityVector,
    field: Field,
    budget: int | None = None,
    seed: int = 0,
) -> SearchResult:
    """Largest tuza_sum found over weak subspace d-tuple systems.

    Finite fields are searched exhaustively within ``budget`` nodes; the
    rationals are sampled with ``budget`` seeded random restarts. A value above
    1 is reported as a finding, never as a refutation.
    """
    condition = ConditionKind(Relation.WEAK, Domain.SUBSPACE, d)
    functional = Functional(FunctionalKind.TUZA, p)
    ground = Ground(n, field)
    if not field.is_rational:
        return search_max(SearchProblem(ground, condition, Objective.MAX_WEIGHT, functional, node_budget=budget))

    restarts = budget if budget is not None else settings.RANDOM_ATTEMPTS
    best_value, witness = Fraction(0), ground.empty_system(d)
    for offset in range(restarts):
        system = random_valid_system(ground, condition, (d + 1) ** n, seed + offset)
        value = omega(system, functional)
        if value > best_value:
            best_value, witness = value, system
    exceeds = best_value > 1
    if exceeds:
        logger.warning("weak subspace system over %s with tuza_sum %s > 1", field.label, format_rational(best_value))
    return SearchResult(best_value, witness, restarts, False, exceeds, field_caveat(witness))
