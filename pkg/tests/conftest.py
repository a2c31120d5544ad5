import pytest
import yaml
from click.testing import CliRunner

from bollobas.main import cli
from bollobas.models.scalars import RATIONALS, Field
from bollobas.models.subspace import Subspace
from bollobas.models.system import SetSystem, SubspaceSystem
from bollobas.services.construction_service import complement_chain, partitioned_complement_chain


def set_system(n, tuples, partition=None) -> SetSystem:
    return SetSystem.from_lists(n, tuples, partition=partition)


def line(vector, field: Field = RATIONALS) -> Subspace:
    return Subspace.span([vector], len(vector), field)


@pytest.fixture
def chain4() -> SetSystem:
    return complement_chain(4)


@pytest.fixture
def partitioned_chain() -> SetSystem:
    return partitioned_complement_chain(4, [[1, 2], [3, 4]])


@pytest.fixture
def weak_not_skew() -> SetSystem:
    # (∅,{1}) then ({1},∅): the skew clause fails, the weak one holds
    return set_system(1, [[[], [1]], [[1], []]])


@pytest.fixture
def balanced_pairs() -> SetSystem:
    # one element of each block on either side
    return set_system(
        4,
        [[[1, 3], [2, 4]], [[1, 4], [2, 3]], [[2, 3], [1, 4]], [[2, 4], [1, 3]]],
        partition=[[1, 2], [3, 4]],
    )


@pytest.fixture
def empty_triple_q3() -> SubspaceSystem:
    zero = Subspace.zero(3)
    return SubspaceSystem(3, RATIONALS, 3, ((zero, zero, zero),))


@pytest.fixture
def invoke():
    runner = CliRunner()

    def run(*args, input=None):
        return runner.invoke(cli, [str(arg) for arg in args], input=input)

    return run


@pytest.fixture
def report():
    def load(result):
        return yaml.safe_load(result.stdout)

    return load
