import json
import textwrap

import pytest
import yaml

from bollobas.exceptions import DocumentError
from bollobas.models.scalars import Field
from bollobas.models.subspace import Subspace
from bollobas.models.system import SetSystem, SubspaceSystem, embed
from bollobas.services.construction_service import full_tuza_tuples
from bollobas.services.document_service import parse, serialize, to_document


def _doc(text: str) -> str:
    return textwrap.dedent(text).lstrip()


def test_parse_set_document():
    system = parse(
        _doc(
            """
            kind: set
            n: 4
            tuples:
              - [[1, 2], [3]]
              - [[3], [1, 4]]
            partition: [[1, 2], [3, 4]]
            """
        )
    )
    assert isinstance(system, SetSystem)
    assert system.d == 2
    assert system.as_lists() == [[[1, 2], [3]], [[3], [1, 4]]]
    assert system.partition == (0b0011, 0b1100)


def test_parse_subspace_document_canonicalizes():
    system = parse(
        _doc(
            """
            kind: subspace
            n: 2
            field: GF(3)
            tuples:
              - [[[2, 1]], []]
            """
        )
    )
    assert isinstance(system, SubspaceSystem)
    assert system.field == Field(3)
    assert system.tuples[0][0] == Subspace.span([[1, 2]], 2, Field(3))
    assert "1 mod 3" in serialize(system)


def test_json_is_accepted():
    text = json.dumps({"kind": "set", "n": 2, "d": 3, "tuples": [[[1], [], [2]]]})
    assert parse(text).tuples == ((0b01, 0, 0b10),)


@pytest.mark.parametrize(
    "system",
    [
        full_tuza_tuples(2, 3),
        SetSystem(3, 2, (), (0b001, 0b110)),
        embed(SetSystem.from_lists(3, [[[1], [2, 3]]], partition=[[1], [2, 3]])),
        SubspaceSystem(2, Field(5), 2, ((Subspace.span([[1, 4]], 2, Field(5)), Subspace.zero(2, Field(5))),)),
    ],
)
def test_serialize_then_parse(system):
    assert parse(serialize(system)) == system


def test_rationals_render_as_exact_strings():
    system = SubspaceSystem(2, Field(), 2, ((Subspace.span([[2, 1]], 2), Subspace.zero(2)),))
    document = to_document(system)
    assert document.tuples[0][0] == [["1", "1/2"]]
    assert document.field == "rationals"


def test_element_out_of_range_is_located():
    text = _doc(
        """
        kind: set
        n: 2
        tuples:
          - [[1], [3]]
        """
    )
    with pytest.raises(DocumentError) as excinfo:
        parse(text)
    error = excinfo.value
    assert error.path == "tuples.0.1.0"
    assert error.line == 4
    assert "line 4" in str(error)


def test_syntax_error_has_a_position():
    with pytest.raises(DocumentError) as excinfo:
        parse("kind: set\nn: [1, 2\n")
    assert excinfo.value.line is not None


@pytest.mark.parametrize(
    "text, path",
    [
        ("kind: set\nn: 2\nbogus: 1\n", "bogus"),
        ("kind: sets\nn: 2\n", "kind"),
        ("kind: set\nn: -1\n", "n"),
        ("kind: set\nn: 2\nfield: GF(2)\n", "field"),
        ("kind: set\nn: 2\npartition: [[1], [1, 2]]\n", "partition"),
        ("kind: subspace\nn: 2\nfield: GF(4)\n", "field"),
        ("kind: subspace\nn: 2\ntuples:\n  - [[[1]], []]\n", "tuples.0.0.0"),
        ("kind: subspace\nn: 2\npartition: [[1], [2]]\n", "partition"),
        ("kind: subspace\nn: 2\ndecomposition: [[[1, 0]], [[2, 0]]]\n", "decomposition"),
    ],
)
def test_semantic_errors_carry_a_path(text, path):
    with pytest.raises(DocumentError) as excinfo:
        parse(text)
    assert excinfo.value.path == path


def test_document_must_be_a_mapping():
    with pytest.raises(DocumentError):
        parse("- 1\n- 2\n")


def test_serialized_documents_are_plain_yaml():
    data = yaml.safe_load(serialize(full_tuza_tuples(1, 2)))
    assert data == {"kind": "set", "n": 1, "d": 2, "tuples": [[[1], []], [[], [1]]]}
