from typing import Any, Sequence

import yaml
from pydantic import BaseModel, ValidationError

from bollobas.exceptions import BollobasError, DocumentError
from bollobas.models.scalars import Field, format_scalar
from bollobas.models.subspace import Decomposition, Subspace, canonicalize
from bollobas.models.system import SetSystem, SubspaceSystem, System, members
from bollobas.schemas.system_schema import SystemDocument


def _locate(text: str, path: Sequence[Any]) -> tuple[int | None, int | None]:
    """1-based line and column of the node at ``path``, or of its deepest existing ancestor."""
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError:
        return None, None
    if node is None:
        return None, None
    for step in path:
        child = None
        if isinstance(node, yaml.MappingNode):
            child = next((value for key, value in node.value if key.value == str(step)), None)
        elif isinstance(node, yaml.SequenceNode) and isinstance(step, int) and step < len(node.value):
            child = node.value[step]
        if child is None:
            break
        node = child
    return node.start_mark.line + 1, node.start_mark.column + 1


def _fail(text: str, detail: str, path: Sequence[Any]) -> DocumentError:
    line, column = _locate(text, path)
    return DocumentError(detail, line=line, column=column, path=".".join(str(step) for step in path) or None)


def _set_system(text: str, document: SystemDocument) -> SetSystem:
    n = document.n
    if document.decomposition is not None:
        raise _fail(text, "set documents take a partition, not a decomposition", ["decomposition"])
    if document.field is not None:
        raise _fail(text, "set documents have no field", ["field"])
    tuples = []
    for i, entry in enumerate(document.tuples):
        parts = []
        for ell, part in enumerate(entry):
            mask = 0
            for q, p in enumerate(part):
                if not isinstance(p, int) or not 1 <= p <= n:
                    raise _fail(text, f"element {p!r} outside 1..{n}", ["tuples", i, ell, q])
                mask |= 1 << (p - 1)
            parts.append(mask)
        tuples.append(tuple(parts))
    d = document.d or (len(tuples[0]) if tuples else 2)
    partition = None
    if document.partition is not None:
        blocks = []
        for k, block in enumerate(document.partition):
            mask = 0
            for q, p in enumerate(block):
                if not 1 <= p <= n:
                    raise _fail(text, f"element {p} outside 1..{n}", ["partition", k, q])
                mask |= 1 << (p - 1)
            blocks.append(mask)
        partition = tuple(blocks)
    try:
        return SetSystem(n, d, tuple(tuples), partition)
    except BollobasError as exc:
        path = ["partition"] if "partition" in exc.detail else ["tuples"]
        raise _fail(text, exc.detail, path)


def _rows(text: str, rows: Any, n: int, field: Field, path: list) -> Subspace:
    parsed = []
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise _fail(text, f"row must have {n} entries", path + [r])
        try:
            parsed.append([field.parse(entry) for entry in row])
        except BollobasError as exc:
            raise _fail(text, exc.detail, path + [r])
    return canonicalize(parsed, n, field)


def _subspace_system(text: str, document: SystemDocument) -> SubspaceSystem:
    n = document.n
    if document.partition is not None:
        raise _fail(text, "subspace documents take a decomposition, not a partition", ["partition"])
    try:
        field = Field.from_label(document.field)
    except BollobasError as exc:
        raise _fail(text, exc.detail, ["field"])
    tuples = tuple(
        tuple(_rows(text, part, n, field, ["tuples", i, ell]) for ell, part in enumerate(entry))
        for i, entry in enumerate(document.tuples)
    )
    d = document.d or (len(tuples[0]) if tuples else 2)
    decomposition = None
    if document.decomposition is not None:
        blocks = tuple(_rows(text, block, n, field, ["decomposition", k]) for k, block in enumerate(document.decomposition))
        try:
            decomposition = Decomposition(n, blocks)
        except BollobasError as exc:
            raise _fail(text, exc.detail, ["decomposition"])
    try:
        return SubspaceSystem(n, field, d, tuples, decomposition)
    except BollobasError as exc:
        raise _fail(text, exc.detail, ["tuples"])


def parse(text: str) -> System:
    """Load a system document (YAML or JSON) into a validated system."""
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        problem = getattr(exc, "problem", None) or str(exc)
        if mark is None:
            raise DocumentError(f"invalid document: {problem}")
        raise DocumentError(f"invalid document: {problem}", line=mark.line + 1, column=mark.column + 1)
    if not isinstance(data, dict):
        raise DocumentError("a system document must be a mapping", line=1, column=1)
    try:
        document = SystemDocument.model_validate(data)
    except ValidationError as exc:
        error = exc.errors()[0]
        raise _fail(text, error["msg"], list(error["loc"]))
    if document.kind == "set":
        return _set_system(text, document)
    return _subspace_system(text, document)


def to_document(system: System) -> SystemDocument:
    if isinstance(system, SetSystem):
        return SystemDocument(
            kind="set",
            n=system.n,
            d=system.d,
            tuples=system.as_lists(),
            partition=None if system.partition is None else [members(block) for block in system.partition],
        )

    def rows(space: Subspace) -> list[list[str]]:
        return [[format_scalar(entry) for entry in row] for row in space.basis]

    return SystemDocument(
        kind="subspace",
        n=system.n,
        d=system.d,
        field=system.field.label,
        tuples=[[rows(part) for part in entry] for entry in system.tuples],
        decomposition=None if system.decomposition is None else [rows(block) for block in system.decomposition.blocks],
    )


def dump(model: BaseModel) -> str:
    return yaml.safe_dump(model.model_dump(exclude_none=True), sort_keys=False, allow_unicode=True)


def serialize(system: System) -> str:
    """Canonical document text; ``parse(serialize(system)) == system``."""
    return dump(to_document(system))
