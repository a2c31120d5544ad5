from typing import Literal, Union

from pydantic import BaseModel, ConfigDict, Field

Scalar = Union[int, str]


class SystemDocument(BaseModel):
    # Sets list their elements; subspaces list basis rows of scalar strings
    model_config = ConfigDict(extra="forbid")

    kind: Literal["set", "subspace"]
    n: int = Field(ge=0)
    d: int | None = Field(default=None, ge=1)
    field: str | int | None = None
    tuples: list[list[list[Union[int, list[Scalar]]]]] = Field(default_factory=list)
    partition: list[list[int]] | None = None
    decomposition: list[list[list[Scalar]]] | None = None
