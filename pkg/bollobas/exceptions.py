class BollobasError(Exception):
    """Base error for every failure the toolkit reports.

    Carries a human readable ``detail`` and the process ``exit_code`` the CLI
    exits with.
    """

    exit_code: int = 2

    def __init__(self, detail: str, *, exit_code: int | None = None) -> None:
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class DocumentError(BollobasError):
    """Syntax or semantic error in a system document."""

    def __init__(
        self,
        detail: str,
        *,
        line: int | None = None,
        column: int | None = None,
        path: str | None = None,
    ) -> None:
        super().__init__(detail)
        self.line = line
        self.column = column
        self.path = path

    def __str__(self) -> str:
        where = []
        if self.line is not None:
            where.append(f"line {self.line}, column {self.column}")
        if self.path:
            where.append(f"at {self.path}")
        if where:
            return f"{self.detail} ({'; '.join(where)})"
        return self.detail


class ShapeError(BollobasError):
    """Arity, ambient dimension, field or context mismatch."""


class PreconditionError(BollobasError):
    """An operation was called outside its documented precondition."""


class LicensingError(BollobasError):
    """An inequality was requested without the condition that licenses it."""

    exit_code = 1


class SaturationError(BollobasError):
    """A proof invariant broke during fill-up or certification."""

    exit_code = 1


class GuardError(BollobasError):
    """Exhaustive enumeration or construction exceeds the configured guard."""
