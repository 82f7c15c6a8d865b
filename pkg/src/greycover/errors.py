"""Exception types raised across the package."""

from __future__ import annotations

from dataclasses import dataclass


class GreyCoverError(Exception):
    """Base class for all package errors."""


@dataclass(frozen=True)
class Violation:
    kind: str
    vertex: int | None = None

    def __str__(self) -> str:
        return self.kind if self.vertex is None else f"{self.kind}({self.vertex})"


class TreeValidationError(GreyCoverError, ValueError):
    """A white-grey tree failed validation. ``violations`` lists every problem found."""

    def __init__(self, violations: list[Violation]):
        self.violations = list(violations)
        super().__init__("invalid white-grey tree: " + ", ".join(map(str, self.violations)))

    @property
    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


class TreeSyntaxError(GreyCoverError, ValueError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} at line {line}, column {column}")


class EdgeNotIncidentError(GreyCoverError, ValueError):
    pass


class NoEvenLeavesError(GreyCoverError, ValueError):
    pass


class NotBalancedError(GreyCoverError, ValueError):
    pass


class CoverError(GreyCoverError, ValueError):
    """A path system is not a valid colored cover.

    ``kind`` is one of ``UncoveredVertex``, ``NotAPath`` or ``UncoloredEndpoint``.
    """

    def __init__(self, kind: str, vertices: list[int]):
        self.kind = kind
        self.vertices = list(vertices)
        super().__init__(f"{kind}: {self.vertices}")


class OracleTooLarge(GreyCoverError, ValueError):
    pass


class InternalConstructionFailure(GreyCoverError, RuntimeError):
    """The cover builder produced something that failed post-validation."""
