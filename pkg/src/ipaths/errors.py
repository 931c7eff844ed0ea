"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class IPathsError(Exception):
    """Base class for all package errors."""


class ValidationError(IPathsError):
    """An object does not satisfy the invariants it claims."""


class InvalidPathError(ValidationError):
    def __init__(self, position: int, reason: str, path_index: int | None = None):
        self.position = position
        self.reason = reason
        self.path_index = path_index
        where = f"position {position}"
        if path_index is not None:
            where = f"path {path_index}, {where}"
        super().__init__(f"invalid path at {where}: {reason}")


class DisjointnessError(ValidationError):
    def __init__(self, edge_id: int):
        self.edge_id = edge_id
        super().__init__(f"edge {edge_id} is used by more than one path")


class MissingEdgesError(ValidationError):
    def __init__(self, edge_ids):
        self.edge_ids = tuple(sorted(edge_ids))
        shown = " ".join(map(str, self.edge_ids))
        super().__init__(f"partition does not cover edges: {shown}")


class CycleError(ValidationError):
    """The graph has a directed cycle; ``cycle`` is an edge-id certificate."""

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("graph contains a directed cycle through edges " + " ".join(map(str, self.cycle)))


class SignatureError(ValidationError):
    pass


class ParseError(IPathsError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class TriviallySatisfiableError(IPathsError):
    """Every clause of the formula was a tautology."""


class MalformedWitnessError(IPathsError):
    """A witness does not have the shape the backward translation requires."""


class UnsatisfyingAssignmentError(ValidationError):
    def __init__(self, clause_index: int):
        self.clause_index = clause_index
        super().__init__(f"assignment falsifies clause {clause_index}")


class NotACoverError(ValidationError):
    def __init__(self, element: int):
        self.element = element
        super().__init__(f"element {element} is not covered")


class OracleLimitError(IPathsError):
    """A brute-force oracle was asked to go beyond its hard size limit."""


class InternalConsistencyError(IPathsError):
    """A translated witness failed its own source-problem check."""
