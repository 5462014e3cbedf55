"""Shared exception types."""

from __future__ import annotations


class AirpathError(Exception):
    """Base class for all airpath errors."""


class UnknownNode(AirpathError):
    def __init__(self, node_id: str):
        super().__init__(f"unknown node id: {node_id!r}")
        self.node_id = node_id


class UnknownZone(AirpathError):
    def __init__(self, zone_id: str):
        super().__init__(f"unknown zone id: {zone_id!r}")
        self.zone_id = zone_id


class UnknownFactor(AirpathError):
    def __init__(self, factor: str):
        super().__init__(f"unknown risk factor: {factor!r}")
        self.factor = factor


class NegativeCost(AirpathError):
    """The edge cost callback returned a negative (or NaN) value.

    This is a hard error rather than a clamp: a negative cost signals a
    broken cost model, and clamping would silently mask it.
    """


class HeuristicNegative(AirpathError):
    """The search heuristic returned a negative value."""


class GraphValidationError(AirpathError):
    def __init__(self, violations: list[str]):
        super().__init__(
            "invalid graph: " + "; ".join(violations[:5])
            + (f" (+{len(violations) - 5} more)" if len(violations) > 5 else "")
        )
        self.violations = violations


class InvalidParams(AirpathError):
    """Generator or bench parameters out of range."""


class ScenarioParseError(AirpathError):
    """Malformed scenario document (carries line/column when known)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(message + loc)
        self.line = line
        self.column = column


class ScenarioValidationError(AirpathError):
    """Well-formed document that violates data-model invariants."""

    def __init__(self, violations: list[str]):
        super().__init__(
            "invalid scenario: " + "; ".join(violations[:5])
            + (f" (+{len(violations) - 5} more)" if len(violations) > 5 else "")
        )
        self.violations = violations


class ProfileError(AirpathError):
    """Patient profile document is missing fields or has unknown enum values."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field
