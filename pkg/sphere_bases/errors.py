from __future__ import annotations

from typing import Any


class SphereBasesError(Exception):
    pass


class ConfigError(SphereBasesError):
    pass


class CellParseError(SphereBasesError, ValueError):
    def __init__(self, text: str, position: int, reason: str) -> None:
        self.text = text
        self.position = position
        self.reason = reason
        super().__init__(f"cannot parse {text!r} at position {position}: {reason}")


class DomainError(SphereBasesError, ValueError):
    pass


class NotACycleError(DomainError):
    """Raised for a chain whose boundary is non-empty; ``face`` is an odd-degree face."""

    def __init__(self, face: Any) -> None:
        self.face = face
        super().__init__(f"chain is not a cycle: face {face} lies in an odd number of cells")


class SizeGuardError(SphereBasesError):
    def __init__(self, what: str, value: int, bound: int) -> None:
        self.what = what
        self.value = value
        self.bound = bound
        super().__init__(f"refused: {what}={value} exceeds the configured bound {bound}")


class ConsistencyError(SphereBasesError):
    pass
