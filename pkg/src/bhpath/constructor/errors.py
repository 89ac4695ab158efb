"""Errors raised by the recursive constructor."""
from __future__ import annotations

from typing import Any


class ConstructionError(RuntimeError):
    """Base class for constructor errors."""


class ConstructionFailure(ConstructionError):
    """A splice could not be completed; ``context`` carries the state needed to debug it."""

    def __init__(self, message: str, context: dict[str, Any] | None = None):
        super().__init__(message)
        self.context = dict(context or {})


class NoCandidate(ConstructionFailure):
    """A lemma's counting argument promised a candidate and none was found."""


class UnsupportedCase(ConstructionError):
    """The instance falls in a case the constructor does not implement."""


class NoAdmissibleDimension(UnsupportedCase):
    """Only dimension 0 satisfies the partition rules."""


class Infeasible(ConstructionError):
    """The oracle proved that no hamiltonian path exists (only possible below n = 2)."""
