"""Structured axiom reports returned by the various ``verify_*`` helpers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class AxiomCheck:
    axiom: str
    passed: bool
    witness: tuple[Any, ...] | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "axiom": self.axiom,
            "pass": self.passed,
            "witness": None if self.witness is None else list(self.witness),
        }


@dataclass(frozen=True)
class AxiomReport:
    """Ordered collection of axiom checks plus free-form notes.

    A report never raises; failures are entries whose ``passed`` is False and
    whose ``witness`` names the first offending arguments found.
    """

    subject: str
    checks: tuple[AxiomCheck, ...]
    notes: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[AxiomCheck]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, axiom: str) -> AxiomCheck:
        for c in self.checks:
            if c.axiom == axiom:
                return c
        raise KeyError(axiom)

    def __contains__(self, axiom: object) -> bool:
        return any(c.axiom == axiom for c in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "pass": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
        }
