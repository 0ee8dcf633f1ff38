"""Exception hierarchy shared by the core modules and the CLI."""


class PrefcalcError(Exception):
    """Base class for every error raised by prefcalc."""


class DomainError(PrefcalcError, ValueError):
    """A truth value fell outside the unit interval."""


class UniverseMismatchError(PrefcalcError, ValueError):
    """Two operands were defined over different universes."""


class EmptyPropositionError(PrefcalcError, ValueError):
    """A bound was requested over a proposition with no worlds."""


class AxiomViolationError(PrefcalcError, ValueError):
    """An input relation does not satisfy the axioms an operation requires."""


class UniverseError(PrefcalcError, ValueError):
    """Invalid universe construction or formula evaluation."""
