"""Exception hierarchy. CLI exit codes hang off the base classes."""
from __future__ import annotations


class WakatiltError(Exception):
    exit_code = 1


class InvalidInput(WakatiltError):
    """Malformed algebra, module, or series. Exit code 3."""

    exit_code = 3


class InfiniteDimensional(InvalidInput):
    pass


class NonComposableRelation(InvalidInput):
    pass


class InvalidKupisch(InvalidInput):
    pass


class LengthExceedsKupisch(InvalidInput):
    pass


class NotSelfOrthogonal(InvalidInput):
    def __init__(self, message: str, degree: int | None = None):
        super().__init__(message)
        self.degree = degree


class UnsupportedAlgebra(WakatiltError):
    """The requested strategy cannot produce a complete list. Exit code 2."""

    exit_code = 2


class BandFound(UnsupportedAlgebra):
    pass


class NotStringAlgebra(UnsupportedAlgebra):
    pass


class RegistryIncomplete(UnsupportedAlgebra):
    pass


class DecompositionFailure(WakatiltError):
    pass


class Undecided(WakatiltError):
    pass


class DuplicateIsoClass(InvalidInput):
    pass


class CoverVerificationFailed(WakatiltError):
    pass


class TheoremViolation(WakatiltError):
    """A computed result contradicts a statement proved for representation-finite algebras."""

    exit_code = 1
