"""Exception hierarchy shared by every module of the package."""


class DerivaError(Exception):
    """Base class for all library errors."""


class CompositeCharacteristic(DerivaError, ValueError):
    pass


class DivisionByZero(DerivaError, ZeroDivisionError):
    pass


class FieldMismatch(DerivaError, ValueError):
    pass


class GroupMismatch(DerivaError, ValueError):
    pass


class ParameterTooSmall(DerivaError, ValueError):
    pass


class NotAGroup(DerivaError, ValueError):
    """Raised when a Cayley table violates a group axiom.

    ``axiom`` names the violated axiom and ``witness`` holds the offending
    element indices (a triple for associativity).
    """

    def __init__(self, axiom, witness=None, message=None):
        self.axiom = axiom
        self.witness = witness
        super().__init__(message or f"not a group: {axiom} fails at {witness}")


class RelatorViolation(DerivaError, ValueError):
    pass


class EmptySubgroup(DerivaError, ValueError):
    pass


class NotContained(DerivaError, ValueError):
    pass


class RaggedInput(DerivaError, ValueError):
    pass


class NoRelators(DerivaError, ValueError):
    pass


class NotADerivation(DerivaError, ValueError):
    pass


class CharTwoUnsupported(DerivaError, ValueError):
    pass


class UnsupportedTag(DerivaError, ValueError):
    pass


class MalformedInput(DerivaError, ValueError):
    """An input file could not be parsed into the expected structure."""
