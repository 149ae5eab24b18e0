"""Exception hierarchy shared by all modules."""


class CocycleKitError(Exception):
    """Base class. Carries an optional ``witness`` describing the offending data."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ValidationError(CocycleKitError):
    """Input data does not satisfy a documented precondition."""


class InconsistencyError(CocycleKitError):
    """An identity that must hold failed. Indicates a bug, not bad input."""


class JacobiViolation(ValidationError):
    pass


class AntisymmetryViolation(ValidationError):
    pass


class NotADerivation(ValidationError):
    pass


class NotAHomomorphism(ValidationError):
    pass


class NotAModule(ValidationError):
    pass


class NotACocycle(ValidationError):
    pass


class NotInvariant(ValidationError):
    pass


class NotAutomorphism(ValidationError):
    pass


class KappaNotExact(ValidationError):
    pass


class CouplingViolated(ValidationError):
    pass


class NotClosed(ValidationError):
    pass


class NotEquivariant(ValidationError):
    pass


class NonCommutingAutomorphisms(ValidationError):
    pass


class OrderViolation(ValidationError):
    pass


class NotAutomorphismOnWindow(ValidationError):
    pass


class WindowTooSmall(ValidationError):
    pass


class NotHomogeneous(ValidationError):
    pass
