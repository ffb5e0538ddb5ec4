"""Exception hierarchy. Every error names the offending entry."""


class FlatCauchyError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(FlatCauchyError):
    pass


class MissingIdentity(ValidationError):
    pass


class NonAssociative(ValidationError):
    pass


class IllTypedComposite(ValidationError):
    pass


class MissingComposite(ValidationError):
    pass


class MalformedInput(ValidationError):
    """Structurally broken input: unknown ids, duplicate ids, wrong shapes."""


class NonFunctorial(ValidationError):
    pass


class NotNatural(ValidationError):
    pass


class UnknownObject(FlatCauchyError):
    pass


class BaseMismatch(FlatCauchyError):
    pass


class RingMismatch(FlatCauchyError):
    pass


class RingAxiomViolation(ValidationError):
    pass


class ModuleAxiomViolation(ValidationError):
    pass


class PreconditionViolated(FlatCauchyError):
    pass


class BoundTooSmall(FlatCauchyError):
    pass


class BudgetExceeded(FlatCauchyError):
    pass


class SweepBudgetExceeded(BudgetExceeded):
    pass


class UnknownSuite(FlatCauchyError):
    pass


class InvariantViolation(FlatCauchyError):
    """An internal consistency check failed; indicates a bug or corrupt input."""
