"""Exception hierarchy.

Every error carries an optional ``witness`` (masks, triples, reports) and an
``exit_code`` used by the command line front end: 2 for malformed input,
1 for a property or axiom failure that comes with a certificate.
"""


class HEUError(ValueError):
    exit_code = 1

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InputError(HEUError):
    exit_code = 2


class DimensionMismatch(InputError):
    pass


class SpaceMismatch(InputError):
    pass


class BadAlpha(InputError):
    pass


class MissingEntry(InputError):
    pass


class TooLarge(InputError):
    pass


class BadParameters(InputError):
    pass


class BadDimensions(BadParameters):
    pass


class MalformedDocument(InputError):
    pass


class CapacityError(HEUError):
    pass


class NotGrounded(CapacityError):
    pass


class NotNormalized(CapacityError):
    pass


class NotMonotone(CapacityError):
    pass


class BadGenerators(HEUError):
    pass


class NotWeaklyCoherent(HEUError):
    pass


class NotCoherent(HEUError):
    pass


class Infeasible(HEUError):
    pass


class AxiomViolation(HEUError):
    """Raised with the offending axiom name and its report as witness."""

    def __init__(self, message, witness=None, axiom=None):
        super().__init__(message, witness)
        self.axiom = axiom


class PrerequisiteFailed(HEUError):
    pass


class ExtensionInfeasible(HEUError):
    pass


class HeucondViolation(HEUError):
    pass


class NullConditioningEvent(HEUError):
    pass


class TheoremViolation(HEUError):
    """A proved equivalence failed to hold; always an implementation bug."""
