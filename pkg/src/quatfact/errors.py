"""Exception taxonomy shared by the library and the CLI.

The CLI maps these onto distinct exit codes: domain errors (2), parse
errors (3), enumeration overflow (4).
"""


class QuatfactError(Exception):
    """Base class for all library errors."""


class DomainError(QuatfactError):
    """Input is well-formed but violates a mathematical precondition."""


class NotPrimeError(DomainError):
    pass


class MembershipError(DomainError):
    """Element lies outside the ring/order required by the operation."""


class UnitInputError(DomainError):
    """Operation is undefined on units (e.g. atom tests)."""


class NotCancellativeError(DomainError):
    """Element is a zero divisor."""


class HereditaryLevelError(DomainError):
    """Eichler level n <= 1; factorization routines refuse these levels."""


class DegenerateFormError(DomainError):
    """Ternary form has vanishing half-discriminant."""


class NormalizationRequiredError(DomainError):
    """Residue form is not in one of the supported normalized shapes."""


class NonLocalOrderError(DomainError):
    """Operation requires the order to be local."""


class IsotropyNotFoundError(DomainError):
    """Bounded isotropy search exhausted without finding a vector."""


class ExhaustiveSearchLimitError(DomainError):
    """Residue prime too large for the brute-force radical machinery."""


class ParseError(QuatfactError):
    """Malformed rational / matrix / form input."""


class EnumerationOverflowError(QuatfactError):
    """Factorization enumeration exceeded the configured count limit."""

    def __init__(self, limit: int):
        super().__init__(f"factorization count exceeds limit {limit}")
        self.limit = limit
