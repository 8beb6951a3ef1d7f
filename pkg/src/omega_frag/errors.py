"""Exception types shared across the package."""


class OmegaFragError(Exception):
    """Base class for all errors raised by omega_frag."""


class BudgetExceeded(OmegaFragError):
    """An enumeration or closure grew past its configured cap."""


class TailKindMismatch(OmegaFragError):
    """A finite-tail monomial was asked about an infinite word."""


class NotMember(OmegaFragError):
    """A word is not in a monomial that was required to contain it."""


class PreconditionViolated(OmegaFragError):
    pass


class MonoidError(OmegaFragError):
    """Invalid multiplication table, identity or order."""


class RegexSyntaxError(OmegaFragError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NullableOmega(RegexSyntaxError):
    """An omega or inf power was applied to an expression accepting the empty word."""


class DepthExceeded(OmegaFragError):
    pass
