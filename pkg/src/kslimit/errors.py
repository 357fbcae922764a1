"""Exception types raised by kslimit."""


class DomainError(ValueError):
    """Argument lies outside the domain of the function."""


class InvalidPairError(DomainError):
    """The SF/CDF probabilities passed together do not sum to one."""
