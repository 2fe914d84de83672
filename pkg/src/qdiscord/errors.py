"""Exception types raised by the library."""


class QDiscordError(Exception):
    """Base class for all library errors."""


class InvalidArgumentError(QDiscordError, ValueError):
    """Argument has the wrong shape, range, or symmetry."""


class NotAStateError(QDiscordError, ValueError):
    """Operator is not a valid density matrix (trace, or a negative eigenvalue)."""


class BellShapeError(QDiscordError, ValueError):
    """Density matrix has Pauli components outside the Bell-diagonal class."""


class UnsupportedStateError(QDiscordError, ValueError):
    """Operation requires maximally mixed marginals and the input lacks them."""
