"""Exception hierarchy.

Each subclass carries the process exit code the CLI maps it to.
"""


class QPolyError(Exception):
    exit_code = 1


class ParseError(QPolyError, ValueError):
    exit_code = 1


class BoundsError(QPolyError, ValueError):
    exit_code = 2


class InconsistencyError(QPolyError, ValueError):
    exit_code = 3


class DivisibilityError(InconsistencyError, ArithmeticError):
    """A monomial division that should have been exact left a remainder."""


class InvalidDecompositionError(InconsistencyError):
    pass
