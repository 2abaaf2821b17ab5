"""Exception hierarchy.

Every error raised for bad user input derives from ``InputError`` so the CLI
can map whole families to one exit status.
"""


class ThueError(Exception):
    """Base class for all errors raised by relthue."""


class InputError(ThueError, ValueError):
    pass


class NotMonic(InputError):
    pass


class DegreeTooSmall(InputError):
    pass


class NotAllRealDistinct(InputError):
    pass


class Reducible(InputError):
    pass


class DegreeUnsupported(InputError):
    pass


class NotSquarefree(InputError):
    pass


class OutOfRange(InputError):
    pass


class ParameterOutOfRange(InputError):
    pass


class EmptyGrid(InputError):
    pass


class IntervalsTooWide(ThueError):
    """A certified pairwise root distance could not be bounded away from zero."""


class BoxTooLarge(ThueError):
    pass
