"""Exception types raised by fxtalign."""


class InvalidGridError(ValueError):
    """Grid parameters (sample rate, length, period) are inconsistent."""


class InvalidInputError(ValueError):
    """A signal, spectrum or argument does not satisfy an operation's precondition."""


class GridInexactError(ValueError):
    """The period is not an integral number of samples."""


class AliasingError(ValueError):
    """Requested harmonics exceed the Nyquist bound."""


class OverlapError(ValueError):
    """A one-period shape is longer than the period."""


class OutOfRangeError(ValueError):
    pass


class NonRealSignalError(ValueError):
    """An inverse transform left an imaginary part above tolerance."""


class InvalidCandidateError(ValueError):
    """A candidate period does not fit the record."""


class DataError(Exception):
    """An input file is unreadable or malformed, or an output file cannot be written."""
