"""Exception hierarchy shared by the library, the verifiers and the CLI."""


class OpHolderError(Exception):
    """Base class for every error raised by opholder."""


class DimensionError(OpHolderError, ValueError):
    """Shapes or sequence lengths that do not fit together."""


class InvalidInputError(OpHolderError, ValueError):
    """Non-finite entries or otherwise malformed numeric input."""


class DomainError(OpHolderError, ValueError):
    """Argument outside the mathematical domain of an operation.

    ``witness`` carries the offending value (a minimum eigenvalue, an
    exponent, ...) when there is one.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(OpHolderError, ValueError):
    """A verifier was handed an instance outside its hypotheses."""


class FixtureError(OpHolderError, ValueError):
    """Malformed JSON input; ``location`` points at the bad node."""

    def __init__(self, message, location=""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
