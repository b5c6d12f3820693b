"""Exception types shared across the package."""


class RigError(Exception):
    """Base class for every error raised by ``twomedia``."""


class ValidationError(RigError, ValueError):
    """A value violates a physical or structural invariant."""


class DomainError(RigError, ValueError):
    """A model is evaluated outside its range of validity."""


class DegenerateInstrument(DomainError):
    """The instrument has no first-order signal (equal permittivities)."""


class InsufficientData(RigError, ValueError):
    pass


class NonConvergence(RigError, RuntimeError):
    pass


class DegenerateTable(RigError, ValueError):
    pass


class SchemaError(RigError, ValueError):
    """A CSV file does not match the expected header."""


class ParseError(RigError, ValueError):
    """Malformed configuration text.

    Carries the 1-based ``line`` and ``column`` of the offending token.
    """

    def __init__(self, message, line, column=1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
