"""Exception hierarchy shared by the library and the command-line tool."""


class MiniMaxError(Exception):
    """Base class for every error raised by this package."""


class DomainError(MiniMaxError, ValueError):
    """A price (or other input value) lies outside the indicator's domain."""


class UsageError(MiniMaxError, ValueError):
    """An argument violates an operation's preconditions."""


class DegenerateInputError(MiniMaxError, ValueError):
    """Transition probabilities are undefined because both tunneling weights vanish."""


class NotReadyError(MiniMaxError, RuntimeError):
    """A streaming evaluator was queried before its window filled up."""


class OracleRangeError(MiniMaxError, ArithmeticError):
    """The linear-domain reference product overflowed or underflowed."""


class ConfigError(MiniMaxError, ValueError):
    """Bad input/output configuration (missing column, bad precision, ...)."""


class DataError(MiniMaxError, ValueError):
    """Malformed or invalid rows in ingested data."""
