"""Exception hierarchy shared across the package.

Each CLI-visible failure mode maps to a fixed process exit code so that
batch drivers can dispatch on it.
"""


class FairCCError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class InvalidInputError(FairCCError):
    """Malformed in-memory arguments (length mismatches, bad ids, ...)."""

    exit_code = 1


class InfeasibleSpecError(FairCCError):
    """The fairness constraints cannot be met by any assignment."""

    exit_code = 2


class ParseError(FairCCError):
    """A file or CLI argument could not be parsed."""

    exit_code = 3


class OracleLimitError(FairCCError):
    """Instance exceeds the brute-force size limit."""

    exit_code = 4
