"""
Error hierarchy shared by the library and the CLI.

Each class carries the process exit code the CLI returns for it.
"""
from typing import Optional


class CayleyAutError(Exception):
    """Base class for all cayleyaut errors"""

    exit_code = 1


class ValidationError(CayleyAutError, ValueError):
    """Input violates a documented invariant"""

    exit_code = 2

    def __init__(self, message: str, invariant: Optional[str] = None):
        super().__init__(message)
        self.invariant = invariant


class DimensionError(ValidationError):
    """Residue tuple length does not match the group"""

    def __init__(self, expected: int, actual: int):
        super().__init__(
            f"expected a residue tuple of length {expected}, got {actual}",
            invariant='dimension',
        )
        self.expected = expected
        self.actual = actual


class ArgumentError(ValidationError):
    """Parameter outside its documented range"""


class PreconditionError(ValidationError):
    """Operation called on inputs that do not meet its precondition"""


class SpecFileError(ValidationError):
    """Malformed graph specification file"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message, invariant='spec_file')
        self.line = line
        self.column = column


class ResourceError(CayleyAutError):
    """A configured cap was exceeded"""

    exit_code = 3

    def __init__(self, cap: str, limit: int, actual: int):
        super().__init__(f"{cap} cap exceeded: {actual} > {limit}")
        self.cap = cap
        self.limit = limit
        self.actual = actual


class InternalInconsistencyError(CayleyAutError):
    """A provably-true relation failed; indicates a bug, not a finding"""


class CorpusMismatch(CayleyAutError):
    """One or more corpus entries disagreed with their expected verdict"""

    def __init__(self, failures):
        super().__init__(f"{len(failures)} corpus entries mismatched: {', '.join(failures)}")
        self.failures = list(failures)
