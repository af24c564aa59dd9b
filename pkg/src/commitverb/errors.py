"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: UsageError exits 1,
everything else here (plus OSError) exits 2.
"""


class CommitVerbError(Exception):
    """Base class for errors raised by this package."""


class UsageError(CommitVerbError, ValueError):
    """Arguments violate an operation's contract (bad flag value, bad range)."""


class CorpusFormatError(CommitVerbError, ValueError):
    """A corpus or labeled file contains a malformed record."""

    def __init__(self, path, line: int, reason: str):
        self.path = path
        self.line = line
        self.reason = reason
        super().__init__(f"{path}:{line}: {reason}")


class ModelFormatError(CommitVerbError, ValueError):
    """A model file is corrupt, incomplete, or from an unsupported version."""

    def __init__(self, field: str, reason: str):
        self.field = field
        self.reason = reason
        super().__init__(f"model field {field!r}: {reason}")


class IngestError(CommitVerbError):
    """The repository to mine is missing or unreadable."""


class VcsUnavailableError(CommitVerbError):
    """The git executable could not be found on this system."""
