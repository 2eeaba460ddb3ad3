"""Exception types shared across the package.

Each error maps onto one API error code (see api.ERROR_CODES) so the HTTP
layer can translate without isinstance ladders in every handler.
"""


class HappierError(Exception):
    """Base class for all domain errors."""


class InvalidInput(HappierError):
    pass


class EmptyStructure(InvalidInput):
    """A structure file contained no atom records."""


class MalformedRecord(InvalidInput):
    def __init__(self, line_no: int, message: str = ""):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}" if message else f"line {line_no}")


class CountsMismatch(InvalidInput):
    """Declared atom/bond counts disagree with the actual block lengths."""


class MissingColumns(InvalidInput):
    def __init__(self, file_label: str, columns: list[str]):
        self.file_label = file_label
        self.columns = columns
        super().__init__(f"{file_label}: missing column(s) {', '.join(columns)}")


class ScoreOutOfRange(InvalidInput):
    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        super().__init__(message if line_no is None else f"line {line_no}: {message}")


class AffinityOutOfRange(InvalidInput):
    pass


class UnknownProtein(HappierError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown protein: {name!r}")


class NoNeighbors(HappierError):
    def __init__(self, center: str):
        self.center = center
        super().__init__(f"no interactions recorded for {center!r}")


class EmptyTranscript(InvalidInput):
    pass


class ProviderError(HappierError):
    """Base for provider-side failures (network, contract violations)."""


class ProviderUnavailable(ProviderError):
    pass


class ProviderTimeout(ProviderError):
    """Batch deadline hit; carries what completed and what did not."""

    def __init__(self, message: str, pending: list[str] | None = None, partial: list | None = None):
        self.pending = pending or []
        self.partial = partial or []
        super().__init__(message)


class SessionNotFound(HappierError):
    def __init__(self, session_id: str):
        self.session_id = session_id
        super().__init__(f"unknown session: {session_id!r}")


class SnapshotError(HappierError):
    """Snapshot directory missing, unreadable, or failing the magic check."""
