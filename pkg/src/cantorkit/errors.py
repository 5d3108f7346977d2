"""Exception types shared across the toolkit."""


class CantorKitError(Exception):
    """Base class for all toolkit errors."""


class SetFileError(CantorKitError):
    """A set/gauge/matrix description file is malformed.

    The message names the offending field and the reason.
    """


class EmptyBridgeError(CantorKitError):
    """A bridge request produced a zero-length interval.

    Happens only when a gap boundary point coincides with a hull endpoint;
    unreachable for the presentation families this package constructs, but
    flagged distinctly rather than returning a degenerate record.
    """


class DegenerateProjectionError(CantorKitError):
    """A projected iterated function system collapses to a single point."""


class CertificationError(CantorKitError):
    """A certificate cannot be issued (thickness not exact, bound violated)."""


class GaugeDomainError(CantorKitError):
    """A gauge function was evaluated or inverted outside its domain/range."""
