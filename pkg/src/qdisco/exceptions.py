"""Exception types raised by the solvers and loaders."""


class QDiscoError(Exception):
    """Base class for all errors raised by this package."""


class InputError(QDiscoError, ValueError):
    """Malformed or inconsistent input (dimensions, ids, empty subsets)."""


class InfeasibleThresholdError(QDiscoError):
    """No nonempty subset can reach the threshold (theta > max agreement)."""


class DegenerateAgreementsError(QDiscoError):
    """All agreement values are equal, so no positive gap exists."""


class InstanceTooLargeError(QDiscoError):
    """Exhaustive search refused because the graph exceeds the size limit."""
