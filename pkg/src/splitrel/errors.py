"""Exception types shared across the package."""


class SplitRelError(Exception):
    """Base class for all domain errors raised by this package."""


class GraphBuildError(SplitRelError, ValueError):
    """Invalid graph construction input (loops, bad endpoints, bad counts)."""


class EdgeAbsentError(SplitRelError, KeyError):
    """An operation referenced an endpoint pair that is not present."""


class TerminalError(SplitRelError, ValueError):
    """Invalid or unusable terminal designation (s = t, out of range,
    or terminals in different components where connectivity is required)."""


class BasisError(SplitRelError, ValueError):
    """A polynomial is not expressible as a valid state-count expansion
    for the requested vertex/edge counts."""


class FamilyParameterError(SplitRelError, ValueError):
    """A graph-family constructor received parameters outside its range."""


class CeilingError(SplitRelError, RuntimeError):
    """A computation was refused because it exceeds a configured ceiling
    (oracle slot limit or enumeration size limit)."""


class GraphFormatError(SplitRelError, ValueError):
    """Malformed graph text object."""


class PolynomialFormatError(SplitRelError, ValueError):
    """Malformed polynomial text."""
