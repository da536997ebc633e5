class ProdintError(Exception):
    """Base class for every error raised by prodint."""


class ConfigurationError(ProdintError, ValueError):
    """
    Invalid configuration: unknown registry key, mismatched spaces or malformed config.

    Parameters
    ----------
    message : str
        Human readable description.
    key : str, optional
        The offending configuration key or registry id.
    """

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


class GroupMismatchError(ConfigurationError):
    """Operands belong to different groups."""


class DomainError(ProdintError, ValueError):
    """An interval, time or parameter lies outside the admissible domain."""


class ContractError(ProdintError, TypeError):
    """An object lacks a capability the operation requires (e.g. δ of a C⁰ curve)."""


class OutOfChartDomain(ProdintError, ArithmeticError):
    """
    A group element left the chart domain around the identity.

    Callers are expected to shrink steps; experiment runners record this as data.

    Parameters
    ----------
    distance : float
        Measured distance of the element from the identity in the designated norm.
    radius : float
        Chart radius of the group.
    """

    def __init__(self, distance, radius, group_id=None):
        super().__init__(
            f"element at distance {distance:.6g} from identity is outside the chart "
            f"domain (radius {radius:.6g}) of group {group_id!r}"
        )
        self.distance = distance
        self.radius = radius
        self.group_id = group_id
