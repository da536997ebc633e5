import logging
import re
from functools import lru_cache

from prodint.errors import ConfigurationError
from prodint.groups.base import CHARTS
from prodint.groups.matrix import (
    GeneralLinear,
    Heisenberg3,
    SpecialEuclidean3,
    SpecialOrthogonal3,
    UpperTriangular3,
)
from prodint.groups.sequence import AbelianGroup, DiagonalOperatorGroup
from prodint.utils import Config

__all__ = ["get_group", "list_groups", "GROUP_TEMPLATES"]

logger = logging.getLogger(__name__)

_MATRIX_GROUPS = {
    "so3": SpecialOrthogonal3,
    "se3": SpecialEuclidean3,
    "heis3": Heisenberg3,
    "ut3": UpperTriangular3,
    "gl1": lambda chart: GeneralLinear(1, chart),
    "gl2": lambda chart: GeneralLinear(2, chart),
    "gl3": lambda chart: GeneralLinear(3, chart),
    "gl4": lambda chart: GeneralLinear(4, chart),
}

_SEQUENCE_GROUPS = {
    "abelian": AbelianGroup,
    "diagop": DiagonalOperatorGroup,
}

GROUP_TEMPLATES = sorted(list(_MATRIX_GROUPS) + [f"{name}:D" for name in _SEQUENCE_GROUPS])

_ID_PATTERN = re.compile(r"^(?P<base>[a-z]+[0-9]*)(?::(?P<size>[1-9][0-9]*))?(?:@(?P<chart>[a-z]+))?$")


@lru_cache(maxsize=None)
def get_group(group_id: str):
    """
    Resolve a registry id into its group.

    Parameters
    ----------
    group_id : str
        ``"so3"``, ``"se3"``, ``"gl1"``..``"gl4"``, ``"heis3"``, ``"ut3"``,
        ``"abelian:D"`` or ``"diagop:D"`` (a bare ``"abelian"`` uses the default
        truncation length 16). Matrix groups accept the suffix
        ``"@cayley"`` (or ``"@exponential"``) to select the chart.

    Returns
    -------
    Group
        A cached instance; equal ids give the same object.

    Raises
    ------
    ConfigurationError
        If the id names no registered group.
    """
    match = _ID_PATTERN.match(group_id or "")
    if match is None:
        raise ConfigurationError(f"unknown group {group_id!r}", key=group_id)
    base, size, chart = match.group("base"), match.group("size"), match.group("chart")
    if base in _MATRIX_GROUPS and size is None:
        chart = chart or "exponential"
        if chart not in CHARTS:
            raise ConfigurationError(f"unknown chart {chart!r} in group id {group_id!r}", key=group_id)
        group = _MATRIX_GROUPS[base](chart)
    elif base in _SEQUENCE_GROUPS and chart is None:
        group = _SEQUENCE_GROUPS[base](int(size) if size else Config.get("truncation"))
    else:
        raise ConfigurationError(f"unknown group {group_id!r}", key=group_id)
    if group.group_id != group_id:
        # normalise aliases such as "so3@exponential" onto the canonical instance
        return get_group(group.group_id)
    logger.debug("registered group %s on %s", group.group_id, group.space_id)
    return group


def list_groups():
    """Registered group id templates, alphabetical."""
    return list(GROUP_TEMPLATES)
