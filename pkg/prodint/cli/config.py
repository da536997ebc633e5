"""Experiment configuration files: JSON trees parsed into :class:`ExperimentConfig`."""

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional

from prodint.curves.library import ALGEBRA_CURVES, GROUP_CURVES
from prodint.engine.evolution import StepperConfig
from prodint.errors import ConfigurationError
from prodint.groups.registry import get_group
from prodint.space.seminorms import Seminorm
from prodint.utils import Config

__all__ = ["ExperimentConfig", "KINDS", "GRID_KEYS", "load_config"]

KINDS = ("continuity", "convergence", "estimates", "identities", "trotter")

GRID_KEYS = (
    "tau_points",
    "ell",
    "m",
    "eps",
    "n_list",
    "power_n",
    "power_tau",
    "steps_list",
    "scales",
    "ladder",
    "search",
    "sample_radius",
    "samples",
    "max_factors",
    "curves",
    "elements",
    "samples_per_element",
    "scaling_s",
    "scaling_n",
    "levels",
    "L",
)

GATE_KEYS = ("max_slope", "monotone_slack", "min_order", "left_right", "max_residual")

_LIST_GRIDS = ("eps", "n_list", "power_n", "power_tau", "steps_list", "scales", "ladder", "levels")

# group curves drive the Trotter experiments, algebra curves everything else
_CURVE_TABLES = {
    "trotter": GROUP_CURVES,
    "convergence": GROUP_CURVES,
    "identities": ALGEBRA_CURVES,
    "continuity": ALGEBRA_CURVES,
    "estimates": ALGEBRA_CURVES,
}


def _unknown(data, allowed, where):
    extra = sorted(set(data) - set(allowed))
    if extra:
        raise ConfigurationError(f"unknown {where} key {extra[0]!r}", key=extra[0])


def _curve_entry(entry, kind, key):
    if not isinstance(entry, dict):
        raise ConfigurationError(f"{key} must be an object with a name", key=key)
    _unknown(entry, ("name", "params", "start", "end"), key)
    if "name" not in entry:
        raise ConfigurationError(f"{key} has no name", key=f"{key}.name")
    table = _CURVE_TABLES[kind]
    if entry["name"] not in table:
        raise ConfigurationError(
            f"unknown curve {entry['name']!r} for a {kind} experiment (known: {sorted(table)})", key=f"{key}.name"
        )
    out = {"name": entry["name"], "params": dict(entry.get("params", {})),
           "start": float(entry.get("start", 0.0)), "end": float(entry.get("end", 1.0))}
    if not out["start"] < out["end"]:
        raise ConfigurationError(f"{key} has an empty domain", key=f"{key}.end")
    return out


@dataclass
class ExperimentConfig:
    """
    One experiment run.

    Attributes
    ----------
    kind : str
        ``identities``, ``estimates``, ``trotter``, ``convergence`` or ``continuity``.
    group : str
        Group registry id.
    curve : dict
        ``name``, ``params``, ``start`` and ``end`` of the experiment curve.
    psi : dict, optional
        Second curve for identities a) and b).
    partition : list, optional
        Partition for identity c).
    seminorm : dict
        Keyword arguments of :class:`Seminorm` (without the space).
    stepper : dict
        Keyword arguments of :class:`StepperConfig`.
    output : str, optional
        Output directory.
    seed : int
        Sampling seed, echoed into every output.
    grids : dict
        Explicit grids; missing keys fall back to :meth:`Config.get_defaults`.
    gates : dict
        Opt-in pass criteria.
    """

    kind: str
    group: str
    curve: Optional[dict] = None
    psi: Optional[dict] = None
    partition: Optional[list] = None
    seminorm: dict = field(default_factory=dict)
    stepper: dict = field(default_factory=dict)
    output: Optional[str] = None
    seed: int = 0
    grids: dict = field(default_factory=dict)
    gates: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        """
        Validate a parsed config tree.

        Raises
        ------
        ConfigurationError
            Naming the offending key.
        """
        if not isinstance(data, dict):
            raise ConfigurationError("a config must be a JSON object")
        _unknown(data, [f.name for f in fields(cls)], "config")
        for key in ("kind", "group"):
            if key not in data:
                raise ConfigurationError(f"missing config key {key!r}", key=key)
        kind = data["kind"]
        if kind not in KINDS:
            raise ConfigurationError(f"unknown experiment kind {kind!r} (known: {list(KINDS)})", key="kind")
        try:
            group = get_group(data["group"])
        except ConfigurationError as err:
            raise ConfigurationError(f"group: {err}", key="group") from err

        if "curve" not in data and kind != "estimates":
            raise ConfigurationError(f"a {kind} experiment needs a curve", key="curve")
        curve = _curve_entry(data["curve"], kind, "curve") if "curve" in data else None
        psi = _curve_entry(data["psi"], kind, "psi") if data.get("psi") is not None else None

        seminorm = dict(data.get("seminorm", {}))
        _unknown(seminorm, ("kind", "scale", "weight_index", "ladder"), "seminorm")
        try:
            Seminorm(group.space_id, **seminorm)
        except ConfigurationError as err:
            raise ConfigurationError(f"seminorm: {err}", key="seminorm") from err

        stepper = dict(data.get("stepper", {}))
        StepperConfig.from_dict(stepper)

        grids = dict(data.get("grids", {}))
        _unknown(grids, GRID_KEYS, "grids")
        for key in _LIST_GRIDS:
            if key in grids and (not isinstance(grids[key], list) or not grids[key]):
                raise ConfigurationError(f"grid {key!r} must be a nonempty list", key=key)
        gates = dict(data.get("gates", {}))
        _unknown(gates, GATE_KEYS, "gates")

        seed = data.get("seed", Config.get("seed"))
        if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
            raise ConfigurationError(f"seed must be a nonnegative integer, got {seed!r}", key="seed")
        partition = data.get("partition")
        if partition is not None and (not isinstance(partition, list) or len(partition) < 2):
            raise ConfigurationError("partition must list at least two points", key="partition")

        return cls(kind, group.group_id, curve, psi, partition, seminorm, stepper,
                   data.get("output"), seed, grids, gates)

    def grid(self, key):
        """An explicit grid value, or the code-side default."""
        if key in self.grids:
            return self.grids[key]
        return Config.get(key)

    @property
    def stepper_config(self) -> StepperConfig:
        resolved = dict(Config.get("stepper"))
        resolved.update(self.stepper)
        return StepperConfig.from_dict(resolved)

    def make_seminorm(self, space_id) -> Seminorm:
        return Seminorm(space_id, **self.seminorm)

    def resolved(self) -> dict:
        """The config with every default filled in, as echoed into the manifest."""
        data = asdict(self)
        data["stepper"] = self.stepper_config.to_dict()
        return data


def load_config(path) -> ExperimentConfig:
    """
    Read and validate a JSON config file.

    Raises
    ------
    ConfigurationError
        If the file is unreadable, not JSON or invalid.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as err:
        raise ConfigurationError(f"cannot read config {path}: {err}", key=str(path)) from err
    except json.JSONDecodeError as err:
        raise ConfigurationError(f"{path} is not valid JSON: {err}", key=str(path)) from err
    return ExperimentConfig.from_dict(data)
