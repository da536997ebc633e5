import os
from concurrent.futures import ThreadPoolExecutor

from prodint.errors import ConfigurationError

__all__ = ["Config", "parallel_map"]


class Config:
    """
    Process-wide settings shared by the library and the experiment runner.

    Attributes:
        _threads (int | None): Explicit worker cap. Defaults to None, in which
            case the environment variable ``PRODINT_THREADS`` is consulted.
    """

    _threads = None

    ENV_THREADS = "PRODINT_THREADS"

    _defaults = {
        "stepper": {"scheme": "midpoint", "steps_per_unit": 1024, "breakpoint_refinement": True},
        "tau_points": 41,
        "ell": 2.0,
        "eps": [1e-1, 1e-2, 1e-3],
        "power_n": [64],
        "power_tau": [0.5, 1.0],
        "n_list": [16, 32, 64, 128, 256, 512, 1024],
        "steps_list": [256, 512, 1024, 2048, 4096],
        "scales": [1.0, 1.25, 1.5, 2.0],
        "sample_radius": 0.5,
        "samples": 10000,
        "max_factors": 8,
        "curves": 100,
        "elements": 20,
        "samples_per_element": 100,
        "scaling_s": 0.5,
        "scaling_n": 4,
        "search": "scale",
        "ladder": [0, 1, 2, 3, 4],
        "seed": 0,
        "levels": [1, 2, 3, 4],
        "violation_rtol": 1e-10,
        "violation_atol": 1e-14,
        "truncation": 16,
    }

    @classmethod
    def set_threads(cls, threads: int):
        """
        Set the worker cap explicitly, overriding the environment.

        Parameters:
            threads (int): Maximum number of concurrent workers (>= 1).
        """
        cls._threads = cls._validate_threads(threads, "threads")

    @classmethod
    def get_threads(cls) -> int:
        """
        Retrieve the worker cap.

        Returns:
            int: The explicit cap if set, else ``PRODINT_THREADS``, else 1.

        Raises:
            ConfigurationError: If ``PRODINT_THREADS`` is not a positive integer.
        """
        if cls._threads is not None:
            return cls._threads
        raw = os.environ.get(cls.ENV_THREADS)
        if raw is None or raw.strip() == "":
            return 1
        return cls._validate_threads(raw, cls.ENV_THREADS)

    @classmethod
    def reset(cls):
        """Forget any explicit setting."""
        cls._threads = None

    @classmethod
    def get(cls, key):
        """
        Retrieve one code-side default.

        Raises:
            ConfigurationError: If ``key`` names no default.
        """
        if key not in cls._defaults:
            raise ConfigurationError(f"no default named {key!r}", key=key)
        return cls.get_defaults()[key]

    @classmethod
    def get_defaults(cls) -> dict:
        """
        Retrieve the code-side defaults echoed into every run manifest.

        Returns:
            dict: A deep copy of the defaults.
        """
        return {k: (dict(v) if isinstance(v, dict) else list(v) if isinstance(v, list) else v)
                for k, v in cls._defaults.items()}

    @staticmethod
    def _validate_threads(value, key):
        try:
            threads = int(value)
        except (TypeError, ValueError):
            raise ConfigurationError(f"{key} must be a positive integer, got {value!r}", key=key)
        if threads < 1:
            raise ConfigurationError(f"{key} must be a positive integer, got {value!r}", key=key)
        return threads


def parallel_map(func, items) -> list:
    """
    ``[func(item) for item in items]`` on at most :meth:`Config.get_threads` workers.

    Results keep the order of ``items`` whatever the worker count.
    """
    items = list(items)
    if Config.get_threads() == 1 or len(items) < 2:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=Config.get_threads()) as executor:
        return list(executor.map(func, items))
