from prodint.cli.config import ExperimentConfig, load_config
from prodint.cli.experiments import ExperimentResult, run_experiment
from prodint.cli.selftest import run_selftest

__all__ = ["ExperimentConfig", "load_config", "ExperimentResult", "run_experiment", "run_selftest"]
