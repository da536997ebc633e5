"""
Command line front end.

``prodint run <config>`` runs one experiment and writes its CSV tables plus
``manifest.json``; ``prodint list`` prints the registries; ``prodint
selftest`` runs the exactly solvable checks. Exit codes: 0 success, 1
configuration error, 2 probe violation or failed gate.
"""

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from prodint import __version__
from prodint.cli.config import KINDS, load_config
from prodint.cli.experiments import run_experiment
from prodint.cli.selftest import run_selftest
from prodint.curves.library import list_curves
from prodint.engine.evolution import SCHEMES
from prodint.errors import ProdintError
from prodint.groups.base import CHARTS
from prodint.groups.registry import list_groups
from prodint.space.seminorms import KINDS as SEMINORM_KINDS
from prodint.space.seminorms import LADDERS
from prodint.utils import Config

__all__ = ["main", "list_registry", "write_outputs"]

logger = logging.getLogger("prodint")

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_FAILED = 2

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def list_registry() -> str:
    """Alphabetical listing of groups, charts, curves, seminorms, schemes and experiment kinds."""
    sections = [
        ("groups", list_groups()),
        ("charts", sorted(CHARTS)),
        ("curves", list_curves()),
        ("seminorms", sorted(SEMINORM_KINDS)),
        ("ladders", sorted(LADDERS)),
        ("schemes", sorted(SCHEMES)),
        ("experiments", sorted(KINDS)),
    ]
    lines = []
    for title, names in sections:
        lines.append(f"{title}:")
        lines.extend(f"  {name}" for name in names)
    return "\n".join(lines)


def write_outputs(result, outdir: Path):
    """Write every table as CSV, in order; returns the written paths."""
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, frame in result.tables.items():
        path = outdir / name
        frame.to_csv(path, index=False, float_format="%.17g")
        logger.info("wrote %s (%d rows)", path, len(frame))
        written.append(path)
    return written


def _run_command(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    try:
        cfg = load_config(args.config)
    except (ProdintError, ValueError) as err:
        key = getattr(err, "key", None)
        print(f"[error] {err}" + (f" (key: {key})" if key else ""), file=sys.stderr)
        return EXIT_CONFIG

    try:
        result = run_experiment(cfg)
    except ProdintError as err:
        # domain errors from the grids (e.g. n below m) are configuration mistakes
        key = getattr(err, "key", None)
        print(f"[error] {err}" + (f" (key: {key})" if key else ""), file=sys.stderr)
        return EXIT_CONFIG

    outdir = Path(args.output or cfg.output or ".")
    written = write_outputs(result, outdir)
    manifest = {
        "config": cfg.resolved(),
        "defaults": Config.get_defaults(),
        "version": __version__,
        "threads": Config.get_threads(),
        "wall_time": time.perf_counter() - started,
        "outputs": [path.name for path in written],
        "summary": result.summary,
        "failures": result.failures,
        "status": result.status,
    }
    (outdir / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    verdict = "OK" if result.status == EXIT_OK else "FAIL"
    print(f"[{cfg.kind}] {verdict} ({', '.join(path.name for path in written)} in {outdir})")
    for reason in result.failures:
        print(f"  - {reason}")
    return result.status


def _list_command(args: argparse.Namespace) -> int:
    print(list_registry())
    return EXIT_OK


def _selftest_command(args: argparse.Namespace) -> int:
    results = run_selftest()
    for check in results:
        print(f"[selftest] {check.name}: {'ok' if check.passed else 'FAIL'} ({check.value:.3e})")
    failed = [check for check in results if not check.passed]
    print(f"[selftest] {len(results) - len(failed)}/{len(results)} passed")
    return EXIT_FAILED if failed else EXIT_OK


def _configure_logging(verbosity: int):
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="prodint", description="Lie group product integration experiments.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="INFO with -v, DEBUG with -vv.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    run = subparsers.add_parser("run", help="Run the experiment described by a JSON config.")
    run.add_argument("config", type=Path, help="Path to the experiment config.")
    run.add_argument("-o", "--output", type=Path, default=None, help="Output directory (overrides the config).")
    run.add_argument("-v", "--verbose", action="count", default=0, dest="run_verbose",
                     help="INFO with -v, DEBUG with -vv.")
    run.set_defaults(func=_run_command)

    subparsers.add_parser("list", help="List groups, curves, seminorms and schemes.").set_defaults(
        func=_list_command
    )
    subparsers.add_parser("selftest", help="Run the exactly solvable checks.").set_defaults(func=_selftest_command)

    args = parser.parse_args(argv)
    _configure_logging(args.verbose + getattr(args, "run_verbose", 0))
    return int(args.func(args))


if __name__ == "__main__":
    sys.exit(main())
