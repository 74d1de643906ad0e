import argparse
import dataclasses
import logging
import os
import sys

from config_parser import config_digest, parse_config
from experiment_runner_factory import ExperimentRunnerFactory
from models.component_types import OutputWriters
from models.errors import ConfigError, NumericalInvariantError, SimulationError
from models.output_paths import ConfigPath
from presets import describe_preset, get_preset, preset_names

OUTPUT_DIR_ENV = "ZENO_SIM_OUTPUT_DIR"

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description=(
            "Simulate repeated Yes/No questions on finite-dimensional "
            "density operators."
        )
    )
    parser.add_argument(
        "-v", "--verbose",
        action="store_true",
        help="Enable debug logging"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser(
        "simulate",
        help="Run an experiment and write its CSV table and JSON summary"
    )
    simulate.add_argument(
        "config",
        nargs="?",
        help="Path to a JSON experiment config"
    )
    simulate.add_argument(
        "--preset",
        choices=preset_names(),
        help="Run a named preset instead of a config file"
    )
    simulate.add_argument(
        "--seed",
        type=int,
        help="Override the seed of the config"
    )
    simulate.add_argument(
        "--out",
        help=(
            "Output directory (default: $" + OUTPUT_DIR_ENV + ", "
            "then output.directory of the config)"
        )
    )
    simulate.add_argument(
        "--overwrite",
        action="store_true",
        help="If set, will overwrite existing output files"
    )

    commands.add_parser("list-presets", help="List the named presets")

    validate = commands.add_parser(
        "validate",
        help="Check a config and print every problem found"
    )
    validate.add_argument("config", help="Path to a JSON experiment config")
    return parser


def _load_config(path: str):
    return parse_config(ConfigPath.from_str(path).read_text())


def _simulate(args, parser) -> int:
    if (args.config is None) == (args.preset is None):
        parser.error("simulate needs exactly one of a config path or --preset")

    config = get_preset(args.preset) if args.preset else _load_config(args.config)
    if args.seed is not None:
        config = dataclasses.replace(config, seed=args.seed)
    output_dir = args.out or os.environ.get(OUTPUT_DIR_ENV) or config.output.directory

    runner = ExperimentRunnerFactory().create(output_writers=OutputWriters.DEFAULT)
    table, stats = runner.run_and_write(config, output_dir, overwrite=args.overwrite)
    for name, value in sorted(table.scalars.items()):
        print(f"{name}: {value}")
    print(stats.get_summary_text())
    return EXIT_OK


def _list_presets() -> int:
    for name in preset_names():
        print(f"{name}: {describe_preset(name)}")
    return EXIT_OK


def _validate(args) -> int:
    config = _load_config(args.config)
    print(f"OK: {config.kind} config {config_digest(config)}")
    return EXIT_OK


def main(args=None):
    """Main function to run experiments from the command line."""
    parser = _build_parser()
    args = parser.parse_args(args)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s - %(levelname)s - %(message)s"
    )

    try:
        if args.command == "list-presets":
            return _list_presets()
        if args.command == "validate":
            return _validate(args)
        return _simulate(args, parser)
    except ConfigError as e:
        for error in e.errors:
            logging.error("Config error: %s", error)
            print(error, file=sys.stderr)
        return EXIT_CONFIG
    except NumericalInvariantError as e:
        logging.error("Numerical invariant violated: %s", e)
        return EXIT_NUMERICAL
    except SimulationError as e:
        logging.error("Invalid experiment: %s", e)
        return EXIT_CONFIG
    except (OSError, ValueError) as e:
        logging.error("I/O error: %s", e)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
