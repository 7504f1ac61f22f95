import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from commands.experiments import cmd_fd, cmd_raster, cmd_spacetime, cmd_wave
from config_reader import load_config
from errors import ConfigError, TrafficSimError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2

COMMANDS = {
    "fd": cmd_fd,
    "spacetime": cmd_spacetime,
    "wave": cmd_wave,
    "raster": cmd_raster,
}


def setup_logging(log_file: str) -> None:
    logging.basicConfig(level=logging.INFO)

    file_handler = logging.FileHandler(log_file)
    file_handler.setLevel(logging.WARNING)

    formatter = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s", datefmt="%Y-%m-%d %H:%M:%S")
    file_handler.setFormatter(formatter)

    root = logging.getLogger()
    root.addHandler(file_handler)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="runner", description="Ring-road cellular-automaton traffic experiments")
    subparsers = parser.add_subparsers(dest="command", required=True)

    for name in [*COMMANDS, "validate"]:
        subparser = subparsers.add_parser(name)
        subparser.add_argument("--config", type=Path, required=True)
        subparser.add_argument("--out", type=Path, default=None, help="output directory, overrides OUTPUT_DIR")
        subparser.add_argument("--log-file", default="runner.log")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_file)

    try:
        config = load_config(args.config)
    except ConfigError as error:
        logger.error("invalid config: %s", error)
        return EXIT_VALIDATION

    if args.command == "validate":
        print("\n".join(config.resolved()))
        return EXIT_OK

    out_dir = args.out or config.output_dir
    try:
        path = COMMANDS[args.command](config, out_dir)
    except ConfigError as error:
        logger.error("invalid config: %s", error)
        return EXIT_VALIDATION
    except (TrafficSimError, OSError) as error:
        logger.error("%s failed: %s", args.command, error)
        return EXIT_RUNTIME

    logger.info("wrote %s", path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
