#!/usr/bin/env python3
"""
atomic2fol - Atomic if-then statements to first-order logic
Main entry point for the command line
"""

import argparse
import sys
from typing import List, Optional

from pydantic import ValidationError

from cli.commands import EXIT_INPUT, Atomic2FolCommands
from config import configure_logging, load_run_config, settings


def _add_convert_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("inputs", nargs="+", metavar="INPUT", help="Atomic input file(s)")
    parser.add_argument("--format", dest="input_format", choices=settings.INPUT_FORMATS,
                        help="input layout (default: atomic-csv)")
    parser.add_argument("-o", "--output", help="JSON-lines dataset to write")
    parser.add_argument("--sentences", dest="sentences_output",
                        help="also write sentences, one per line")
    parser.add_argument("--formulas", dest="formulas_output",
                        help="also write formulas, parallel to --sentences")
    parser.add_argument("--tagger", choices=settings.TAGGER_MODES)
    parser.add_argument("--lexicon", help="word<TAB>TAG file overriding the built-in lexicon")
    parser.add_argument("--keep-personz", dest="keep_personz", action="store_const", const=True,
                        help="flag PersonZ records instead of dropping them")
    parser.add_argument("--workers", type=int, help="translation processes")


def _add_dataset_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("inputs", nargs="+", metavar="DATASET", help="JSON-lines dataset(s)")


def build_parser(commands: Atomic2FolCommands) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=settings.TOOL_NAME,
        description="Compile Atomic if-then statements into first-order logic datasets.")
    parser.add_argument("--version", action="version",
                        version=f"{settings.TOOL_NAME} {settings.TOOL_VERSION} "
                                f"(formula format {settings.FORMAT_VERSION})")
    parser.add_argument("--config", help="env-style file with ATOMIC2FOL_* settings")
    parser.add_argument("-v", "--verbose", action="count", default=0)

    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in commands.get_commands():
        sub = subparsers.add_parser(command.name, help=command.description,
                                    description=command.description)
        if command.name == "convert":
            _add_convert_arguments(sub)
        elif command.name == "eval":
            sub.add_argument("--pred", help="predicted formulas, one per line")
            sub.add_argument("--gold", help="gold formulas, one per line")
            sub.add_argument("--pairs", help="gold JSON-lines dataset, or {pred, gold} lines when --pred is absent")
            sub.add_argument("--report", help="write the scores as JSON")
            sub.add_argument("--details", help="write per-pair scores as JSON lines")
        else:
            _add_dataset_arguments(sub)
            if command.name == "split":
                sub.add_argument("--fraction", type=float, help="training share (default 0.85)")
                sub.add_argument("--output-dir", dest="output_dir", required=True)
            elif command.name == "sample":
                sub.add_argument("--sample", dest="sample_size", type=int, required=True,
                                 help="number of pairs to draw")
                sub.add_argument("-o", "--output", required=True)
            else:
                sub.add_argument("--report", help="write the statistics as JSON")

        if command.name in ("convert", "eval"):
            sub.add_argument("--no-quantifiers", dest="quantifiers", action="store_const",
                             const=False, help="use unquantified formulas")
        if command.name != "eval":
            sub.add_argument("--category", choices=settings.CATEGORIES)
        if command.name in ("convert", "split", "sample"):
            sub.add_argument("--seed", type=int)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    commands = Atomic2FolCommands()
    args = build_parser(commands).parse_args(argv)

    level = settings.LOG_LEVEL
    if args.verbose:
        level = "INFO" if args.verbose == 1 else "DEBUG"
    configure_logging(level)

    cli_values = {key: value for key, value in vars(args).items()
                  if key not in ("command", "config", "verbose")}
    try:
        config = load_run_config(args.command, cli_values, args.config)
    except (ValidationError, FileNotFoundError) as e:
        print(f"❌ Invalid configuration: {e}", file=sys.stderr)
        return EXIT_INPUT
    return commands.run(config)


if __name__ == "__main__":
    sys.exit(main())
