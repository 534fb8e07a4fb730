"""
delpezzo-orbifolds - command line entry point

Curve classes on del Pezzo surfaces of degree 1..7 and positivity of the
adjoint classes -(K + eps C) for Campana weights eps = 1 - 1/m.
"""

import argparse
import logging
import re
import sys
from typing import List, Optional, Sequence

from delpezzo import __version__
from delpezzo.api.commands import EXIT_DOMAIN, EXIT_USAGE, add_commands
from delpezzo.core.config import settings
from delpezzo.core.errors import (
    ContractError,
    NotPseudoeffectiveError,
    SurfaceMismatchError,
    UnsupportedDegreeError,
)

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(name)s:%(levelname)s:%(message)s"

# "-1,0,0,0,0" would otherwise be read as an option
_NEGATIVE_CLASS = re.compile(r"^-\d+(,-?\d+)+$")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delpezzo",
        description="Curves on del Pezzo surfaces and adjoint positivity of Campana boundaries",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="override LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", required=True)
    add_commands(subparsers)
    return parser


def _protect_class_argument(argv: Sequence[str]) -> List[str]:
    args = list(argv)
    if "zariski" not in args or "--" in args:
        return args
    for i, token in enumerate(args):
        if _NEGATIVE_CLASS.match(token):
            # options after the class must still be read as options
            return args[:i] + args[i + 1:] + ["--", token]
    return args


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    try:
        args = parser.parse_args(_protect_class_argument(argv))
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(
        level=(args.log_level or settings.log_level).upper(),
        format=LOG_FORMAT,
        stream=sys.stderr,
    )

    try:
        return args.handler(args)
    except (UnsupportedDegreeError, SurfaceMismatchError, ContractError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NotPseudoeffectiveError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
