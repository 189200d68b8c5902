"""`bnsl` console entry point: one subcommand per bench management command."""

import os
import sys
from typing import List, Optional

from dotenv import load_dotenv

COMMANDS = (
    "learn",
    "learn-local",
    "sample",
    "nparams",
    "hamming",
    "bench-order",
    "bench-scaling",
    "random-network",
)

USAGE = "usage: bnsl {" + ",".join(COMMANDS) + "} [options]"


def cli_dispatch(argv: List[str]) -> int:
    """Run one subcommand and return its exit code.

    0 on success, 1 on usage errors, 2 on data and model errors.
    """
    if not argv:
        print(USAGE, file=sys.stderr)
        return 1
    if argv[0] in ("-h", "--help"):
        print(USAGE)
        return 0
    name, arguments = argv[0], argv[1:]
    if name not in COMMANDS:
        print(f"{USAGE}\nbnsl: unknown command `{name}`", file=sys.stderr)
        return 1

    load_dotenv()
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "bn_learning.settings")

    import django
    from django.core.management import CommandError, load_command_class

    django.setup()
    command = load_command_class("bnsl_bench", name.replace("-", "_"))
    try:
        parser = command.create_parser("bnsl", name)
        options = vars(parser.parse_args(arguments))
        args = options.pop("args", ())
        command.execute(*args, **options)
    except CommandError as exc:
        print(f"bnsl {name}: {exc}", file=sys.stderr)
        return exc.returncode
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    return 0


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(cli_dispatch(sys.argv[1:] if argv is None else argv))
