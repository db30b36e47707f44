"""Run qalgo from the command line."""

import logging
import sys

from cli_utils import get_cli_config
from qalgo.commands import (
    cmd_deutsch,
    cmd_orders,
    cmd_qft,
    cmd_shor,
    cmd_simulate,
)


def main(argv: list[str] | None = None) -> int:
    """Parse arguments, dispatch the subcommand, return its exit code."""
    args, config = get_cli_config(argv)

    if args.verbose:
        logging.basicConfig(
            level=logging.DEBUG,
            format="%(levelname)s %(name)s: %(message)s",
        )

    if args.command == "simulate":
        return cmd_simulate(args.circuit, config)
    if args.command == "deutsch":
        return cmd_deutsch(args.f_spec)
    if args.command == "qft":
        return cmd_qft(args.n, args.check, args.primitive, config)
    if args.command == "shor":
        return cmd_shor(args.modulus, config)
    return cmd_orders(args.modulus, config)


if __name__ == "__main__":
    sys.exit(main())
