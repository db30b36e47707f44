"""Command-line interface for qalgo."""

import argparse
import logging
import sys
import tomllib
from pathlib import Path

from qalgo import QalgoConfig
from qalgo.commands import EXIT_USAGE

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path("qalgo.toml")

# Config fields a [qalgo] TOML section may set.
TOML_KEYS = (
    "seed",
    "shots",
    "max_attempts",
    "max_trials",
    "max_qubits",
    "dense_max_qubits",
    "tolerance",
    "workers",
)

# Config fields that have a command-line flag.
CLI_KEYS = ("seed", "shots", "max_attempts")


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits with the usage-error code."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load_toml(path: Path) -> dict:
    """Read the [qalgo] section of a TOML config file.

    Args:
        path: Path to the TOML config file.

    Returns:
        The section's values for keys in TOML_KEYS. A missing file or
        section gives an empty dict; unknown keys are logged and dropped.
    """
    try:
        with path.open("rb") as f:
            section = tomllib.load(f).get("qalgo", {})
    except FileNotFoundError:
        return {}
    unknown = sorted(set(section) - set(TOML_KEYS))
    if unknown:
        logger.warning(
            "Ignoring unknown [qalgo] keys in %s: %s", path, ", ".join(unknown)
        )
    return {key: value for key, value in section.items() if key in TOML_KEYS}


def _build_config(
    toml_values: dict,
    cli_args: argparse.Namespace,
) -> QalgoConfig:
    """Build a QalgoConfig with layered overrides.

    Priority: CLI args > TOML values > library defaults.

    Args:
        toml_values: Values loaded from the TOML config file.
        cli_args: Parsed arguments from the command line.

    Returns:
        Fully resolved QalgoConfig.
    """
    config = QalgoConfig()

    # Layer 2: TOML overrides library defaults
    for key in TOML_KEYS:
        if key in toml_values:
            setattr(config, key, toml_values[key])

    # Layer 3: CLI overrides TOML
    for key in CLI_KEYS:
        value = getattr(cli_args, key, None)
        if value is not None:
            setattr(config, key, value)

    return config


def _add_seed(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--seed",
        type=int,
        default=None,
        help="seed of the random source (default: 42)",
    )


def _make_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        description=(
            "Simulate quantum circuits, Deutsch's algorithm, the quantum"
            " Fourier transform and Shor's factoring."
        ),
    )
    parser.add_argument(
        "-c",
        "--config",
        default=None,
        help=(f"path to config file (default: {DEFAULT_CONFIG_PATH})"),
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="log debug output to stderr",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser(
        "simulate", help="run a circuit file on |0...0>"
    )
    simulate.add_argument("circuit", help="path to a circuit file")
    simulate.add_argument(
        "--shots",
        type=int,
        default=None,
        help="number of sampled measurements to count",
    )
    _add_seed(simulate)

    deutsch = commands.add_parser(
        "deutsch", help="decide whether f is constant or balanced"
    )
    deutsch.add_argument("f_spec", help="f(0) f(1) as two bits, e.g. 01")

    qft = commands.add_parser("qft", help="QFT gate counts or check")
    qft.add_argument(
        "--n", type=int, required=True, help="number of qubits"
    )
    qft.add_argument(
        "--check",
        action="store_true",
        help="compare the circuit against the dense matrix",
    )
    qft.add_argument(
        "--primitive",
        action="store_true",
        help="decompose into H, T and CNOT only",
    )

    shor = commands.add_parser("shor", help="factor N with Shor's pipeline")
    shor.add_argument("modulus", type=int, metavar="N")
    _add_seed(shor)
    shor.add_argument(
        "--max-attempts",
        type=int,
        default=None,
        help="random bases to try before giving up (default: 32)",
    )

    orders = commands.add_parser(
        "orders", help="quantum order of every base coprime to N"
    )
    orders.add_argument("modulus", type=int, metavar="N")
    _add_seed(orders)
    return parser


def get_cli_config(
    argv: list[str] | None = None,
) -> tuple[argparse.Namespace, QalgoConfig]:
    """Parse command-line arguments and build a QalgoConfig."""
    args = _make_parser().parse_args(argv)

    config_path = Path(args.config) if args.config else DEFAULT_CONFIG_PATH
    toml_values = _load_toml(config_path)

    config = _build_config(
        toml_values,
        cli_args=args,
    )

    return args, config
