"""Command implementations behind the ``qalgo`` CLI.

Each command writes a line-oriented report to ``out``, diagnostics to
``err``, and returns a process exit code. Every report opens with a
``#`` header naming its inputs, so runs are self-describing.
"""

from __future__ import annotations

import logging
import re
import sys
from pathlib import Path
from typing import TextIO

import numpy as np

from qalgo.algorithms import (
    FactorResult,
    ShorAttempt,
    deutsch,
    order_table,
    shor_factor,
)
from qalgo.circuit_file import load_circuit
from qalgo.config import QalgoConfig
from qalgo.errors import (
    AttemptsExhaustedError,
    CircuitParseError,
    OrderFindingError,
    PreconditionError,
    RegisterTooLargeError,
)
from qalgo.fourier import qft_circuit, qft_dense
from qalgo.gates import circuit_unitary, hadamard, run_circuit
from qalgo.register import (
    RandomSource,
    basis_state,
    probabilities,
    sample_counts,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_EXHAUSTED = 3
EXIT_CHECK_FAILED = 4

# Basis states at or below this probability are left out of reports.
REPORT_THRESHOLD = 1e-12
QFT_CHECK_MAX_QUBITS = 10

_F_SPEC = re.compile(r"[01]{2}")


def format_probability(p: float) -> str:
    """``p`` rounded to 12 significant digits, printed as a float."""
    return repr(float(f"{p:.12g}"))


def _streams(
    out: TextIO | None, err: TextIO | None
) -> tuple[TextIO, TextIO]:
    return out or sys.stdout, err or sys.stderr


def cmd_simulate(
    circuit_path: str | Path,
    config: QalgoConfig | None = None,
    out: TextIO | None = None,
    err: TextIO | None = None,
) -> int:
    """Run a circuit file on ``|0...0>`` and report its distribution.

    One line per basis state above :data:`REPORT_THRESHOLD`: bitstring,
    probability and, when ``config.shots > 0``, the sampled count.
    """
    config = config or QalgoConfig()
    out, err = _streams(out, err)
    if config.shots < 0:
        print(
            f"error: shots must be non-negative, got {config.shots}",
            file=err,
        )
        return EXIT_USAGE
    try:
        rng = RandomSource(config.seed)
        source = load_circuit(circuit_path, config.max_qubits)
    except CircuitParseError as exc:
        print(f"error: {circuit_path}: {exc}", file=err)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE

    circuit = source.resolved
    logger.info(
        "Simulating %d ops on %d qubits", len(circuit), circuit.n_qubits
    )
    start = basis_state(circuit.n_qubits, 0, config.max_qubits)
    final = run_circuit(start, circuit)
    dist = probabilities(final)
    counts = sample_counts(final, config.shots, rng)

    print(
        f"# qubits={circuit.n_qubits} shots={config.shots}"
        f" seed={config.seed}",
        file=out,
    )
    for index in dist.support(REPORT_THRESHOLD):
        fields = [final.bitstring(index), format_probability(dist[index])]
        if config.shots > 0:
            fields.append(str(counts.get(index, 0)))
        print(" ".join(fields), file=out)
    return EXIT_OK


def cmd_deutsch(
    f_spec: str,
    out: TextIO | None = None,
    err: TextIO | None = None,
) -> int:
    """Run Deutsch's algorithm on the function table ``f(0) f(1)``."""
    out, err = _streams(out, err)
    if not _F_SPEC.fullmatch(f_spec):
        print(
            f"error: function table must be two bits like 01, got"
            f" {f_spec!r}",
            file=err,
        )
        return EXIT_USAGE
    result = deutsch((int(f_spec[0]), int(f_spec[1])))
    print(f"# f={f_spec}", file=out)
    print(result.verdict, file=out)
    for outcome in range(len(result.distribution)):
        p = format_probability(result.distribution[outcome])
        print(f"{outcome} {p}", file=out)
    return EXIT_OK


def _format_counts(counts: dict[str, int]) -> str:
    return " ".join(f"{name}:{count}" for name, count in counts.items())


def cmd_qft(
    n: int,
    check: bool = False,
    primitive: bool = False,
    config: QalgoConfig | None = None,
    out: TextIO | None = None,
    err: TextIO | None = None,
) -> int:
    """Report QFT gate counts, or check the circuit against the matrix.

    With ``check``, prints the largest entrywise deviation between the
    circuit's unitary and the dense F_n and fails above
    ``config.tolerance``.
    """
    config = config or QalgoConfig()
    out, err = _streams(out, err)
    if n < 1:
        print(f"error: QFT needs at least 1 qubit, got {n}", file=err)
        return EXIT_USAGE
    circuit = qft_circuit(n, primitive=primitive)
    print(f"# qft n={n} check={check} primitive={primitive}", file=out)
    if not check:
        print(_format_counts(circuit.gate_counts()), file=out)
        return EXIT_OK

    if n > QFT_CHECK_MAX_QUBITS:
        print(
            f"error: --check supports at most {QFT_CHECK_MAX_QUBITS}"
            f" qubits, got {n}",
            file=err,
        )
        return EXIT_PRECONDITION
    try:
        built = circuit_unitary(circuit, config.dense_max_qubits)
        dense = qft_dense(n, config.dense_max_qubits)
    except RegisterTooLargeError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PRECONDITION

    deviation = float(np.max(np.abs(built.data - dense.data)))
    passed = deviation <= config.tolerance
    print(f"deviation {deviation:.6g}", file=out)
    if n == 1 and np.array_equal(dense.data, hadamard().data):
        print("F_1 = H", file=out)
    print("pass" if passed else "fail", file=out)
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def _format_attempt(attempt: ShorAttempt) -> str:
    def show(value: int | None) -> str:
        return "-" if value is None else str(value)

    return (
        f"attempt {attempt.index} x={attempt.x}"
        f" c={show(attempt.measured_c)} r={show(attempt.order)}"
        f" {attempt.outcome}"
    )


def _print_factors(result: FactorResult, modulus: int, out: TextIO) -> None:
    p, q = sorted((result.p, result.q))
    print(f"factors {p} {q}", file=out)
    verdict = "ok" if p * q == modulus else "mismatch"
    print(f"check {p}*{q}={p * q} {verdict}", file=out)


def cmd_shor(
    modulus: int,
    config: QalgoConfig | None = None,
    out: TextIO | None = None,
    err: TextIO | None = None,
) -> int:
    """Factor ``modulus`` and report every attempt made.

    Exit codes: 0 on success, 2 for a rejected modulus, 3 when
    ``config.max_attempts`` attempts all fail.
    """
    config = config or QalgoConfig()
    out, err = _streams(out, err)
    try:
        rng = RandomSource(config.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    print(
        f"# N={modulus} seed={config.seed}"
        f" max_attempts={config.max_attempts}",
        file=out,
    )
    try:
        result = shor_factor(
            modulus,
            rng,
            max_attempts=config.max_attempts,
            max_trials=config.max_trials,
            max_qubits=config.max_qubits,
        )
    except PreconditionError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PRECONDITION
    except AttemptsExhaustedError as exc:
        for attempt in exc.attempts:
            print(_format_attempt(attempt), file=out)
        print(f"error: {exc}", file=err)
        return EXIT_EXHAUSTED

    for attempt in result.attempts:
        print(_format_attempt(attempt), file=out)
    _print_factors(result, modulus, out)
    return EXIT_OK


def cmd_orders(
    modulus: int,
    config: QalgoConfig | None = None,
    out: TextIO | None = None,
    err: TextIO | None = None,
) -> int:
    """Quantum order of every base coprime to ``modulus``.

    One line per base: ``x``, order, the outcome that revealed it and
    the trials used.
    """
    config = config or QalgoConfig()
    out, err = _streams(out, err)
    if modulus < 3:
        print(f"error: modulus must be at least 3, got {modulus}", file=err)
        return EXIT_PRECONDITION
    try:
        table = order_table(
            modulus,
            config.seed,
            config.workers,
            config.max_trials,
            config.max_qubits,
        )
    except (PreconditionError, RegisterTooLargeError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except OrderFindingError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_EXHAUSTED
    print(f"# N={modulus} seed={config.seed}", file=out)
    for x, found in table.items():
        print(
            f"{x} r={found.order} c={found.measured_c}"
            f" trials={found.trials_used}",
            file=out,
        )
    return EXIT_OK
