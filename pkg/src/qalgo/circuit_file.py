"""Line-oriented circuit files.

Grammar, one instruction per line; ``#`` starts a comment and blank
lines are ignored::

    QUBITS <n>                  required first directive
    H <q>
    X <q>
    T <q> <alpha_radians>
    CNOT <control> <target>
    CPHASE <control> <target> <alpha_radians>
    SWAP <q1> <q2>
    QFT <q_lo> <q_hi>           inclusive range, q_lo most significant

Mnemonics are case-insensitive.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path

from qalgo.config import MAX_QUBITS
from qalgo.errors import (
    MalformedInstructionError,
    MalformedNumberError,
    MissingHeaderError,
    QubitIndexError,
    UnknownMnemonicError,
)
from qalgo.fourier import qft_ops
from qalgo.gates import (
    Circuit,
    GateOp,
    cnot_op,
    cphase_op,
    h_op,
    swap_op,
    t_op,
    x_op,
)


@dataclass(frozen=True)
class _Signature:
    qubits: int
    angles: int
    build: Callable[..., list[GateOp]]


_INSTRUCTIONS: dict[str, _Signature] = {
    "H": _Signature(1, 0, lambda q: [h_op(q)]),
    "X": _Signature(1, 0, lambda q: [x_op(q)]),
    "T": _Signature(1, 1, lambda q, a: [t_op(q, a)]),
    "CNOT": _Signature(2, 0, lambda c, t: [cnot_op(c, t)]),
    "CPHASE": _Signature(2, 1, lambda c, t, a: [cphase_op(c, t, a)]),
    "SWAP": _Signature(2, 0, lambda a, b: [swap_op(a, b)]),
}


@dataclass(frozen=True)
class CircuitSource:
    """A circuit file and the circuit it resolves to.

    Attributes:
        lines: The file content.
        resolved: The parsed circuit.
    """

    lines: str
    resolved: Circuit


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_int(token: str, line_number: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise MalformedNumberError(
            f"{token!r} is not an integer", line_number
        ) from None


def _parse_angle(token: str, line_number: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise MalformedNumberError(
            f"{token!r} is not a real number", line_number
        ) from None
    if not math.isfinite(value):
        raise MalformedNumberError(
            f"Angle {token!r} is not finite", line_number
        )
    return value


def _parse_qubits(
    tokens: list[str], n_qubits: int, line_number: int
) -> list[int]:
    qubits = [_parse_int(token, line_number) for token in tokens]
    for q in qubits:
        if not 0 <= q < n_qubits:
            raise QubitIndexError(
                f"Qubit index {q} out of range for {n_qubits} qubits",
                line_number,
            )
    if len(set(qubits)) != len(qubits):
        raise QubitIndexError(
            f"Qubit indices {qubits} must be distinct", line_number
        )
    return qubits


def _expect_arity(
    mnemonic: str, operands: list[str], arity: int, line_number: int
) -> None:
    if len(operands) != arity:
        raise MalformedInstructionError(
            f"{mnemonic} takes {arity} operand(s), got {len(operands)}",
            line_number,
        )


def _parse_header(
    tokens: list[str], line_number: int, max_qubits: int
) -> int:
    if tokens[0].upper() != "QUBITS":
        raise MissingHeaderError(
            f"Expected a QUBITS directive first, got {tokens[0]!r}",
            line_number,
        )
    _expect_arity("QUBITS", tokens[1:], 1, line_number)
    n_qubits = _parse_int(tokens[1], line_number)
    if not 1 <= n_qubits <= max_qubits:
        raise QubitIndexError(
            f"QUBITS must be between 1 and {max_qubits}, got {n_qubits}",
            line_number,
        )
    return n_qubits


def _parse_qft(
    operands: list[str], n_qubits: int, line_number: int
) -> list[GateOp]:
    _expect_arity("QFT", operands, 2, line_number)
    lo, hi = (_parse_int(token, line_number) for token in operands)
    if not 0 <= lo <= hi < n_qubits:
        raise QubitIndexError(
            f"QFT range {lo}..{hi} is not a range of {n_qubits} qubits",
            line_number,
        )
    mapping = list(range(lo, hi + 1))
    return [op.shifted(mapping) for op in qft_ops(hi - lo + 1)]


def _parse_instruction(
    tokens: list[str], n_qubits: int, line_number: int
) -> list[GateOp]:
    mnemonic, operands = tokens[0].upper(), tokens[1:]
    if mnemonic == "QFT":
        return _parse_qft(operands, n_qubits, line_number)
    if mnemonic == "QUBITS":
        raise MalformedInstructionError(
            "QUBITS may appear only once, as the first directive",
            line_number,
        )
    signature = _INSTRUCTIONS.get(mnemonic)
    if signature is None:
        raise UnknownMnemonicError(
            f"Unknown mnemonic {tokens[0]!r}", line_number
        )
    _expect_arity(
        mnemonic, operands, signature.qubits + signature.angles, line_number
    )
    qubits = _parse_qubits(
        operands[: signature.qubits], n_qubits, line_number
    )
    angles = [
        _parse_angle(token, line_number)
        for token in operands[signature.qubits :]
    ]
    return signature.build(*qubits, *angles)


def parse_circuit(text: str, max_qubits: int = MAX_QUBITS) -> Circuit:
    """Parse circuit-file text into a Circuit.

    Args:
        text: File content.
        max_qubits: Largest register the QUBITS directive may declare.

    Returns:
        The circuit, ops in file order.

    Raises:
        MissingHeaderError: No QUBITS directive before the first gate.
        UnknownMnemonicError: An unrecognized instruction.
        QubitIndexError: A qubit index out of range or repeated.
        MalformedNumberError: An operand that is not a valid number.
        MalformedInstructionError: Wrong operand count or a repeated
            QUBITS directive.
    """
    circuit: Circuit | None = None
    for line_number, raw in enumerate(text.splitlines(), start=1):
        tokens = _strip(raw).split()
        if not tokens:
            continue
        if circuit is None:
            n_qubits = _parse_header(tokens, line_number, max_qubits)
            circuit = Circuit(n_qubits)
            continue
        circuit.extend(
            _parse_instruction(tokens, circuit.n_qubits, line_number)
        )
    if circuit is None:
        raise MissingHeaderError("Circuit file has no QUBITS directive")
    return circuit


def load_circuit(
    path: str | Path, max_qubits: int = MAX_QUBITS
) -> CircuitSource:
    """Read and parse a UTF-8 circuit file."""
    text = Path(path).read_text(encoding="utf-8")
    return CircuitSource(text, parse_circuit(text, max_qubits))
