"""The quantum discrete Fourier transform F_n.

``F_n b_k = (1/sqrt(2^n)) sum_j zeta^{jk} b_j`` with
``zeta = e^{2 pi i / 2^n}``. F_1 is the Hadamard gate.

The gate-level circuit uses Hadamards, controlled phases and a final
bit-reversal layer of swaps. Each controlled phase factors into two
CNOTs and three twist gates and each swap into three CNOTs, so
``qft_circuit(n, primitive=True)`` needs nothing beyond H, T and CNOT.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from qalgo.config import DENSE_MAX_QUBITS
from qalgo.errors import RegisterTooLargeError
from qalgo.gates import (
    Circuit,
    GateOp,
    controlled_phase_ops,
    cphase_op,
    h_op,
    swap_op,
    swap_ops,
)
from qalgo.linalg import UnitaryMatrix
from qalgo.register import StateVector, check_qubit_subset

# Exact values of zeta at the quarter turns.
_QUARTER_TURNS = (1.0 + 0.0j, 1j, -1.0 + 0.0j, -1j)


@dataclass(frozen=True)
class RootOfUnity:
    """``e^{2 pi i power / order}``.

    Attributes:
        order: Positive integer, a power of two in every use here.
        power: Any integer; reduced mod ``order`` when evaluated.
    """

    order: int
    power: int

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"Order must be positive, got {self.order}")

    @property
    def value(self) -> complex:
        """The complex number itself."""
        return zeta(self.order, self.power)

    def __mul__(self, other: RootOfUnity) -> RootOfUnity:
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        order = math.lcm(self.order, other.order)
        power = (
            self.power * (order // self.order)
            + other.power * (order // other.order)
        ) % order
        return RootOfUnity(order, power)


def zeta_powers(order: int, powers: np.ndarray) -> np.ndarray:
    """Elementwise ``e^{2 pi i p / order}``, quarter turns exact."""
    reduced = np.mod(powers, order)
    values = np.exp(2j * np.pi * reduced / order)
    quarter = (4 * reduced) % order == 0
    turns = (4 * reduced[quarter]) // order
    values[quarter] = np.take(_QUARTER_TURNS, turns)
    return values


def zeta(order: int, power: int) -> complex:
    """``e^{2 pi i power / order}`` with ``power`` reduced mod ``order``.

    Quarter turns (1, i, -1, -i) are returned exactly.

    Raises:
        ValueError: If ``order < 1``.
    """
    if order < 1:
        raise ValueError(f"Order must be positive, got {order}")
    return complex(zeta_powers(order, np.array([power % order]))[0])


def root_of_unity_sum(order: int, k: int) -> complex:
    """``sum_{j < order} zeta_order^{jk}``: ``order`` if it divides k,
    else 0."""
    j = np.arange(order)
    return complex(zeta_powers(order, j * (k % order)).sum())


def qft_dense(n: int, max_qubits: int = DENSE_MAX_QUBITS) -> UnitaryMatrix:
    """The dense ``2^n x 2^n`` matrix with entries ``zeta^{jk}/sqrt(2^n)``.

    Raises:
        ValueError: If ``n < 1``.
        RegisterTooLargeError: If ``n`` exceeds ``max_qubits``.
    """
    if n < 1:
        raise ValueError(f"QFT needs at least 1 qubit, got {n}")
    if n > max_qubits:
        raise RegisterTooLargeError(
            f"Dense QFT on {n} qubits exceeds the cap of {max_qubits}"
        )
    size = 2**n
    index = np.arange(size)
    exponents = np.outer(index, index) % size
    return UnitaryMatrix(zeta_powers(size, exponents) / np.sqrt(size))


def qft_ops(n: int, primitive: bool = False) -> list[GateOp]:
    """Gate sequence of F_n on qubits ``0 .. n-1``.

    Args:
        n: Register size.
        primitive: Emit controlled phases and swaps as CNOT and twist
            gates instead of CPHASE and SWAP ops.
    """
    ops: list[GateOp] = []
    for k in range(n):
        ops.append(h_op(k))
        for j in range(k + 1, n):
            alpha = math.pi / 2 ** (j - k)
            if primitive:
                ops.extend(controlled_phase_ops(j, k, alpha))
            else:
                ops.append(cphase_op(j, k, alpha))
    for k in range(n // 2):
        a, b = k, n - 1 - k
        ops.extend(swap_ops(a, b) if primitive else [swap_op(a, b)])
    return ops


def qft_circuit(n: int, primitive: bool = False) -> Circuit:
    """F_n as a Circuit.

    ``n`` Hadamards, ``n(n-1)/2`` controlled phases and ``n // 2`` swaps.

    Raises:
        ValueError: If ``n < 1``.
    """
    if n < 1:
        raise ValueError(f"QFT needs at least 1 qubit, got {n}")
    return Circuit(n, qft_ops(n, primitive))


def qft_apply(
    s: StateVector,
    qubits: Sequence[int] | None = None,
    inverse: bool = False,
) -> StateVector:
    """Apply F_k to ``qubits`` (default: the whole register).

    The first listed qubit is the most significant bit of the
    transformed register; the other qubits are untouched, so applying to
    the first n of n+m qubits acts as ``F_n (x) I``. Runs as a
    ``numpy.fft`` transform along the register axis, ``O(k 2^n)``.

    Args:
        s: Input state.
        qubits: Qubits forming the transformed register.
        inverse: Apply ``F_k^dagger`` instead.
    """
    n = s.n_qubits
    if qubits is None:
        qubits = list(range(n))
    qubits = check_qubit_subset(n, qubits)
    k = len(qubits)
    front = np.moveaxis(
        s.amplitudes.reshape((2,) * n), qubits, tuple(range(k))
    )
    shape = front.shape
    flat = front.reshape(2**k, -1)
    # numpy's ifft carries the +i sign convention of F_n.
    transform = np.fft.fft if inverse else np.fft.ifft
    out = transform(flat, axis=0, norm="ortho").reshape(shape)
    out = np.moveaxis(out, tuple(range(k)), qubits)
    return StateVector(np.ascontiguousarray(out).reshape(-1))
