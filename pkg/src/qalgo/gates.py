"""Gates, circuits, and their application to registers.

Gates act on designated qubits of a larger register without building the
full ``2**n`` matrix: the state is viewed as an n-axis tensor of shape
``(2,) * n`` and the gate is contracted against the target axes only.

CNOT convention: :func:`cnot` is the 4x4 permutation fixing basis
indices 0, 1 and swapping 2, 3. Under the ordering convention of
:mod:`qalgo.linalg` (qubit 0 leftmost), its first target is the control
and its second target is flipped: ``|1>|t> -> |1>|t xor 1>``.
"""

from __future__ import annotations

import cmath
import logging
import math
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from qalgo.config import DENSE_MAX_QUBITS
from qalgo.errors import (
    DimensionError,
    InvalidTargetsError,
    NotCoprimeError,
    RegisterTooLargeError,
)
from qalgo.linalg import UnitaryMatrix, dagger, identity, kron
from qalgo.numtheory import gcd, modpow, modpow_array
from qalgo.register import StateVector

logger = logging.getLogger(__name__)

_INV_SQRT2 = 1 / math.sqrt(2)


def hadamard() -> UnitaryMatrix:
    """``H = (1/sqrt 2) [[1, 1], [1, -1]]``."""
    return UnitaryMatrix(np.array([[1, 1], [1, -1]]) * _INV_SQRT2)


def pauli_x() -> UnitaryMatrix:
    """The NOT gate ``[[0, 1], [1, 0]]``."""
    return UnitaryMatrix(np.array([[0, 1], [1, 0]]))


def twist(alpha: float) -> UnitaryMatrix:
    """``T(alpha) = diag(1, e^{i alpha})``; leaves probabilities alone."""
    return UnitaryMatrix(np.diag([1.0, cmath.exp(1j * alpha)]))


def cnot() -> UnitaryMatrix:
    """Controlled NOT, control on the first target."""
    return UnitaryMatrix(
        np.array(
            [
                [1, 0, 0, 0],
                [0, 1, 0, 0],
                [0, 0, 0, 1],
                [0, 0, 1, 0],
            ]
        )
    )


def controlled_phase(alpha: float) -> UnitaryMatrix:
    """``diag(1, 1, 1, e^{i alpha})``, symmetric in its two qubits."""
    return UnitaryMatrix(np.diag([1.0, 1.0, 1.0, cmath.exp(1j * alpha)]))


def swap() -> UnitaryMatrix:
    """Exchange two qubits."""
    return UnitaryMatrix(
        np.array(
            [
                [1, 0, 0, 0],
                [0, 0, 1, 0],
                [0, 1, 0, 0],
                [0, 0, 0, 1],
            ]
        )
    )


def oracle_uf(f_table: Sequence[int]) -> UnitaryMatrix:
    """Deutsch oracle ``U_f(b_j (x) b_i) = b_j (x) b_{f(j) xor i}``.

    Args:
        f_table: ``(f(0), f(1))``, each 0 or 1.

    Raises:
        ValueError: If the table is not two bits.
    """
    if len(f_table) != 2 or any(bit not in (0, 1) for bit in f_table):
        raise ValueError(f"f_table must be two bits, got {f_table!r}")
    matrix = np.zeros((4, 4))
    for j in (0, 1):
        for i in (0, 1):
            matrix[2 * j + (f_table[j] ^ i), 2 * j + i] = 1
    return UnitaryMatrix(matrix)


@dataclass(frozen=True)
class PowerOracle:
    """``U_x(v_j (x) u_t) = v_j (x) u_{(t + sign * x^j) mod N}``.

    A basis permutation on an ``n + m`` qubit register (first register
    ``j``, second register ``t``). Values ``t >= N`` are left alone.
    ``sign = -1`` is the inverse permutation. Never densified.

    Attributes:
        x: Base, coprime to ``modulus``.
        modulus: N.
        n: First-register qubits.
        m: Second-register qubits, ``2**m >= modulus``.
        sign: +1 for ``U_x``, -1 for its inverse.
    """

    x: int
    modulus: int
    n: int
    m: int
    sign: int = 1

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError(f"Modulus must be at least 2, got {self.modulus}")
        if gcd(self.x % self.modulus, self.modulus) != 1:
            raise NotCoprimeError(
                f"{self.x} is not coprime to {self.modulus}; U_x would not"
                " permute the residues"
            )
        if 2**self.m < self.modulus:
            raise DimensionError(
                f"Second register of {self.m} qubits cannot hold residues"
                f" mod {self.modulus}"
            )
        if self.n < 1:
            raise DimensionError(f"First register needs qubits, got {self.n}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    @property
    def n_qubits(self) -> int:
        """Register width ``n + m``."""
        return self.n + self.m

    def image(self, j: int, t: int) -> tuple[int, int]:
        """Where the basis state ``(j, t)`` is sent."""
        if t >= self.modulus:
            return j, t
        power = modpow(self.x, j, self.modulus)
        return j, (t + self.sign * power) % self.modulus

    def permutation(self) -> npt.NDArray[np.int64]:
        """Destination index of every basis index of the register."""
        indices = np.arange(2**self.n_qubits, dtype=np.int64)
        j, t = indices >> self.m, indices & (2**self.m - 1)
        powers = modpow_array(self.x, j, self.modulus)
        shifted = (t + self.sign * powers) % self.modulus
        return np.where(t < self.modulus, (j << self.m) | shifted, indices)

    def inverse(self) -> PowerOracle:
        """The inverse permutation."""
        return PowerOracle(self.x, self.modulus, self.n, self.m, -self.sign)


Gate = UnitaryMatrix | PowerOracle


@dataclass(frozen=True)
class GateOp:
    """One gate applied to an ordered list of target qubits.

    Attributes:
        name: Mnemonic used for counting and display (``H``, ``CNOT``).
        gate: The matrix or permutation oracle.
        targets: Qubits the gate's factors map onto, in order.
        params: Angles or other parameters, for display.
    """

    name: str
    gate: Gate = field(compare=False)
    targets: tuple[int, ...]
    params: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        targets = tuple(int(t) for t in self.targets)
        object.__setattr__(self, "targets", targets)
        width = self.gate.n_qubits
        if len(self.targets) != width:
            raise InvalidTargetsError(
                f"{self.name} acts on {width} qubit(s), got targets"
                f" {self.targets}"
            )
        if len(set(self.targets)) != len(self.targets):
            raise InvalidTargetsError(
                f"{self.name} targets {self.targets} repeat a qubit"
            )

    def check(self, n_qubits: int) -> None:
        """Raise InvalidTargetsError unless valid in an n-qubit register."""
        if any(not 0 <= t < n_qubits for t in self.targets):
            raise InvalidTargetsError(
                f"{self.name} targets {self.targets} out of range for"
                f" {n_qubits} qubits"
            )

    def dagger(self) -> GateOp:
        """The inverse operation on the same targets."""
        if isinstance(self.gate, PowerOracle):
            inverse = self.gate.inverse()
        else:
            inverse = dagger(self.gate)
        params = tuple(-p for p in self.params)
        return GateOp(self.name, inverse, self.targets, params)

    def shifted(self, mapping: Sequence[int]) -> GateOp:
        """The same gate on ``mapping[t]`` for each target ``t``."""
        targets = tuple(mapping[t] for t in self.targets)
        return GateOp(self.name, self.gate, targets, self.params)


def h_op(q: int) -> GateOp:
    """Hadamard on qubit ``q``."""
    return GateOp("H", hadamard(), (q,))


def x_op(q: int) -> GateOp:
    """X on qubit ``q``."""
    return GateOp("X", pauli_x(), (q,))


def t_op(q: int, alpha: float) -> GateOp:
    """Twist ``T(alpha)`` on qubit ``q``."""
    return GateOp("T", twist(alpha), (q,), (alpha,))


def cnot_op(control: int, target: int) -> GateOp:
    """CNOT from ``control`` onto ``target``."""
    return GateOp("CNOT", cnot(), (control, target))


def cphase_op(control: int, target: int, alpha: float) -> GateOp:
    """Controlled phase between ``control`` and ``target``."""
    return GateOp(
        "CPHASE", controlled_phase(alpha), (control, target), (alpha,)
    )


def swap_op(a: int, b: int) -> GateOp:
    """SWAP of qubits ``a`` and ``b``."""
    return GateOp("SWAP", swap(), (a, b))


def swap_ops(a: int, b: int) -> list[GateOp]:
    """SWAP written as three CNOTs."""
    return [cnot_op(a, b), cnot_op(b, a), cnot_op(a, b)]


def controlled_phase_ops(
    control: int, target: int, alpha: float
) -> list[GateOp]:
    """Controlled phase written with CNOTs and twist gates.

    ``CP(alpha) = T_c(alpha/2) CNOT T_t(-alpha/2) CNOT T_t(alpha/2)``.
    """
    half = alpha / 2
    return [
        t_op(target, half),
        cnot_op(control, target),
        t_op(target, -half),
        cnot_op(control, target),
        t_op(control, half),
    ]


@dataclass
class Circuit:
    """An ordered gate sequence on a fixed-size register.

    Attributes:
        n_qubits: Register size.
        ops: Gate applications, applied left to right.
    """

    n_qubits: int
    ops: list[GateOp] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise DimensionError(
                f"Circuit needs at least 1 qubit, got {self.n_qubits}"
            )
        for op in self.ops:
            op.check(self.n_qubits)

    def append(self, op: GateOp) -> Circuit:
        """Add one op; returns self for chaining."""
        op.check(self.n_qubits)
        self.ops.append(op)
        return self

    def extend(self, ops: Iterable[GateOp]) -> Circuit:
        """Add several ops; returns self for chaining."""
        for op in ops:
            self.append(op)
        return self

    def gate_counts(self) -> Counter[str]:
        """How many times each mnemonic occurs."""
        return Counter(op.name for op in self.ops)

    def __len__(self) -> int:
        return len(self.ops)


def _apply_matrix(
    tensor: np.ndarray, matrix: np.ndarray, targets: tuple[int, ...]
) -> np.ndarray:
    """Contract ``matrix`` against the ``targets`` axes of ``tensor``.

    ``tensor`` has one axis of size 2 per qubit, optionally followed by
    batch axes that are carried through untouched.
    """
    k = len(targets)
    gate = matrix.reshape((2,) * (2 * k))
    moved = np.tensordot(
        gate, tensor, axes=(tuple(range(k, 2 * k)), targets)
    )
    return np.moveaxis(moved, tuple(range(k)), targets)


def _apply_permutation(
    tensor: np.ndarray, oracle: PowerOracle, targets: tuple[int, ...]
) -> np.ndarray:
    k = len(targets)
    front = np.moveaxis(tensor, targets, tuple(range(k)))
    shape = front.shape
    flat = front.reshape(2**k, -1)
    out = np.empty_like(flat)
    out[oracle.permutation()] = flat
    return np.moveaxis(out.reshape(shape), tuple(range(k)), targets)


def _apply_op(tensor: np.ndarray, op: GateOp) -> np.ndarray:
    if isinstance(op.gate, PowerOracle):
        return _apply_permutation(tensor, op.gate, op.targets)
    return _apply_matrix(tensor, op.gate.data, op.targets)


def apply_gate(s: StateVector, op: GateOp) -> StateVector:
    """Apply one gate to its targets inside the register.

    Equivalent to multiplying by the gate expanded to the whole register
    (see :func:`expand_gate`), in ``O(2**n)`` time and no matrix memory.

    Raises:
        InvalidTargetsError: If a target is outside the register.
    """
    op.check(s.n_qubits)
    tensor = s.amplitudes.reshape((2,) * s.n_qubits)
    return StateVector(_apply_op(tensor, op).reshape(-1))


def run_circuit(s: StateVector, c: Circuit) -> StateVector:
    """Apply every op of ``c`` to ``s``, left to right.

    Raises:
        DimensionError: If the register sizes differ.
        InvalidTargetsError: Propagated from :func:`apply_gate`.
    """
    if c.n_qubits != s.n_qubits:
        raise DimensionError(
            f"Circuit on {c.n_qubits} qubits cannot run on a"
            f" {s.n_qubits}-qubit state"
        )
    tensor = s.amplitudes.reshape((2,) * s.n_qubits)
    for index, op in enumerate(c.ops):
        op.check(s.n_qubits)
        logger.debug("op %d: %s on %s", index, op.name, op.targets)
        tensor = _apply_op(tensor, op)
    return StateVector(np.ascontiguousarray(tensor).reshape(-1))


def inverse_circuit(c: Circuit) -> Circuit:
    """Reverse the ops and invert each, undoing ``c``."""
    return Circuit(c.n_qubits, [op.dagger() for op in reversed(c.ops)])


def expand_gate(
    gate: UnitaryMatrix,
    targets: Sequence[int],
    n: int,
    max_qubits: int = DENSE_MAX_QUBITS,
) -> UnitaryMatrix:
    """The dense ``2**n`` matrix of ``gate`` acting on ``targets``.

    Built as ``P^dagger (gate (x) I ... (x) I) P`` with ``P`` the qubit
    reordering that brings ``targets`` to the front.

    Raises:
        RegisterTooLargeError: If ``n`` exceeds ``max_qubits``.
        InvalidTargetsError: If the targets do not fit the gate.
    """
    targets = list(targets)
    op = GateOp("U", gate, tuple(targets))
    op.check(n)
    if n > max_qubits:
        raise RegisterTooLargeError(
            f"Dense matrix of {n} qubits exceeds the cap of {max_qubits}"
        )
    k = len(targets)
    full = kron(gate, identity(2 ** (n - k)), max_qubits=max_qubits).data
    order = targets + [q for q in range(n) if q not in targets]
    axes = list(np.argsort(order))
    tensor = full.reshape((2,) * (2 * n))
    tensor = np.transpose(tensor, axes + [a + n for a in axes])
    return UnitaryMatrix(tensor.reshape(2**n, 2**n))


def circuit_unitary(
    c: Circuit, max_qubits: int = DENSE_MAX_QUBITS
) -> UnitaryMatrix:
    """The dense matrix a circuit induces, column ``k`` being ``C b_k``.

    Raises:
        RegisterTooLargeError: If the circuit exceeds ``max_qubits``.
    """
    n = c.n_qubits
    if n > max_qubits:
        raise RegisterTooLargeError(
            f"Dense matrix of {n} qubits exceeds the cap of {max_qubits}"
        )
    tensor = np.eye(2**n, dtype=np.complex128).reshape((2,) * n + (2**n,))
    for op in c.ops:
        tensor = _apply_op(tensor, op)
    return UnitaryMatrix(tensor.reshape(2**n, 2**n))
