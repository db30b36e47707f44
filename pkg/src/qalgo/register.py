"""n-qubit registers: states, probabilities and measurement."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from qalgo.config import MAX_QUBITS, SEPARABILITY_TOL, TOLERANCE
from qalgo.errors import (
    DimensionError,
    InvalidStateError,
    InvalidTargetsError,
    RegisterTooLargeError,
)
from qalgo.linalg import CVector, as_vector, kron_vec, norm_squared

logger = logging.getLogger(__name__)

# Outcomes below this probability are never sampled.
DEAD_BRANCH = 1e-15


@dataclass(frozen=True, eq=False)
class StateVector:
    """A unit vector of ``2**n_qubits`` amplitudes.

    Attributes:
        amplitudes: Read-only complex amplitudes, basis index ordered
            with qubit 0 as the most significant bit.
    """

    amplitudes: CVector

    def __post_init__(self) -> None:
        vector = as_vector(self.amplitudes)
        if vector.size < 2 or vector.size & (vector.size - 1):
            raise DimensionError(
                f"State dimension {vector.size} is not 2^n with n >= 1"
            )
        if abs(norm_squared(vector) - 1.0) > TOLERANCE:
            raise InvalidStateError(
                f"State has squared norm {norm_squared(vector):.15g},"
                " expected 1"
            )
        vector.setflags(write=False)
        object.__setattr__(self, "amplitudes", vector)

    @classmethod
    def normalized(cls, values: npt.ArrayLike) -> StateVector:
        """Build a state from any non-zero vector by normalizing it."""
        vector = as_vector(values)
        norm = np.linalg.norm(vector)
        if norm == 0.0:
            raise InvalidStateError("Cannot normalize the zero vector")
        return cls(vector / norm)

    @property
    def n_qubits(self) -> int:
        """Register size."""
        return self.amplitudes.size.bit_length() - 1

    @property
    def dim(self) -> int:
        """Number of amplitudes."""
        return self.amplitudes.size

    def tensor(self, other: StateVector) -> StateVector:
        """The product state ``self (x) other``."""
        return StateVector(kron_vec(self.amplitudes, other.amplitudes))

    def bitstring(self, index: int) -> str:
        """Basis index as bits, qubit 0 leftmost."""
        return format(index, f"0{self.n_qubits}b")


@dataclass(frozen=True, eq=False)
class ProbDist:
    """Probabilities over basis indices.

    Attributes:
        probs: Read-only non-negative reals summing to 1.
    """

    probs: npt.NDArray[np.float64]

    def __post_init__(self) -> None:
        probs = np.array(self.probs, dtype=np.float64)
        if probs.ndim != 1 or probs.size == 0:
            raise DimensionError(
                f"Expected a non-empty 1-D distribution, got {probs.shape}"
            )
        if np.any(probs < 0.0) or np.any(probs > 1.0 + 1e-12):
            raise InvalidStateError("Probabilities must lie in [0, 1]")
        if abs(probs.sum() - 1.0) > TOLERANCE:
            raise InvalidStateError(
                f"Probabilities sum to {probs.sum():.15g}, expected 1"
            )
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    def __len__(self) -> int:
        return self.probs.size

    def __getitem__(self, index: int) -> float:
        return float(self.probs[index])

    def support(self, threshold: float = 0.0) -> list[int]:
        """Indices with probability above ``threshold``."""
        return [int(i) for i in np.flatnonzero(self.probs > threshold)]


@dataclass
class RandomSource:
    """Seeded generator behind every measurement.

    Identical seeds yield identical draw sequences. A source is owned by
    one caller at a time; concurrent sampling uses :meth:`spawn`.

    Attributes:
        seed: Unsigned 64-bit seed.
    """

    seed: int
    _generator: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not 0 <= self.seed < 2**64:
            raise ValueError(
                f"Seed must be an unsigned 64-bit integer, got {self.seed}"
            )
        self._generator = np.random.default_rng(self.seed)

    def uniform(self, size: int | None = None) -> float | np.ndarray:
        """Draw from ``[0, 1)``."""
        return self._generator.random(size)

    def integers(self, low: int, high: int) -> int:
        """Draw an integer from ``[low, high)``."""
        return int(self._generator.integers(low, high))

    def spawn(self, count: int) -> list[RandomSource]:
        """Derive ``count`` independent sources from this seed."""
        children = np.random.SeedSequence(self.seed).spawn(count)
        return [
            RandomSource(int(child.generate_state(1, np.uint64)[0]))
            for child in children
        ]

    def sample_indices(
        self, probs: npt.ArrayLike, size: int
    ) -> npt.NDArray[np.int64]:
        """Inverse-CDF sampling of ``size`` indices from ``probs``.

        Entries below the dead-branch threshold are never drawn.
        """
        weights = np.array(probs, dtype=np.float64)
        weights[weights < DEAD_BRANCH] = 0.0
        cdf = np.cumsum(weights)
        draws = self._generator.random(size) * cdf[-1]
        indices = np.searchsorted(cdf, draws, side="right")
        return np.minimum(indices, weights.size - 1)

    def sample_index(self, probs: npt.ArrayLike) -> int:
        """Inverse-CDF sampling of a single index."""
        return int(self.sample_indices(probs, 1)[0])


def basis_state(
    n: int, index: int, max_qubits: int = MAX_QUBITS
) -> StateVector:
    """The computational basis state ``b_index`` of an n-qubit register.

    Raises:
        DimensionError: If ``n < 1`` or ``index`` is out of range.
        RegisterTooLargeError: If ``n`` exceeds ``max_qubits``.
    """
    if n < 1:
        raise DimensionError(f"Register needs at least 1 qubit, got {n}")
    if n > max_qubits:
        raise RegisterTooLargeError(
            f"Register of {n} qubits exceeds the cap of {max_qubits}"
        )
    if not 0 <= index < 2**n:
        raise DimensionError(
            f"Basis index {index} out of range for {n} qubits"
        )
    amplitudes = np.zeros(2**n, dtype=np.complex128)
    amplitudes[index] = 1.0
    return StateVector(amplitudes)


def probabilities(s: StateVector) -> ProbDist:
    """Born rule: ``probs[i] == |c_i|**2``.

    Entries are clipped into [0, 1], so a state at the edge of the norm
    tolerance still yields a valid distribution.
    """
    return ProbDist(np.clip(np.abs(s.amplitudes) ** 2, 0.0, 1.0))


def measure_all(s: StateVector, rng: RandomSource) -> int:
    """Measure every qubit and return the basis index observed."""
    return rng.sample_index(probabilities(s).probs)


def sample_counts(
    s: StateVector, shots: int, rng: RandomSource
) -> dict[int, int]:
    """Measure ``shots`` fresh copies of ``s``.

    Returns:
        Mapping from basis index to count, for indices drawn at least
        once, in increasing index order.
    """
    if shots <= 0:
        return {}
    draws = rng.sample_indices(probabilities(s).probs, shots)
    values, counts = np.unique(draws, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}


def check_qubit_subset(n_qubits: int, qubits: Sequence[int]) -> list[int]:
    """Validate a non-empty set of distinct in-range qubit indices."""
    qubits = [int(q) for q in qubits]
    if not qubits:
        raise InvalidTargetsError("Qubit subset cannot be empty")
    if len(set(qubits)) != len(qubits):
        raise InvalidTargetsError(f"Qubit subset {qubits} has repeats")
    if any(not 0 <= q < n_qubits for q in qubits):
        raise InvalidTargetsError(
            f"Qubit subset {qubits} out of range for {n_qubits} qubits"
        )
    return qubits


def marginal(s: StateVector, qubits: Sequence[int]) -> ProbDist:
    """Distribution of the outcome of measuring ``qubits``.

    Outcome ``o`` reads the measured bits in the order given, the first
    listed qubit being the most significant bit of ``o``.

    Raises:
        InvalidTargetsError: If the subset is empty, repeats a qubit or
            is out of range.
    """
    qubits = check_qubit_subset(s.n_qubits, qubits)
    n = s.n_qubits
    probs = (np.abs(s.amplitudes) ** 2).reshape([2] * n)
    traced = tuple(q for q in range(n) if q not in qubits)
    if traced:
        probs = probs.sum(axis=traced)
    kept = sorted(qubits)
    order = [kept.index(q) for q in qubits]
    probs = np.transpose(probs, order).reshape(-1)
    return ProbDist(np.clip(probs, 0.0, 1.0))


def _outcome_mask(
    n: int, qubits: list[int], outcome: int
) -> npt.NDArray[np.bool_]:
    """Full basis indices whose ``qubits`` bits read ``outcome``."""
    indices = np.arange(2**n)
    mask = np.ones(2**n, dtype=bool)
    width = len(qubits)
    for position, q in enumerate(qubits):
        bit = (outcome >> (width - 1 - position)) & 1
        mask &= ((indices >> (n - 1 - q)) & 1) == bit
    return mask


def measure_subset(
    s: StateVector, qubits: Sequence[int], rng: RandomSource
) -> tuple[tuple[int, ...], StateVector]:
    """Measure ``qubits`` and collapse the rest of the register.

    Returns:
        The observed bits in the order of ``qubits``, and the state
        projected onto that outcome and renormalized.

    Raises:
        InvalidTargetsError: As :func:`marginal`.
    """
    qubits = check_qubit_subset(s.n_qubits, qubits)
    dist = marginal(s, qubits)
    outcome = rng.sample_index(dist.probs)
    mask = _outcome_mask(s.n_qubits, qubits, outcome)
    collapsed = np.where(mask, s.amplitudes, 0.0)
    collapsed /= np.sqrt(dist.probs[outcome])
    width = len(qubits)
    bits = tuple((outcome >> (width - 1 - p)) & 1 for p in range(width))
    logger.debug("Measured qubits %s -> %s", qubits, bits)
    return bits, StateVector.normalized(collapsed)


def _require_two_qubits(s: StateVector) -> npt.NDArray[np.complex128]:
    if s.n_qubits != 2:
        raise DimensionError(
            f"Separability test needs 2 qubits, got {s.n_qubits}"
        )
    return s.amplitudes.reshape(2, 2)


def is_separable_2q(s: StateVector, tol: float = SEPARABILITY_TOL) -> bool:
    """Whether a 2-qubit state is a Kronecker product ``u (x) v``.

    The reshaped amplitude matrix ``[[c0, c1], [c2, c3]]`` has rank one
    exactly when its determinant ``c0*c3 - c1*c2`` vanishes.

    Raises:
        DimensionError: If ``s`` is not a 2-qubit state.
    """
    c = _require_two_qubits(s)
    return bool(abs(c[0, 0] * c[1, 1] - c[0, 1] * c[1, 0]) <= tol)


def factor_product_state(s: StateVector) -> tuple[CVector, CVector]:
    """Recover unit ``u, v`` with ``kron_vec(u, v) == s`` up to phase.

    Only meaningful when :func:`is_separable_2q` holds; for entangled
    input the result is the closest rank-one guess.

    Raises:
        DimensionError: If ``s`` is not a 2-qubit state.
    """
    c = _require_two_qubits(s)
    row = int(np.argmax(np.linalg.norm(c, axis=1)))
    v = c[row] / np.linalg.norm(c[row])
    u = c @ v.conj()
    return u / np.linalg.norm(u), v


def equal_up_to_global_phase(
    a: StateVector | npt.ArrayLike,
    b: StateVector | npt.ArrayLike,
    tol: float = 1e-9,
) -> bool:
    """Compare states as rays: equal if ``a == e^{i phi} b``.

    The phase is fixed at the largest-magnitude amplitude of ``a``.
    """
    a = a.amplitudes if isinstance(a, StateVector) else as_vector(a)
    b = b.amplitudes if isinstance(b, StateVector) else as_vector(b)
    if a.size != b.size:
        return False
    pivot = int(np.argmax(np.abs(a)))
    if abs(b[pivot]) <= tol:
        return bool(np.max(np.abs(a - b)) <= tol)
    phase = a[pivot] / b[pivot]
    phase /= abs(phase)
    return bool(np.max(np.abs(a - phase * b)) <= tol)
