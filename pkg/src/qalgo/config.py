"""Configuration defaults for qalgo."""

from dataclasses import dataclass

TOLERANCE = 1e-10
SEPARABILITY_TOL = 1e-9
MAX_QUBITS = 26
DENSE_MAX_QUBITS = 12
DEFAULT_SEED = 42
DEFAULT_MAX_ATTEMPTS = 32
DEFAULT_MAX_TRIALS = 16


@dataclass
class QalgoConfig:
    """Central configuration with library-level defaults.

    Attributes:
        seed: Seed of the single random source a command draws from.
        shots: Number of sampled measurements for ``simulate``.
        max_attempts: Random bases tried by Shor before giving up.
        max_trials: Measurements per base during order finding.
        max_qubits: Largest register a state vector may span.
        dense_max_qubits: Largest register a dense matrix may span.
        tolerance: Unitarity and norm tolerance.
        workers: Thread pool size for concurrent order finding.
    """

    seed: int = DEFAULT_SEED
    shots: int = 0
    max_attempts: int = DEFAULT_MAX_ATTEMPTS
    max_trials: int = DEFAULT_MAX_TRIALS
    max_qubits: int = MAX_QUBITS
    dense_max_qubits: int = DENSE_MAX_QUBITS
    tolerance: float = TOLERANCE
    workers: int = 8
