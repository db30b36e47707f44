"""Deutsch's algorithm and Shor's factoring pipeline.

The classical number theory both rely on lives in
:mod:`qalgo.numtheory` and is re-exported here.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import StrEnum
from functools import lru_cache

import numpy as np
from more_itertools import first_true

from qalgo.config import (
    DEFAULT_MAX_ATTEMPTS,
    DEFAULT_MAX_TRIALS,
    MAX_QUBITS,
)
from qalgo.errors import (
    AttemptsExhaustedError,
    DimensionError,
    EvenModulusError,
    ModulusTooLargeError,
    ModulusTooSmallError,
    NotCoprimeError,
    OrderFindingError,
    PrimeModulusError,
    PrimePowerError,
    RegisterTooLargeError,
)
from qalgo.fourier import qft_apply, zeta_powers
from qalgo.gates import (
    Circuit,
    GateOp,
    PowerOracle,
    h_op,
    oracle_uf,
    run_circuit,
    x_op,
)
from qalgo.numtheory import (
    continued_fraction_convergents,
    gcd,
    is_prime,
    modpow,
    order_bruteforce,
    prime_power_base,
    reduce_to_order,
)
from qalgo.register import (
    ProbDist,
    RandomSource,
    StateVector,
    basis_state,
    marginal,
)

__all__ = [
    "AttemptOutcome",
    "DeutschResult",
    "FactorResult",
    "OrderResult",
    "ShorAttempt",
    "ShorParams",
    "Verdict",
    "check_modulus",
    "continued_fraction_convergents",
    "deutsch",
    "deutsch_circuit",
    "first_register_distribution",
    "gcd",
    "modpow",
    "order_bruteforce",
    "order_find_quantum",
    "order_table",
    "recover_order_from_sample",
    "shor_circuit",
    "shor_factor",
    "shor_peak_distribution",
    "shor_peak_probability",
    "shor_sizing",
    "shor_state_prepare",
]

logger = logging.getLogger(__name__)


class Verdict(StrEnum):
    """What Deutsch's algorithm concludes about f."""

    CONSTANT = "constant"
    BALANCED = "balanced"


@dataclass(frozen=True)
class DeutschResult:
    """Outcome of one run of Deutsch's algorithm.

    Attributes:
        verdict: Constant iff ``P(b_0) > 1 - 1e-9``.
        distribution: First-qubit distribution over ``{b_0, b_1}``.
        circuit: The circuit that was run.
    """

    verdict: Verdict
    distribution: ProbDist = field(compare=False)
    circuit: Circuit = field(compare=False, repr=False)


def deutsch_circuit(f_table: Sequence[int]) -> Circuit:
    """``(H (x) I) U_f (H (x) H) (I (x) X)`` as a 2-qubit circuit.

    Ops run right to left of the operator product; U_f appears once.
    """
    return Circuit(
        2,
        [
            x_op(1),
            h_op(0),
            h_op(1),
            GateOp("U_f", oracle_uf(f_table), (0, 1), tuple(f_table)),
            h_op(0),
        ],
    )


def deutsch(f_table: Sequence[int]) -> DeutschResult:
    """Decide whether ``f: {0,1} -> {0,1}`` is constant with one query.

    Args:
        f_table: ``(f(0), f(1))``.

    Returns:
        The verdict and the first qubit's final distribution.
    """
    circuit = deutsch_circuit(f_table)
    final = run_circuit(basis_state(2, 0), circuit)
    distribution = marginal(final, [0])
    if distribution[0] > 1 - 1e-9:
        verdict = Verdict.CONSTANT
    else:
        verdict = Verdict.BALANCED
    return DeutschResult(verdict, distribution, circuit)


def shor_sizing(modulus: int) -> tuple[int, int]:
    """Register sizes ``(n, m)`` with ``N^2 <= 2^n < 2 N^2`` and
    ``m = ceil(log2 N)``.

    Raises:
        ModulusTooSmallError: If ``modulus < 3``.
    """
    if modulus < 3:
        raise ModulusTooSmallError(
            f"Modulus must be at least 3, got {modulus}"
        )
    return (modulus * modulus - 1).bit_length(), (modulus - 1).bit_length()


@dataclass(frozen=True)
class ShorParams:
    """Inputs of one order-finding run.

    Attributes:
        modulus: N, the number to factor.
        x: Base in the unit group mod N.
        n: First-register qubits.
        m: Second-register qubits.
    """

    modulus: int
    x: int
    n: int
    m: int

    def __post_init__(self) -> None:
        n, m = shor_sizing(self.modulus)
        if (self.n, self.m) != (n, m):
            raise DimensionError(
                f"Registers ({self.n}, {self.m}) do not match the sizing"
                f" ({n}, {m}) for N = {self.modulus}"
            )
        if gcd(self.x % self.modulus, self.modulus) != 1:
            raise NotCoprimeError(
                f"{self.x} is not coprime to {self.modulus}"
            )

    @classmethod
    def for_modulus(cls, modulus: int, x: int) -> ShorParams:
        """Params with register sizes derived from ``modulus``."""
        n, m = shor_sizing(modulus)
        return cls(modulus, x, n, m)

    @property
    def n_qubits(self) -> int:
        """Total register width ``n + m``."""
        return self.n + self.m


@dataclass(frozen=True)
class OrderResult:
    """A verified order.

    Attributes:
        order: Least ``r >= 1`` with ``x^r == 1 (mod N)``.
        measured_c: First-register outcome that revealed it.
        trials_used: Measurements taken, including the successful one.
    """

    order: int
    measured_c: int
    trials_used: int


def shor_circuit(p: ShorParams) -> Circuit:
    """Steps 1 and 2: Hadamards on the first register, then ``U_x``."""
    oracle = PowerOracle(p.x, p.modulus, p.n, p.m)
    ops = [h_op(q) for q in range(p.n)]
    ops.append(GateOp("U_x", oracle, tuple(range(p.n_qubits)), (p.x,)))
    return Circuit(p.n_qubits, ops)


def shor_state_prepare(
    p: ShorParams, max_qubits: int = MAX_QUBITS
) -> StateVector:
    """``(1/sqrt 2^n) sum_j v_j (x) u_{x^j mod N}``.

    Raises:
        RegisterTooLargeError: If ``n + m`` exceeds ``max_qubits``.
    """
    if p.n_qubits > max_qubits:
        raise RegisterTooLargeError(
            f"Shor register of {p.n_qubits} qubits exceeds the cap of"
            f" {max_qubits}"
        )
    return run_circuit(basis_state(p.n_qubits, 0), shor_circuit(p))


@lru_cache(maxsize=64)
def first_register_distribution(
    p: ShorParams, max_qubits: int = MAX_QUBITS
) -> ProbDist:
    """Exact distribution of the first-register measurement (steps 1-4).

    The state is deterministic given ``p``, so the result is cached.
    """
    state = shor_state_prepare(p, max_qubits)
    transformed = qft_apply(state, range(p.n))
    return marginal(transformed, range(p.n))


def _peak_terms(
    c: np.ndarray, r: int, count: int, size: int
) -> np.ndarray:
    """``|sum_{k < count} e^{2 pi i r k c / size}|^2`` for each c."""
    k = np.arange(count)
    exponents = (r * np.outer(c, k)) % size
    return np.abs(zeta_powers(size, exponents).sum(axis=1)) ** 2


def shor_peak_probability(c: int, p: ShorParams, r: int, j0: int) -> float:
    """``P(v_c (x) u_{x^j0})`` from the closed form.

    The sum runs over the ``floor(2^n / r) + delta`` values of ``k`` with
    ``j0 + r k < 2^n``, where ``delta = 1`` iff ``j0 < 2^n mod r``. The
    unimodular prefactor ``e^{2 pi i j0 c / 2^n}`` drops out.

    Raises:
        ValueError: If ``j0`` is not in ``[0, r)``.
    """
    if not 0 <= j0 < r:
        raise ValueError(f"Residue {j0} outside [0, {r})")
    size = 2**p.n
    delta = 1 if j0 < size % r else 0
    count = size // r + delta
    value = _peak_terms(np.array([c]), r, count, size)[0]
    return float(value / size**2)


def shor_peak_distribution(p: ShorParams, r: int) -> ProbDist:
    """The closed form summed over ``j0``, for every outcome c."""
    size = 2**p.n
    c = np.arange(size)
    short, extra = divmod(size, r)
    probs = (r - extra) * _peak_terms(c, r, short, size)
    if extra:
        probs += extra * _peak_terms(c, r, short + 1, size)
    return ProbDist(probs / size**2)


def recover_order_from_sample(
    c: int, n: int, modulus: int, x: int
) -> int | None:
    """Recover the order of ``x`` from a first-register outcome.

    Walks the continued-fraction convergents ``t/q`` of ``c / 2^n`` with
    ``q < N`` in increasing ``q``; for each, tries ``q`` and its
    multiples below ``N`` against ``x^r == 1``. A hit is reduced to the
    least such exponent.

    Returns:
        The order, or None when ``c`` carries no usable information.
    """
    size = 2**n
    if not 0 <= c < size:
        raise ValueError(f"Outcome {c} outside [0, {size})")
    if c == 0:
        return None
    for t, q in continued_fraction_convergents(c, size, modulus - 1):
        if t == 0:
            continue
        hit = first_true(
            range(q, modulus, q),
            pred=lambda r: modpow(x, r, modulus) == 1,
        )
        if hit is not None:
            return reduce_to_order(x, hit, modulus)
    return None


def order_find_quantum(
    p: ShorParams,
    rng: RandomSource,
    max_trials: int = DEFAULT_MAX_TRIALS,
    max_qubits: int = MAX_QUBITS,
) -> OrderResult:
    """Find the order of ``p.x`` by simulated measurement.

    Each trial measures the first register and tries to recover the
    order from the outcome.

    Raises:
        OrderFindingError: If ``max_trials`` measurements all fail.
    """
    if max_trials < 1:
        raise ValueError(f"max_trials must be positive, got {max_trials}")
    dist = first_register_distribution(p, max_qubits)
    for trial in range(1, max_trials + 1):
        c = rng.sample_index(dist.probs)
        r = recover_order_from_sample(c, p.n, p.modulus, p.x)
        if r is None and c == 0 and p.x % p.modulus == 1:
            r = 1
        logger.debug(
            "N=%d x=%d trial %d: c=%d -> r=%s", p.modulus, p.x, trial, c, r
        )
        if r is not None and modpow(p.x, r, p.modulus) == 1:
            logger.info("Order of %d mod %d is %d", p.x, p.modulus, r)
            return OrderResult(r, c, trial)
    raise OrderFindingError(
        f"No order of {p.x} mod {p.modulus} recovered in {max_trials}"
        " trials"
    )


def order_table(
    modulus: int,
    seed: int,
    workers: int = 8,
    max_trials: int = DEFAULT_MAX_TRIALS,
    max_qubits: int = MAX_QUBITS,
) -> dict[int, OrderResult]:
    """Quantum order of every base coprime to ``modulus``.

    Bases run concurrently, each with its own source spawned from
    ``seed``.

    Raises:
        RegisterTooLargeError: If the Shor register for ``modulus``
            exceeds ``max_qubits``.
        OrderFindingError: If some base runs out of trials.
    """
    n, m = shor_sizing(modulus)
    if n + m > max_qubits:
        raise RegisterTooLargeError(
            f"Shor register of {n + m} qubits exceeds the cap of"
            f" {max_qubits}"
        )
    bases = [x for x in range(1, modulus) if gcd(x, modulus) == 1]
    sources = RandomSource(seed).spawn(len(bases))

    def find_one(job: tuple[int, RandomSource]) -> OrderResult:
        x, rng = job
        params = ShorParams.for_modulus(modulus, x)
        return order_find_quantum(params, rng, max_trials, max_qubits)

    with ThreadPoolExecutor(max_workers=min(len(bases), workers)) as exe:
        results = list(exe.map(find_one, zip(bases, sources)))
    return dict(zip(bases, results))


class AttemptOutcome(StrEnum):
    """How one Shor attempt ended."""

    CLASSICAL = "classical"
    FACTORED = "factored"
    ODD_ORDER = "odd-order"
    TRIVIAL_ROOT = "trivial-root"
    NO_ORDER = "no-order"


@dataclass(frozen=True)
class ShorAttempt:
    """Log entry for one random base.

    Attributes:
        index: 1-based attempt number.
        x: The base drawn.
        outcome: How the attempt ended.
        measured_c: Outcome that revealed the order, if any.
        order: Recovered order, if any.
        factor: Nontrivial factor found, if any.
    """

    index: int
    x: int
    outcome: AttemptOutcome
    measured_c: int | None = None
    order: int | None = None
    factor: int | None = None


@dataclass(frozen=True)
class FactorResult:
    """A nontrivial factorization ``p * q == N``.

    Attributes:
        p: First factor.
        q: Second factor.
        attempts: Every attempt, the successful one last.
    """

    p: int
    q: int
    attempts: list[ShorAttempt] = field(default_factory=list)


def check_modulus(modulus: int, max_qubits: int = MAX_QUBITS) -> None:
    """Reject moduli Shor's pipeline cannot or need not handle.

    Raises:
        ModulusTooSmallError: ``modulus < 3``.
        EvenModulusError: ``modulus`` is even.
        PrimeModulusError: ``modulus`` is prime.
        PrimePowerError: ``modulus`` is ``p^k`` with ``k >= 2``.
        ModulusTooLargeError: ``n + m`` exceeds ``max_qubits``.
    """
    if modulus < 3:
        raise ModulusTooSmallError(
            f"Modulus must be at least 3, got {modulus}"
        )
    if modulus % 2 == 0:
        raise EvenModulusError(f"Modulus {modulus} is even; 2 divides it")
    if is_prime(modulus):
        raise PrimeModulusError(f"Modulus {modulus} is prime")
    base = prime_power_base(modulus)
    if base is not None:
        raise PrimePowerError(f"Modulus {modulus} is a power of {base}")
    n, m = shor_sizing(modulus)
    if n + m > max_qubits:
        raise ModulusTooLargeError(
            f"Modulus {modulus} needs {n + m} qubits, more than the cap of"
            f" {max_qubits}"
        )


def shor_factor(
    modulus: int,
    rng: RandomSource,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
    max_trials: int = DEFAULT_MAX_TRIALS,
    max_qubits: int = MAX_QUBITS,
) -> FactorResult:
    """Factor an odd composite ``modulus`` with Shor's pipeline.

    Each attempt draws a base ``x`` in ``[2, N-1]``. A base sharing a
    factor with N is a classical win. Otherwise the quantum order ``r``
    is found; odd ``r`` or ``x^{r/2} == -1`` discard the base, and any
    other ``r`` yields ``gcd(x^{r/2} -+ 1, N)``.

    Raises:
        PreconditionError: See :func:`check_modulus`.
        AttemptsExhaustedError: If every attempt is discarded.
    """
    check_modulus(modulus, max_qubits)
    attempts: list[ShorAttempt] = []
    for index in range(1, max_attempts + 1):
        x = rng.integers(2, modulus)
        shared = gcd(x, modulus)
        if shared > 1:
            attempts.append(
                ShorAttempt(index, x, AttemptOutcome.CLASSICAL, factor=shared)
            )
            return FactorResult(shared, modulus // shared, attempts)

        params = ShorParams.for_modulus(modulus, x)
        try:
            found = order_find_quantum(params, rng, max_trials, max_qubits)
        except OrderFindingError:
            logger.warning("Attempt %d: no order found for x=%d", index, x)
            attempts.append(ShorAttempt(index, x, AttemptOutcome.NO_ORDER))
            continue

        r, c = found.order, found.measured_c
        if r % 2:
            logger.warning("Attempt %d: x=%d has odd order %d", index, x, r)
            attempts.append(
                ShorAttempt(index, x, AttemptOutcome.ODD_ORDER, c, r)
            )
            continue
        half = modpow(x, r // 2, modulus)
        if half == modulus - 1:
            logger.warning(
                "Attempt %d: x=%d gives x^(r/2) = -1 mod %d", index, x, modulus
            )
            attempts.append(
                ShorAttempt(index, x, AttemptOutcome.TRIVIAL_ROOT, c, r)
            )
            continue

        p, q = gcd(half - 1, modulus), gcd(half + 1, modulus)
        if p * q != modulus:
            q = modulus // p
        attempts.append(
            ShorAttempt(index, x, AttemptOutcome.FACTORED, c, r, factor=p)
        )
        logger.info("Factored %d = %d * %d", modulus, p, q)
        return FactorResult(p, q, attempts)

    raise AttemptsExhaustedError(
        f"No factor of {modulus} found in {max_attempts} attempts", attempts
    )
