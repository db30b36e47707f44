"""qalgo - State-vector simulation of Deutsch, the QFT and Shor."""

from qalgo.algorithms import (
    DeutschResult,
    FactorResult,
    OrderResult,
    ShorParams,
    deutsch,
    order_find_quantum,
    shor_factor,
)
from qalgo.circuit_file import load_circuit, parse_circuit
from qalgo.config import QalgoConfig
from qalgo.errors import QalgoError
from qalgo.fourier import qft_apply, qft_circuit, qft_dense
from qalgo.gates import Circuit, GateOp, apply_gate, run_circuit
from qalgo.linalg import UnitaryMatrix
from qalgo.register import ProbDist, RandomSource, StateVector

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "DeutschResult",
    "FactorResult",
    "GateOp",
    "OrderResult",
    "ProbDist",
    "QalgoConfig",
    "QalgoError",
    "RandomSource",
    "ShorParams",
    "StateVector",
    "UnitaryMatrix",
    "apply_gate",
    "deutsch",
    "load_circuit",
    "order_find_quantum",
    "parse_circuit",
    "qft_apply",
    "qft_circuit",
    "qft_dense",
    "run_circuit",
    "shor_factor",
]
