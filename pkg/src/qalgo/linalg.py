"""Complex vectors and matrices: the substrate every other module uses.

Vectors are plain one-dimensional ``complex128`` numpy arrays. Matrices
that act as gates are wrapped in :class:`UnitaryMatrix`, which owns a
read-only copy of its entries.

Ordering convention: the basis index of an n-qubit state is
``i = sum(bit_k * 2**(n - 1 - k))`` with qubit 0 the leftmost tensor
factor, so ``kron_vec(u, v)[i * len(v) + k] == u[i] * v[k]``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from qalgo.config import DENSE_MAX_QUBITS, MAX_QUBITS, TOLERANCE
from qalgo.errors import (
    DimensionError,
    NotUnitaryError,
    RegisterTooLargeError,
)

CVector = npt.NDArray[np.complex128]
CMatrix = npt.NDArray[np.complex128]


def as_vector(values: Sequence[complex] | npt.ArrayLike) -> CVector:
    """Coerce ``values`` to a finite, non-empty complex vector.

    Args:
        values: Anything numpy can turn into a 1-D array.

    Returns:
        A new ``complex128`` array.

    Raises:
        DimensionError: If the input is not one-dimensional, is empty,
            or holds NaN or infinite entries.
    """
    vector = np.array(values, dtype=np.complex128)
    if vector.ndim != 1 or vector.size == 0:
        raise DimensionError(
            f"Expected a non-empty 1-D vector, got shape {vector.shape}"
        )
    if not np.all(np.isfinite(vector)):
        raise DimensionError("Vector entries must be finite")
    return vector


def _check_square(matrix: np.ndarray) -> None:
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(
            f"Expected a square matrix, got shape {matrix.shape}"
        )
    if matrix.shape[0] == 0:
        raise DimensionError("Matrix dimension must be at least 1")


def _qubits_for(dim: int) -> int:
    """Qubits needed to hold ``dim`` amplitudes (ceil log2)."""
    return (dim - 1).bit_length()


@dataclass(frozen=True, eq=False)
class UnitaryMatrix:
    """A square complex matrix with ``U @ U^dagger == I``.

    Constructing directly trusts the caller (library gates are unitary
    by construction). Use :meth:`from_array` for user input, which runs
    :func:`is_unitary`.

    Attributes:
        data: Read-only ``dim x dim`` complex array.
    """

    data: CMatrix

    def __post_init__(self) -> None:
        matrix = np.array(self.data, dtype=np.complex128)
        _check_square(matrix)
        if not np.all(np.isfinite(matrix)):
            raise DimensionError("Matrix entries must be finite")
        matrix.setflags(write=False)
        object.__setattr__(self, "data", matrix)

    @classmethod
    def from_array(
        cls, array: npt.ArrayLike, tol: float = TOLERANCE
    ) -> UnitaryMatrix:
        """Build a UnitaryMatrix from user input, checking unitarity.

        Args:
            array: Square matrix entries.
            tol: Max-norm tolerance on ``U @ U^dagger - I``.

        Returns:
            The validated matrix.

        Raises:
            DimensionError: If the input is not a finite square matrix.
            NotUnitaryError: If the unitarity check fails.
        """
        matrix = np.array(array, dtype=np.complex128)
        _check_square(matrix)
        if not is_unitary(matrix, tol):
            raise NotUnitaryError(
                f"Matrix of dimension {matrix.shape[0]} is not unitary"
                f" within {tol:g}"
            )
        return cls(matrix)

    @property
    def dim(self) -> int:
        """Matrix dimension."""
        return self.data.shape[0]

    @property
    def n_qubits(self) -> int:
        """Number of qubits the matrix acts on (dimension must be 2^k)."""
        if self.dim & (self.dim - 1):
            raise DimensionError(
                f"Dimension {self.dim} is not a power of two"
            )
        return _qubits_for(self.dim)

    def __matmul__(self, other: UnitaryMatrix) -> UnitaryMatrix:
        if not isinstance(other, UnitaryMatrix):
            return NotImplemented
        if self.dim != other.dim:
            raise DimensionError(
                f"Cannot compose dimensions {self.dim} and {other.dim}"
            )
        return UnitaryMatrix(self.data @ other.data)

    def allclose(self, other: UnitaryMatrix, atol: float = 1e-12) -> bool:
        """Entrywise comparison within ``atol``."""
        return self.dim == other.dim and bool(
            np.allclose(self.data, other.data, rtol=0.0, atol=atol)
        )


def identity(dim: int) -> UnitaryMatrix:
    """The ``dim x dim`` identity."""
    return UnitaryMatrix(np.eye(dim, dtype=np.complex128))


def kron(
    a: UnitaryMatrix,
    b: UnitaryMatrix,
    max_qubits: int = DENSE_MAX_QUBITS,
) -> UnitaryMatrix:
    """Kronecker product ``a (x) b``, the composition of two systems.

    ``result[i * dim(b) + k, j * dim(b) + l] == a[i, j] * b[k, l]``.

    Raises:
        RegisterTooLargeError: If the product spans more than
            ``max_qubits`` qubits.
    """
    dim = a.dim * b.dim
    if _qubits_for(dim) > max_qubits:
        raise RegisterTooLargeError(
            f"Kronecker product of dimension {dim} exceeds the dense cap"
            f" of {max_qubits} qubits"
        )
    return UnitaryMatrix(np.kron(a.data, b.data))


def kron_vec(
    u: npt.ArrayLike, v: npt.ArrayLike, max_qubits: int = MAX_QUBITS
) -> CVector:
    """Kronecker product of two vectors, ``u[i] * v[k]`` at ``i*len(v)+k``.

    Raises:
        RegisterTooLargeError: If the result spans more than
            ``max_qubits`` qubits.
    """
    u, v = as_vector(u), as_vector(v)
    dim = u.size * v.size
    if _qubits_for(dim) > max_qubits:
        raise RegisterTooLargeError(
            f"Vector of dimension {dim} exceeds {max_qubits} qubits"
        )
    return np.kron(u, v)


def matvec(m: UnitaryMatrix, v: npt.ArrayLike) -> CVector:
    """Matrix-vector product ``m @ v``.

    Raises:
        DimensionError: If the dimensions differ.
    """
    v = as_vector(v)
    if m.dim != v.size:
        raise DimensionError(
            f"Matrix of dimension {m.dim} cannot act on a vector of"
            f" dimension {v.size}"
        )
    return m.data @ v


def inner(u: npt.ArrayLike, v: npt.ArrayLike) -> complex:
    """Inner product, conjugate-linear in the first argument.

    Raises:
        DimensionError: If the dimensions differ.
    """
    u, v = as_vector(u), as_vector(v)
    if u.size != v.size:
        raise DimensionError(
            f"Cannot take the inner product of dimensions {u.size}"
            f" and {v.size}"
        )
    return complex(np.vdot(u, v))


def norm_squared(v: npt.ArrayLike) -> float:
    """Squared Euclidean norm."""
    v = as_vector(v)
    return float(np.vdot(v, v).real)


def dagger(m: UnitaryMatrix) -> UnitaryMatrix:
    """Conjugate transpose."""
    return UnitaryMatrix(m.data.conj().T)


def is_unitary(m: UnitaryMatrix | npt.ArrayLike, tol: float) -> bool:
    """Whether the max-norm of ``m @ m^dagger - I`` is at most ``tol``.

    Args:
        m: Square complex matrix, wrapped or raw.
        tol: Positive tolerance.

    Returns:
        True if ``m`` is unitary within ``tol``. Non-square or
        non-finite input is never unitary.

    Raises:
        ValueError: If ``tol`` is not positive.
    """
    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, got {tol}")
    matrix = m.data if isinstance(m, UnitaryMatrix) else np.asarray(m)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        return False
    if not np.all(np.isfinite(matrix)):
        return False
    residual = matrix @ matrix.conj().T - np.eye(matrix.shape[0])
    return bool(np.max(np.abs(residual), initial=0.0) <= tol)
