"""Exception hierarchy for qalgo.

Every error derives from :class:`QalgoError` and from the builtin it
refines, so ``except ValueError`` keeps working for callers that do not
care about the finer kinds.
"""


class QalgoError(Exception):
    """Base class of all qalgo errors."""


class DimensionError(QalgoError, ValueError):
    """Operands have incompatible or invalid dimensions."""


class RegisterTooLargeError(QalgoError, ValueError):
    """A register or dense matrix exceeds the configured qubit cap."""


class NotUnitaryError(QalgoError, ValueError):
    """A user-supplied matrix is not unitary within tolerance."""


class InvalidStateError(QalgoError, ValueError):
    """A state vector is not a finite unit vector."""


class InvalidTargetsError(QalgoError, ValueError):
    """Gate targets are repeated, out of range, or the wrong count."""


class CircuitParseError(QalgoError, ValueError):
    """A circuit file line could not be parsed.

    Attributes:
        line_number: 1-based line of the offending instruction, or
            None when the error concerns the file as a whole.
    """

    def __init__(self, message: str, line_number: int | None = None) -> None:
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class MissingHeaderError(CircuitParseError):
    """The file does not open with a QUBITS directive."""


class UnknownMnemonicError(CircuitParseError):
    """The instruction mnemonic is not part of the grammar."""


class QubitIndexError(CircuitParseError):
    """A qubit index is out of range or repeated."""


class MalformedNumberError(CircuitParseError):
    """An operand is not a valid integer or finite real."""


class MalformedInstructionError(CircuitParseError):
    """An instruction has the wrong number of operands."""


class PreconditionError(QalgoError, ValueError):
    """Input to the factoring pipeline violates a precondition."""


class EvenModulusError(PreconditionError):
    """The modulus is even."""


class PrimeModulusError(PreconditionError):
    """The modulus is prime and has no nontrivial factors."""


class PrimePowerError(PreconditionError):
    """The modulus is a power of a single prime."""


class ModulusTooSmallError(PreconditionError):
    """The modulus is too small to be an odd composite."""


class ModulusTooLargeError(PreconditionError):
    """The modulus needs more qubits than the register cap allows."""


class NotCoprimeError(PreconditionError):
    """The base shares a factor with the modulus."""


class OrderFindingError(QalgoError, RuntimeError):
    """Order finding ran out of measurement trials."""


class AttemptsExhaustedError(QalgoError, RuntimeError):
    """Shor's pipeline ran out of random bases.

    Attributes:
        attempts: Log of every attempt made before giving up.
    """

    def __init__(self, message: str, attempts: list | None = None) -> None:
        self.attempts = attempts if attempts is not None else []
        super().__init__(message)
