"""Exception hierarchy shared across the simulator."""
from __future__ import annotations


class SimulatorError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatchError(SimulatorError):
    """Operands whose dimensions do not line up."""


class StageDimensionMismatchError(DimensionMismatchError):
    """A stage whose gates do not cover the circuit's register exactly."""

    def __init__(self, stage_index: int, message: str):
        super().__init__(f"stage {stage_index}: {message}")
        self.stage_index = stage_index


class NonUnitaryError(SimulatorError):
    """A matrix that fails the unitarity check."""

    def __init__(self, message: str, gate_name: str | None = None):
        super().__init__(message)
        self.gate_name = gate_name


class NotBijectiveError(SimulatorError):
    """A permutation table that is not a bijection."""


class ResourceLimitError(SimulatorError):
    """Refusal to allocate the full circuit matrix above the configured cap."""


class NotNormalizedError(SimulatorError):
    """A state vector whose squared amplitudes do not sum to one."""


class EmptyWireSetError(SimulatorError):
    """A partial measurement over no wires."""


class MalformedTableError(SimulatorError):
    """A function table that is neither one-to-one nor two-to-one with a mask."""


class NotTwoToOneError(SimulatorError):
    """An operation requiring a two-to-one table given a one-to-one table."""


class NotInvertibleError(SimulatorError):
    """Modular inverse of a non-coprime element."""


class NotCoprimeError(SimulatorError):
    """Multiplicative order of an element sharing a factor with the modulus."""


class InvalidInstanceError(SimulatorError):
    """A discrete-log instance violating its preconditions."""


class InvalidInputError(SimulatorError):
    """Factoring input that is even, prime, or otherwise out of contract."""


class TriesExhaustedError(SimulatorError):
    """Discrete-log sampling did not hit gcd(c, p-1) = 1 within the try budget."""


class AttemptsExhaustedError(SimulatorError):
    """Factoring did not find a usable base within the attempt budget."""


class ParseError(SimulatorError):
    """Circuit or table text that does not parse; carries the line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ValidationError(SimulatorError):
    """A parsed document that builds an inconsistent circuit."""
