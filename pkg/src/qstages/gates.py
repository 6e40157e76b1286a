"""Gate constructors: named unitaries spanning one group of register wires.

The CNOT convention follows the composite-index layout: the CONTROL is the
high-order (first) wire, the target the low-order wire, which is what makes
its matrix swap the |10> and |11> basis states.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import DimensionMismatchError, NonUnitaryError, NotBijectiveError
from .linalg import UNITARY_TOL, as_matrix, is_unitary, tensor_chain

_SQRT1_2 = 1.0 / math.sqrt(2.0)

_NOT_1 = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_HADAMARD_1 = np.array([[1, 1], [1, -1]], dtype=np.complex128) * _SQRT1_2
_CNOT = np.array(
    [[1, 0, 0, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0]],
    dtype=np.complex128,
)


@dataclass(frozen=True)
class Gate:
    """A named unitary acting on a contiguous wire group."""

    name: str
    wire_dims: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        wire_dims = tuple(int(d) for d in self.wire_dims)
        matrix = np.asarray(self.matrix, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionMismatchError(f"gate {self.name!r}: matrix shape {matrix.shape} is not square")
        if matrix.shape[0] != prod(wire_dims):
            raise DimensionMismatchError(
                f"gate {self.name!r}: matrix dimension {matrix.shape[0]} "
                f"does not match wire dims {wire_dims}"
            )
        matrix.flags.writeable = False
        object.__setattr__(self, "wire_dims", wire_dims)
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def gate_not(k: int) -> Gate:
    """k-qubit NOT: the anti-diagonal 0/1 matrix, equal to the k-fold tensor of X."""
    if k < 1:
        raise DimensionMismatchError("NOT gate needs at least one wire")
    matrix = np.fliplr(np.eye(2**k, dtype=np.complex128))
    return Gate("not", (2,) * k, matrix)


def gate_hadamard(k: int) -> Gate:
    """k-fold tensor of the one-qubit Hadamard."""
    if k < 1:
        raise DimensionMismatchError("Hadamard gate needs at least one wire")
    matrix = tensor_chain([_HADAMARD_1] * k)
    return Gate("h", (2,) * k, matrix)


def gate_cnot() -> Gate:
    """Controlled NOT on two qubits; control on the high-order wire."""
    return Gate("cnot", (2, 2), _CNOT.copy())


def gate_identity(d: int) -> Gate:
    """Identity on a single wire of dimension d."""
    if d < 2:
        raise DimensionMismatchError("identity wire dimension must be >= 2")
    return Gate("id", (d,), np.eye(d, dtype=np.complex128))


def gate_identity_on(wire_dims) -> Gate:
    """Identity spanning several wires at once (pads stages around active gates)."""
    wire_dims = tuple(int(d) for d in wire_dims)
    if not wire_dims or any(d < 2 for d in wire_dims):
        raise DimensionMismatchError(f"identity wire dimensions must all be >= 2, got {wire_dims}")
    return Gate("id", wire_dims, np.eye(prod(wire_dims), dtype=np.complex128))


def gate_qft(d: int) -> Gate:
    """Fourier transform over Z_d: entries omega^(x*y)/sqrt(d), omega = exp(2 pi i/d).

    d does not need to be a power of two; the gate spans a single
    d-dimensional wire.  At d = 2 this is exactly the Hadamard.
    """
    if d < 2:
        raise DimensionMismatchError("QFT dimension must be >= 2")
    grid = np.outer(np.arange(d), np.arange(d))
    matrix = np.exp(2j * np.pi * grid / d) / math.sqrt(d)
    return Gate(f"qft{d}", (d,), matrix)


def gate_custom(name: str, wire_dims, matrix, tol: float = UNITARY_TOL) -> Gate:
    """Wrap an arbitrary matrix as a gate, rejecting non-unitary input."""
    m = as_matrix(matrix)
    wire_dims = tuple(int(d) for d in wire_dims)
    if m.shape[0] != prod(wire_dims):
        raise DimensionMismatchError(
            f"gate {name!r}: matrix dimension {m.shape[0]} does not match wire dims {wire_dims}"
        )
    deviation = float(np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0]))))
    if deviation > tol:
        raise NonUnitaryError(
            f"gate {name!r}: matrix deviates from unitarity by {deviation:.3e} (tolerance {tol})",
            gate_name=name,
        )
    return Gate(name, wire_dims, m)


def gate_permutation(name: str, wire_dims, perm) -> Gate:
    """Permutation gate: basis state j maps to basis state perm[j].

    Permutation matrices are unitary by construction, so only bijectivity
    is checked; this keeps large oracle gates cheap to build.
    """
    wire_dims = tuple(int(d) for d in wire_dims)
    total = prod(wire_dims)
    perm = np.asarray(perm, dtype=np.int64)
    if perm.shape != (total,):
        raise NotBijectiveError(f"gate {name!r}: permutation of length {perm.size}, expected {total}")
    seen = np.zeros(total, dtype=bool)
    if perm.min(initial=0) < 0 or perm.max(initial=0) >= total:
        raise NotBijectiveError(f"gate {name!r}: permutation values out of range 0..{total - 1}")
    seen[perm] = True
    if not seen.all():
        raise NotBijectiveError(f"gate {name!r}: mapping is not a bijection")
    matrix = np.zeros((total, total), dtype=np.complex128)
    matrix[perm, np.arange(total)] = 1.0
    return Gate(name, wire_dims, matrix)


def verify_gate_unitary(gate: Gate, tol: float = UNITARY_TOL) -> None:
    """Raise NonUnitaryError if the gate's matrix fails the unitarity check."""
    if not is_unitary(gate.matrix, tol):
        raise NonUnitaryError(f"gate {gate.name!r} is not unitary within {tol}", gate_name=gate.name)
