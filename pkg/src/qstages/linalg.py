"""Dense complex linear algebra underneath the circuit model.

Index convention used everywhere in this package: in a tensor product the
first-listed factor owns the most-significant digit of the composite basis
index, so wire 0 is the leftmost factor and carries the highest place value
in the mixed-radix register index.  ``numpy.kron`` follows the same
convention, which is why it backs ``tensor_product`` directly.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import DimensionMismatchError, NotNormalizedError

NORM_TOL = 1e-9
UNITARY_TOL = 1e-9


def as_matrix(entries) -> np.ndarray:
    """Coerce to a square complex matrix, rejecting non-finite entries."""
    m = np.asarray(entries, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(np.float64))):
        raise ValueError("matrix entries must be finite")
    return m


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; the left operand takes the high-order index positions."""
    return np.kron(a, b)


def tensor_chain(mats) -> np.ndarray:
    """Tensor product of a non-empty sequence of matrices, left to right."""
    mats = list(mats)
    if not mats:
        raise ValueError("tensor_chain needs at least one matrix")
    acc = mats[0]
    for m in mats[1:]:
        acc = np.kron(acc, m)
    return acc


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatchError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def is_unitary(m: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    """True iff max entrywise deviation of M M-dagger from identity is <= tol."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"unitarity is defined for square matrices, got {m.shape}")
    dev = m @ m.conj().T - np.eye(m.shape[0])
    return float(np.max(np.abs(dev))) <= tol


@dataclass(frozen=True)
class StateVector:
    """Complex amplitude vector over a mixed-radix register.

    ``dims`` lists the wire dimensions (each >= 2); ``amps`` has length
    ``prod(dims)``.  Wire 0 is the most significant digit of the basis index.
    Instances are frozen and their amplitude buffers are marked read-only;
    every operation returns a fresh vector.
    """

    dims: tuple[int, ...]
    amps: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 2 for d in dims):
            raise DimensionMismatchError(f"wire dimensions must all be >= 2, got {dims}")
        amps = np.asarray(self.amps, dtype=np.complex128)
        if amps.ndim != 1 or amps.size != prod(dims):
            raise DimensionMismatchError(
                f"amplitude vector of length {amps.size} does not match register {dims}"
            )
        if not np.all(np.isfinite(amps.view(np.float64))):
            raise ValueError("amplitudes must be finite")
        amps.flags.writeable = False
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self) -> int:
        return self.amps.size

    @classmethod
    def basis(cls, dims, index: int) -> "StateVector":
        """The computational basis state |index> over the given register."""
        dims = tuple(int(d) for d in dims)
        total = prod(dims)
        if not 0 <= index < total:
            raise DimensionMismatchError(f"basis index {index} out of range for dimension {total}")
        amps = np.zeros(total, dtype=np.complex128)
        amps[index] = 1.0
        return cls(dims, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def require_normalized(self, tol: float = NORM_TOL) -> None:
        n = self.norm()
        if abs(n - 1.0) > tol:
            raise NotNormalizedError(f"state norm is {n}, not 1 within {tol}")


def mat_vec(m: np.ndarray, v: StateVector) -> StateVector:
    """Apply a square matrix to a state vector; register layout carries over."""
    if m.shape[1] != v.dim:
        raise DimensionMismatchError(f"matrix of dimension {m.shape[1]} applied to length-{v.dim} vector")
    return StateVector(v.dims, m @ v.amps)
