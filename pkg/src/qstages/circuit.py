"""Stage and circuit containers: the ordered lattice the evaluators walk."""
from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import StageDimensionMismatchError
from .gates import Gate, verify_gate_unitary


@dataclass(frozen=True)
class Stage:
    """One parallel row of gates; together they must span the whole register."""

    gates: tuple[Gate, ...]

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if not self.gates:
            raise StageDimensionMismatchError(-1, "a stage needs at least one gate")

    @property
    def wire_dims(self) -> tuple[int, ...]:
        return tuple(d for g in self.gates for d in g.wire_dims)

    @property
    def dim(self) -> int:
        return prod(g.dim for g in self.gates)


@dataclass(frozen=True)
class Circuit:
    """An ordered sequence of stages over a fixed register layout."""

    register_dims: tuple[int, ...]
    stages: tuple[Stage, ...]

    def __post_init__(self):
        object.__setattr__(self, "register_dims", tuple(int(d) for d in self.register_dims))
        object.__setattr__(self, "stages", tuple(self.stages))

    @property
    def dim(self) -> int:
        return prod(self.register_dims)

    @property
    def num_wires(self) -> int:
        return len(self.register_dims)


def circuit_validate(circuit: Circuit) -> None:
    """Check the lattice shape and every gate's unitarity.

    Raises StageDimensionMismatchError(stage index) when a stage's gates do
    not concatenate to the register layout, NonUnitaryError(gate name) when
    a gate fails the unitarity check.
    """
    register = circuit.register_dims
    for index, stage in enumerate(circuit.stages):
        if stage.wire_dims != register:
            raise StageDimensionMismatchError(
                index,
                f"gates span wires {stage.wire_dims}, register is {register}",
            )
        for gate in stage.gates:
            verify_gate_unitary(gate)


def check_structure(circuit: Circuit) -> None:
    """Shape-only validation used on the evaluators' hot path (no unitarity check)."""
    for index, stage in enumerate(circuit.stages):
        if stage.wire_dims != circuit.register_dims:
            raise StageDimensionMismatchError(
                index,
                f"gates span wires {stage.wire_dims}, register is {circuit.register_dims}",
            )
