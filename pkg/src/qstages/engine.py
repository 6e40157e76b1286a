"""The two circuit evaluators and their workspace instrumentation.

``eval_naive`` tensors every stage into a full D x D matrix and composes the
stage matrices, so its workspace is quadratic in the register dimension D.
``eval_efficient`` never forms a stage matrix: each output entry is the dot
product of the input with one transient tensor slice of the stage matrix,
built from one row of each gate and destroyed before the next entry.  Its
workspace stays below 4*D cells (slice plus unfinished chain plus the stage
output buffer and, between stages, one intermediate vector) while the naive
route needs at least D*D.  Both routes still cost Theta(D^2) multiply-adds
per stage; the saving is memory, not time.

``peak_live_cells`` counts complex amplitude cells allocated by the
evaluator itself.  The caller's input vector and the returned output vector
are not charged, so the D versus D*D separation is clean.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Stage, check_structure
from .errors import DimensionMismatchError, ResourceLimitError
from .linalg import StateVector

#: Default cap on the register dimension the naive evaluator will accept.
NAIVE_MAX_DIM = 2**13

#: Documented bound on the streaming evaluator's workspace, in units of D cells.
STREAM_WORKSPACE_FACTOR = 4


@dataclass
class EvalMetrics:
    """Counters accumulated over one evaluation run."""

    peak_live_cells: int = 0
    madds: int = 0
    stages_processed: int = 0


class _Meter:
    """Tracks live workspace cells and arithmetic for one evaluation."""

    __slots__ = ("live", "metrics")

    def __init__(self):
        self.live = 0
        self.metrics = EvalMetrics()

    def alloc(self, cells: int) -> None:
        self.live += cells
        if self.live > self.metrics.peak_live_cells:
            self.metrics.peak_live_cells = self.live

    def free(self, cells: int) -> None:
        self.live -= cells

    def madd(self, count: int) -> None:
        self.metrics.madds += count

    def stage_done(self) -> None:
        self.metrics.stages_processed += 1


def _check_eval_inputs(circuit: Circuit, state: StateVector) -> None:
    check_structure(circuit)
    if state.dims != circuit.register_dims:
        raise DimensionMismatchError(
            f"input register {state.dims} does not match circuit register {circuit.register_dims}"
        )
    state.require_normalized()


def _stage_matrix(stage: Stage, meter: _Meter) -> np.ndarray:
    """Tensor the stage's gates top to bottom into one full matrix (charged)."""
    mats = [g.matrix for g in stage.gates]
    if len(mats) == 1:
        sm = mats[0].copy()
        meter.alloc(sm.size)
        return sm
    acc = mats[0]
    charged = 0
    for m in mats[1:]:
        nxt = np.kron(acc, m)
        meter.alloc(nxt.size)
        meter.madd(nxt.size)
        if charged:
            meter.free(charged)
        charged = nxt.size
        acc = nxt
    return acc


def eval_naive(
    circuit: Circuit, state: StateVector, *, max_dim: int = NAIVE_MAX_DIM
) -> tuple[StateVector, EvalMetrics]:
    """Full-matrix evaluation: build every stage matrix, compose, apply once.

    Refuses registers above ``max_dim`` (ResourceLimitError) because the
    composed matrix alone needs D*D complex cells.
    """
    _check_eval_inputs(circuit, state)
    total = circuit.dim
    if circuit.stages and total > max_dim:
        raise ResourceLimitError(
            f"naive evaluation of a dimension-{total} register needs {total}*{total} "
            f"matrix cells; the configured cap is max_dim={max_dim}"
        )
    meter = _Meter()
    composed: np.ndarray | None = None
    for stage in circuit.stages:
        sm = _stage_matrix(stage, meter)
        if composed is None:
            composed = sm
        else:
            product = sm @ composed
            meter.alloc(product.size)
            meter.madd(total**3)
            meter.free(sm.size)
            meter.free(composed.size)
            composed = product
        meter.stage_done()

    if composed is None:
        out = state.amps.copy()
    else:
        out = composed @ state.amps
        meter.madd(total**2)
        meter.free(composed.size)
    return StateVector(circuit.register_dims, out), meter.metrics


def _stream_stage(stage: Stage, amps: np.ndarray, meter: _Meter) -> np.ndarray:
    """Streaming kernel: one transient tensor slice per output entry.

    Entry i of the stage output is the dot product of the input with the
    tensor of row i_k of each gate matrix, where (i_1 .. i_L) are the
    mixed-radix digits of i over the gate dimensions.  The slice is built,
    consumed, and destroyed before the next entry is started.
    """
    mats = [g.matrix for g in stage.gates]
    total = stage.dim
    if amps.size != total:
        raise DimensionMismatchError(
            f"stage of dimension {total} applied to length-{amps.size} vector"
        )
    out = np.empty(total, dtype=np.complex128)
    meter.alloc(total)  # stage output buffer; released by the caller

    if len(mats) == 1:
        matrix = mats[0]
        for i in range(total):
            meter.alloc(total)  # the slice: row i of the stage matrix
            out[i] = matrix[i] @ amps
            meter.madd(total)
            meter.free(total)
        return out

    ranges = [range(m.shape[0]) for m in mats]
    for i, digits in enumerate(itertools.product(*ranges)):
        row = mats[0][digits[0]]
        charged = 0
        for k in range(1, len(mats)):
            nxt = np.kron(row, mats[k][digits[k]])
            meter.alloc(nxt.size)
            meter.madd(nxt.size)
            if charged:
                meter.free(charged)
            charged = nxt.size
            row = nxt
        out[i] = row @ amps
        meter.madd(total)
        meter.free(charged)
    return out


def eval_efficient(circuit: Circuit, state: StateVector) -> tuple[StateVector, EvalMetrics]:
    """Streaming evaluation: stage by stage, never materializing a stage matrix."""
    _check_eval_inputs(circuit, state)
    meter = _Meter()
    amps = state.amps
    carried = 0  # cells charged for the current intermediate vector
    for stage in circuit.stages:
        nxt = _stream_stage(stage, amps, meter)
        if carried:
            meter.free(carried)
        amps = nxt
        carried = nxt.size
        meter.stage_done()
    if carried:
        meter.free(carried)  # the final buffer leaves workspace as the result
    else:
        amps = amps.copy()  # zero-stage circuit: echo the input
    return StateVector(circuit.register_dims, amps), meter.metrics


def apply_stage_streamed(stage: Stage, state: StateVector) -> tuple[StateVector, EvalMetrics]:
    """Single-stage streaming application; the independently testable kernel."""
    if stage.dim != state.dim:
        raise DimensionMismatchError(
            f"stage of dimension {stage.dim} applied to length-{state.dim} vector"
        )
    state.require_normalized()
    meter = _Meter()
    out = _stream_stage(stage, state.amps, meter)
    meter.free(out.size)
    meter.stage_done()
    return StateVector(state.dims, out), meter.metrics
