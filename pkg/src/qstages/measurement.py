"""Probabilistic readout with collapse.

Sampling follows the cumulative rule: draw u uniform in [0, 1) and return
the smallest basis index whose running probability sum reaches u.  If
floating error leaves the final sum fractionally below u, the last index
absorbs the remainder, so the rule is total.

Randomness always comes from an explicitly passed ``numpy.random.Generator``
(``numpy.random.default_rng(seed)``); nothing in this module touches global
RNG state, so seeded runs are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, EmptyWireSetError
from .linalg import NORM_TOL, StateVector


@dataclass(frozen=True)
class MeasurementOutcome:
    """One sampled outcome: its index, pre-measurement mass, and the collapsed state."""

    basis_index: int
    probability: float
    collapsed: StateVector


def probabilities(state: StateVector, tol: float = NORM_TOL) -> np.ndarray:
    """Squared amplitude of every basis state; requires a normalized input."""
    state.require_normalized(tol)
    return np.abs(state.amps) ** 2


def _cumulative_pick(ps: np.ndarray, u: float) -> int:
    cum = np.cumsum(ps)
    idx = int(np.searchsorted(cum, u, side="left"))
    if idx >= ps.size:  # rounding left the total fractionally below u
        idx = ps.size - 1
    if ps[idx] == 0.0:
        # u == 0 on a leading zero run, or rounding past the last mass: a
        # zero-probability outcome must never be reported, so snap to the
        # nearest index that actually carries mass.
        nonzero = np.flatnonzero(ps)
        idx = int(nonzero[0]) if idx <= nonzero[0] else int(nonzero[-1])
    return idx


def measure_full(state: StateVector, rng: np.random.Generator) -> MeasurementOutcome:
    """Measure the whole register; the collapsed state is the sampled basis vector."""
    ps = probabilities(state)
    idx = _cumulative_pick(ps, rng.random())
    collapsed = StateVector.basis(state.dims, idx)
    return MeasurementOutcome(idx, float(ps[idx]), collapsed)


def measure_partial(
    state: StateVector, wires, rng: np.random.Generator
) -> MeasurementOutcome:
    """Measure a subset of wires and collapse the rest consistently.

    The outcome index is the joint mixed-radix index of the selected wires
    in register order (first selected wire = most significant digit).  The
    collapsed state keeps only the amplitudes compatible with the outcome,
    renormalized.
    """
    wires = sorted(set(int(w) for w in wires))
    if not wires:
        raise EmptyWireSetError("partial measurement needs at least one wire")
    if wires[0] < 0 or wires[-1] >= len(state.dims):
        raise DimensionMismatchError(
            f"wire indices {wires} out of range for register {state.dims}"
        )

    ps = probabilities(state).reshape(state.dims)
    others = tuple(ax for ax in range(len(state.dims)) if ax not in wires)
    marginal = ps.sum(axis=others) if others else ps
    flat_marginal = marginal.reshape(-1)

    idx = _cumulative_pick(flat_marginal, rng.random())
    sub_dims = tuple(state.dims[w] for w in wires)
    digits = np.unravel_index(idx, sub_dims)

    selector: list[object] = [slice(None)] * len(state.dims)
    for w, digit in zip(wires, digits):
        selector[w] = int(digit)
    kept = np.zeros(state.dims, dtype=np.complex128)
    grid = state.amps.reshape(state.dims)
    kept[tuple(selector)] = grid[tuple(selector)]
    kept = kept.reshape(-1)
    kept /= np.linalg.norm(kept)

    return MeasurementOutcome(idx, float(flat_marginal[idx]), StateVector(state.dims, kept))


def sample_histogram(
    state: StateVector, trials: int, rng: np.random.Generator
) -> dict[int, int]:
    """Repeated full measurements on fresh copies; counts sum to ``trials``."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    counts: dict[int, int] = {}
    for _ in range(trials):
        outcome = measure_full(state, rng)
        counts[outcome.basis_index] = counts.get(outcome.basis_index, 0) + 1
    return counts
