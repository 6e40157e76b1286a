"""Benchmark harness contrasting the two evaluators' workspace footprints."""
from __future__ import annotations

import time
from dataclasses import dataclass

from .circuit import Circuit, Stage
from .engine import NAIVE_MAX_DIM, eval_efficient, eval_naive
from .errors import ResourceLimitError
from .gates import gate_hadamard
from .linalg import StateVector

CSV_HEADER = "qubits,mode,elapsed_ms,peak_live_cells,madds"


@dataclass
class BenchRow:
    qubits: int
    mode: str
    status: str  # "ok" or "crash"
    elapsed_ms: float | None = None
    peak_live_cells: int | None = None
    madds: int | None = None


def hadamard_stage_circuit(n: int, stages: int = 2) -> Circuit:
    """The default benchmark circuit: each stage is n one-qubit Hadamards."""
    row = Stage(tuple(gate_hadamard(1) for _ in range(n)))
    return Circuit((2,) * n, tuple(row for _ in range(stages)))


def run_benchmark(
    n_min: int,
    n_max: int,
    mode: str,
    *,
    stages: int = 2,
    template: str = "hadamard",
    max_dim: int = NAIVE_MAX_DIM,
) -> list[BenchRow]:
    """One row per qubit count; naive runs above the cap become crash rows."""
    if mode not in ("naive", "efficient"):
        raise ValueError(f"unknown mode {mode!r}")
    if template != "hadamard":
        raise ValueError(f"unknown stage template {template!r}")
    if n_min < 1 or n_min > n_max:
        raise ValueError(f"bad qubit range {n_min}..{n_max}")

    rows = []
    for n in range(n_min, n_max + 1):
        circuit = hadamard_stage_circuit(n, stages)
        state = StateVector.basis(circuit.register_dims, 0)
        start = time.perf_counter()
        try:
            if mode == "naive":
                _, metrics = eval_naive(circuit, state, max_dim=max_dim)
            else:
                _, metrics = eval_efficient(circuit, state)
        except ResourceLimitError:
            rows.append(BenchRow(n, mode, "crash"))
            continue
        elapsed_ms = (time.perf_counter() - start) * 1000.0
        rows.append(BenchRow(n, mode, "ok", elapsed_ms, metrics.peak_live_cells, metrics.madds))
    return rows


def rows_to_csv(rows: list[BenchRow]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        if r.status == "ok":
            lines.append(f"{r.qubits},{r.mode},{r.elapsed_ms:.3f},{r.peak_live_cells},{r.madds}")
        else:
            lines.append(f"{r.qubits},{r.mode},crash,crash,crash")
    return "\n".join(lines) + "\n"


def rows_to_table(rows: list[BenchRow]) -> str:
    header = f"{'qubits':>6}  {'mode':<9}  {'elapsed_ms':>12}  {'peak_live_cells':>16}  {'madds':>14}"
    lines = [header, "-" * len(header)]
    for r in rows:
        if r.status == "ok":
            lines.append(
                f"{r.qubits:>6}  {r.mode:<9}  {r.elapsed_ms:>12.3f}  {r.peak_live_cells:>16}  {r.madds:>14}"
            )
        else:
            lines.append(f"{r.qubits:>6}  {r.mode:<9}  {'crash':>12}  {'crash':>16}  {'crash':>14}")
    return "\n".join(lines) + "\n"
