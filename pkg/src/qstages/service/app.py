"""FastAPI application exposing the simulator.

Each endpoint is a thin wrapper over a plain handler function; the CLI
calls the same handlers in-process, so local and remote use share one code
path.  Domain errors become HTTP 400 with the error class in the detail.
"""
from __future__ import annotations

import time

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import __version__
from ..bench import rows_to_csv, run_benchmark
from ..circuit import circuit_validate
from ..circuit_format import format_basis_label, parse_circuit, parse_input_spec
from ..engine import eval_efficient, eval_naive
from ..errors import ParseError, SimulatorError
from ..measurement import sample_histogram
from ..shor import DlogInstance, factor, shor_dlog
from ..simon import Classification, load_table, mask_bits, simon_run
from . import schemas

app = FastAPI(
    title="qstages",
    version=__version__,
    description="Stage-lattice quantum circuit simulator service",
)


def _aux_resolver(aux: dict[str, str]):
    def resolve(name: str) -> str:
        if name not in aux:
            raise ParseError(0, f"gate file {name!r} not supplied in the request's aux mapping")
        return aux[name]

    return resolve


def _prepare(circuit_text: str, aux: dict[str, str], input_spec: str, amplitudes):
    doc = parse_circuit(circuit_text, _aux_resolver(aux))
    amps = [complex(re, im) for re, im in amplitudes] if amplitudes is not None else None
    state = parse_input_spec(input_spec, doc.circuit.register_dims, amps)
    return doc, state


def _evaluate(doc, state, mode: str, max_dim: int):
    if mode == "naive":
        return eval_naive(doc.circuit, state, max_dim=max_dim)
    return eval_efficient(doc.circuit, state)


def _bits_str(bits) -> str:
    return "".join(str(int(b)) for b in bits)


def handle_run(req: schemas.RunRequest) -> schemas.RunResponse:
    doc, state = _prepare(req.circuit, req.aux, req.input_spec, req.amplitudes)
    start = time.perf_counter()
    out, metrics = _evaluate(doc, state, req.mode, req.max_dim)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    dims = out.dims
    entries = [
        schemas.AmplitudeEntry(
            index=i,
            label=format_basis_label(i, dims),
            re=float(a.real),
            im=float(a.imag),
            probability=float(abs(a) ** 2),
        )
        for i, a in enumerate(out.amps)
    ]
    return schemas.RunResponse(
        register_dims=list(dims),
        mode=req.mode,
        amplitudes=entries,
        metrics=schemas.MetricsModel(
            peak_live_cells=metrics.peak_live_cells,
            madds=metrics.madds,
            stages_processed=metrics.stages_processed,
        ),
        elapsed_ms=elapsed_ms,
    )


def handle_sample(req: schemas.SampleRequest) -> schemas.SampleResponse:
    doc, state = _prepare(req.circuit, req.aux, req.input_spec, req.amplitudes)
    out, _ = _evaluate(doc, state, req.mode, req.max_dim)
    rng = np.random.default_rng(req.seed)
    counts = sample_histogram(out, req.trials, rng)
    labelled = {
        format_basis_label(index, out.dims): count
        for index, count in sorted(counts.items())
    }
    return schemas.SampleResponse(
        register_dims=list(out.dims), trials=req.trials, seed=req.seed, counts=labelled
    )


def handle_bench(req: schemas.BenchRequest) -> schemas.BenchResponse:
    rows = run_benchmark(
        req.n_min, req.n_max, req.mode, stages=req.stages, max_dim=req.max_dim
    )
    models = [
        schemas.BenchRowModel(
            qubits=r.qubits,
            mode=r.mode,
            status=r.status,
            elapsed_ms=r.elapsed_ms,
            peak_live_cells=r.peak_live_cells,
            madds=r.madds,
        )
        for r in rows
    ]
    return schemas.BenchResponse(rows=models, csv=rows_to_csv(rows))


def handle_simon(req: schemas.SimonRequest) -> schemas.SimonResponse:
    table = load_table(req.table)
    rng = np.random.default_rng(req.seed)
    mask = mask_bits(table)
    promise = Classification.ONE_TO_ONE if mask is None else Classification.TWO_TO_ONE

    successes = 0
    last = None
    for _ in range(req.trials):
        last = simon_run(table, rng, req.repetitions)
        if mask is None:
            ok = last.classification is Classification.ONE_TO_ONE
        else:
            ok = (
                last.classification is Classification.TWO_TO_ONE
                and last.recovered_t is not None
                and _bits_str(last.recovered_t) == _bits_str(mask)
            )
        successes += int(ok)

    return schemas.SimonResponse(
        n=table.n,
        promise=promise.value,
        mask=None if mask is None else _bits_str(mask),
        trials=req.trials,
        successes=successes,
        success_rate=successes / req.trials,
        last_run=schemas.SimonRunModel(
            classification=last.classification.value,
            recovered_t=None if last.recovered_t is None else _bits_str(last.recovered_t),
            equations=[_bits_str(e) for e in last.equations],
            repetitions_used=last.repetitions_used,
        ),
    )


def handle_factor(req: schemas.FactorRequest) -> schemas.FactorResponse:
    rng = np.random.default_rng(req.seed)
    f = factor(req.n, rng, req.max_attempts)
    return schemas.FactorResponse(n=req.n, factor=f, cofactor=req.n // f)


def handle_dlog(req: schemas.DlogRequest) -> schemas.DlogResponse:
    inst = DlogInstance(req.p, req.g, req.x)
    rng = np.random.default_rng(req.seed)
    out = shor_dlog(inst, rng, req.max_tries)
    return schemas.DlogResponse(
        p=req.p,
        g=req.g,
        x=req.x,
        r=out.r,
        c=out.c,
        d=out.d,
        third_register=out.third_register,
        tries=out.tries,
    )


def handle_validate(req: schemas.ValidateRequest) -> schemas.ValidateResponse:
    doc = parse_circuit(req.circuit, _aux_resolver(req.aux))
    circuit_validate(doc.circuit)
    return schemas.ValidateResponse(
        ok=True,
        register_dims=list(doc.circuit.register_dims),
        stages=len(doc.circuit.stages),
        gates=sum(len(s.gates) for s in doc.circuit.stages),
    )


def _endpoint(handler, req):
    try:
        return handler(req)
    except (SimulatorError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=f"{type(exc).__name__}: {exc}") from exc


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok", version=__version__)


@app.post("/run", response_model=schemas.RunResponse)
def run_endpoint(req: schemas.RunRequest) -> schemas.RunResponse:
    return _endpoint(handle_run, req)


@app.post("/sample", response_model=schemas.SampleResponse)
def sample_endpoint(req: schemas.SampleRequest) -> schemas.SampleResponse:
    return _endpoint(handle_sample, req)


@app.post("/bench", response_model=schemas.BenchResponse)
def bench_endpoint(req: schemas.BenchRequest) -> schemas.BenchResponse:
    return _endpoint(handle_bench, req)


@app.post("/simon", response_model=schemas.SimonResponse)
def simon_endpoint(req: schemas.SimonRequest) -> schemas.SimonResponse:
    return _endpoint(handle_simon, req)


@app.post("/factor", response_model=schemas.FactorResponse)
def factor_endpoint(req: schemas.FactorRequest) -> schemas.FactorResponse:
    return _endpoint(handle_factor, req)


@app.post("/shor-dlog", response_model=schemas.DlogResponse)
def dlog_endpoint(req: schemas.DlogRequest) -> schemas.DlogResponse:
    return _endpoint(handle_dlog, req)


@app.post("/validate", response_model=schemas.ValidateResponse)
def validate_endpoint(req: schemas.ValidateRequest) -> schemas.ValidateResponse:
    return _endpoint(handle_validate, req)
