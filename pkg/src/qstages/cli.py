"""Thin command-line client for the simulator service.

Every subcommand builds the same request model the HTTP API takes and
renders the response.  Without ``--server`` the request is dispatched to
the service handlers in-process; with ``--server http://host:port`` it is
POSTed to a running instance instead.  Output is rendered only after the
command succeeds, so failures never leave partial output behind.
"""
from __future__ import annotations

import argparse
import json
import sys
import urllib.error
import urllib.request
from pathlib import Path

from .bench import BenchRow, rows_to_table
from .circuit_format import parse_amplitude_lines
from .errors import SimulatorError
from .service import schemas
from .service.app import (
    handle_bench,
    handle_dlog,
    handle_factor,
    handle_run,
    handle_sample,
    handle_simon,
    handle_validate,
)

_ENDPOINTS = {
    "run": ("/run", handle_run, schemas.RunResponse),
    "sample": ("/sample", handle_sample, schemas.SampleResponse),
    "bench": ("/bench", handle_bench, schemas.BenchResponse),
    "simon": ("/simon", handle_simon, schemas.SimonResponse),
    "factor": ("/factor", handle_factor, schemas.FactorResponse),
    "shor-dlog": ("/shor-dlog", handle_dlog, schemas.DlogResponse),
    "validate": ("/validate", handle_validate, schemas.ValidateResponse),
}


class ServiceClient:
    """Dispatches requests in-process or to a remote server."""

    def __init__(self, server: str | None = None):
        self.server = server.rstrip("/") if server else None

    def call(self, name: str, request):
        path, handler, response_type = _ENDPOINTS[name]
        if self.server is None:
            return handler(request)
        http_req = urllib.request.Request(
            self.server + path,
            data=request.model_dump_json().encode("utf-8"),
            headers={"Content-Type": "application/json"},
            method="POST",
        )
        try:
            with urllib.request.urlopen(http_req) as resp:
                return response_type.model_validate_json(resp.read())
        except urllib.error.HTTPError as err:
            body = err.read().decode("utf-8", errors="replace")
            try:
                detail = json.loads(body).get("detail", body)
            except json.JSONDecodeError:
                detail = body
            raise SimulatorError(f"server rejected the request: {detail}") from err
        except urllib.error.URLError as err:
            raise SimulatorError(f"cannot reach {self.server}: {err.reason}") from err


def collect_aux(circuit_text: str, base_dir: Path) -> dict[str, str]:
    """Read gate files referenced by ``perm``/``unitary`` specs into the aux map."""
    aux: dict[str, str] = {}
    for raw in circuit_text.splitlines():
        tokens = raw.split("#", 1)[0].split()
        for i, tok in enumerate(tokens[:-1]):
            if tok.lower() in ("perm", "unitary"):
                name = tokens[i + 1]
                if name not in aux:
                    aux[name] = (base_dir / name).read_text()
    return aux


def _load_circuit_inputs(args) -> tuple[str, dict[str, str], str, list | None]:
    path = Path(args.file)
    text = path.read_text()
    aux = collect_aux(text, path.parent)
    amplitudes = None
    input_spec = args.input
    if input_spec.startswith("amps:"):
        amp_path = path.parent / input_spec[len("amps:") :]
        amps = parse_amplitude_lines(amp_path.read_text())
        amplitudes = [(a.real, a.imag) for a in amps]
        input_spec = "basis:0"  # ignored when amplitudes are given
    return text, aux, input_spec, amplitudes


def _cmd_run(args, client: ServiceClient) -> str:
    text, aux, input_spec, amplitudes = _load_circuit_inputs(args)
    resp = client.call(
        "run",
        schemas.RunRequest(
            circuit=text,
            input_spec=input_spec,
            amplitudes=amplitudes,
            mode=args.mode,
            max_dim=args.max_dim,
            aux=aux,
        ),
    )
    lines = [
        f"{e.label}  {e.re:.6f}{e.im:+.6f}i  p={e.probability:.4f}"
        for e in resp.amplitudes
    ]
    m = resp.metrics
    lines.append(
        f"# mode={resp.mode} stages={m.stages_processed} "
        f"peak_live_cells={m.peak_live_cells} madds={m.madds} elapsed_ms={resp.elapsed_ms:.3f}"
    )
    return "\n".join(lines)


def _cmd_sample(args, client: ServiceClient) -> str:
    text, aux, input_spec, amplitudes = _load_circuit_inputs(args)
    resp = client.call(
        "sample",
        schemas.SampleRequest(
            circuit=text,
            input_spec=input_spec,
            amplitudes=amplitudes,
            mode=args.mode,
            max_dim=args.max_dim,
            trials=args.trials,
            seed=args.seed,
            aux=aux,
        ),
    )
    lines = [f"{label}  {count}" for label, count in resp.counts.items()]
    lines.append(f"# trials={resp.trials} seed={resp.seed}")
    return "\n".join(lines)


def _cmd_bench(args, client: ServiceClient) -> str:
    resp = client.call(
        "bench",
        schemas.BenchRequest(
            n_min=args.n_min,
            n_max=args.n_max,
            mode=args.mode,
            stages=args.stages,
            max_dim=args.max_dim,
        ),
    )
    if args.format == "csv":
        return resp.csv.rstrip("\n")
    rows = [
        BenchRow(r.qubits, r.mode, r.status, r.elapsed_ms, r.peak_live_cells, r.madds)
        for r in resp.rows
    ]
    return rows_to_table(rows).rstrip("\n")


def _cmd_simon(args, client: ServiceClient) -> str:
    table_text = Path(args.table).read_text()
    resp = client.call(
        "simon",
        schemas.SimonRequest(
            table=table_text,
            trials=args.trials,
            repetitions=args.repetitions,
            seed=args.seed,
        ),
    )
    lines = [f"n={resp.n} promise={resp.promise}" + (f" mask={resp.mask}" if resp.mask else "")]
    lines.append(
        f"trials={resp.trials} repetitions={resp.last_run.repetitions_used} successes={resp.successes}"
    )
    lines.append(f"success rate: {resp.success_rate:.4f}")
    return "\n".join(lines)


def _cmd_factor(args, client: ServiceClient) -> str:
    resp = client.call(
        "factor",
        schemas.FactorRequest(n=args.n, seed=args.seed, max_attempts=args.max_attempts),
    )
    return f"{resp.factor}\n# {resp.n} = {resp.factor} * {resp.cofactor}"


def _cmd_dlog(args, client: ServiceClient) -> str:
    resp = client.call(
        "shor-dlog",
        schemas.DlogRequest(p=args.p, g=args.g, x=args.x, seed=args.seed, max_tries=args.max_tries),
    )
    return (
        f"{resp.r}\n"
        f"# {resp.g}^{resp.r} = {resp.x} (mod {resp.p}); "
        f"measured c={resp.c} d={resp.d} third={resp.third_register} tries={resp.tries}"
    )


def _cmd_validate(args, client: ServiceClient) -> str:
    text = Path(args.file).read_text()
    aux = collect_aux(text, Path(args.file).parent)
    resp = client.call("validate", schemas.ValidateRequest(circuit=text, aux=aux))
    dims = " ".join(str(d) for d in resp.register_dims)
    return f"ok: registers {dims}; {resp.stages} stage(s), {resp.gates} gate(s)"


def _cmd_serve(args, _client: ServiceClient) -> str:
    import uvicorn

    uvicorn.run("qstages.service.app:app", host=args.host, port=args.port)
    return ""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qstages",
        description="Stage-lattice quantum circuit simulator (thin client over the service API)",
    )
    parser.add_argument("--server", metavar="URL", default=None,
                        help="send requests to a running service instead of in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    mode_flags = argparse.ArgumentParser(add_help=False)
    mode_flags.add_argument("--mode", choices=["naive", "efficient"], default="efficient")
    mode_flags.add_argument("--max-dim", type=int, default=schemas.NAIVE_MAX_DIM,
                            help="naive-mode register dimension cap")

    seed_flag = argparse.ArgumentParser(add_help=False)
    seed_flag.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("run", parents=[mode_flags], help="evaluate a circuit file")
    p.add_argument("file")
    p.add_argument("--input", default="basis:0",
                   help="|01>-style label, basis:<index>, or amps:<file>")
    p.set_defaults(fn=_cmd_run)

    p = sub.add_parser("sample", parents=[mode_flags, seed_flag],
                       help="histogram of measurements of a circuit's output")
    p.add_argument("file")
    p.add_argument("--input", default="basis:0")
    p.add_argument("--trials", type=int, default=1024)
    p.set_defaults(fn=_cmd_sample)

    p = sub.add_parser("bench", parents=[mode_flags],
                       help="evaluator scaling table over a qubit range")
    p.add_argument("n_min", type=int)
    p.add_argument("n_max", type=int)
    p.add_argument("--stages", type=int, default=2)
    p.add_argument("--format", choices=["table", "csv"], default="table")
    p.set_defaults(fn=_cmd_bench)

    p = sub.add_parser("simon", parents=[seed_flag],
                       help="hidden-shift experiment over a function table")
    p.add_argument("table")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--repetitions", type=int, default=None,
                   help="measurement repetitions per trial (default 3n)")
    p.set_defaults(fn=_cmd_simon)

    p = sub.add_parser("factor", parents=[seed_flag], help="factor an odd composite")
    p.add_argument("n", type=int)
    p.add_argument("--max-attempts", type=int, default=50)
    p.set_defaults(fn=_cmd_factor)

    p = sub.add_parser("shor-dlog", parents=[seed_flag],
                       help="discrete logarithm via the quantum circuit")
    p.add_argument("p", type=int)
    p.add_argument("g", type=int)
    p.add_argument("x", type=int)
    p.add_argument("--max-tries", type=int, default=50)
    p.set_defaults(fn=_cmd_dlog)

    p = sub.add_parser("validate", help="parse and validate a circuit file")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(fn=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    client = ServiceClient(args.server)
    try:
        output = args.fn(args, client)
    except (SimulatorError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if output:
        print(output)
    return 0


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
