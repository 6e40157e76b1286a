"""Line-oriented circuit description format.

::

    # comment                 wire 0 is the leftmost register entry (high order)
    registers 2 2
    stage h 1 | id 1          gates separated by '|', assigned to wires left to right
    stage cnot

Gate forms: ``not k`` / ``h k`` (k qubit wires), ``cnot`` (two qubit wires),
``id k`` (identity across the next k wires, dimensions taken from the
register), ``qft d`` (one wire of dimension d), ``perm <file>`` and
``unitary <file>`` (matrix loaded through the resolver; the wire span is
however many following wires multiply out to the matrix dimension).

Permutation files hold one ``src dst`` pair per line; unitary files hold
one ``re im`` pair per line, row-major, and are checked for unitarity on
load.  Input specs are ``|0101>`` basis labels for all-qubit registers,
``basis:<index>`` for any register, or an explicit amplitude list.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import prod
from typing import Callable

import numpy as np

from .circuit import Circuit, Stage
from .errors import (
    DimensionMismatchError,
    NonUnitaryError,
    NotBijectiveError,
    ParseError,
    ValidationError,
)
from .gates import (
    Gate,
    gate_cnot,
    gate_custom,
    gate_hadamard,
    gate_identity_on,
    gate_not,
    gate_permutation,
    gate_qft,
)
from .linalg import StateVector

Resolver = Callable[[str], str]

#: Gate spec: (name, argument) where the argument is an int for not/h/id/qft,
#: a file name for perm/unitary, and None for cnot.
GateSpec = tuple[str, "int | str | None"]


@dataclass(frozen=True)
class CircuitDocument:
    """A parsed circuit file: the raw layout plus the built circuit."""

    register_dims: tuple[int, ...]
    stages: tuple[tuple[GateSpec, ...], ...]
    circuit: Circuit

    def to_text(self) -> str:
        lines = ["registers " + " ".join(str(d) for d in self.register_dims)]
        for specs in self.stages:
            parts = []
            for name, arg in specs:
                parts.append(name if arg is None else f"{name} {arg}")
            lines.append("stage " + " | ".join(parts))
        return "\n".join(lines) + "\n"


def _no_resolver(name: str) -> str:
    raise ParseError(0, f"gate file {name!r} requested but no file resolver is available")


def _int_arg(tokens: list[str], line: int, what: str) -> int:
    if len(tokens) != 1:
        raise ParseError(line, f"{what} takes exactly one integer argument")
    try:
        return int(tokens[0])
    except ValueError:
        raise ParseError(line, f"{what}: expected an integer, got {tokens[0]!r}") from None


def _load_permutation(name: str, text: str, line: int) -> np.ndarray:
    pairs = []
    for raw in text.splitlines():
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        parts = s.split()
        if len(parts) != 2:
            raise ParseError(line, f"permutation file {name!r}: expected 'src dst', got {s!r}")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ParseError(line, f"permutation file {name!r}: non-integer entry {s!r}") from None
    if not pairs:
        raise ParseError(line, f"permutation file {name!r} is empty")
    total = len(pairs)
    perm = np.full(total, -1, dtype=np.int64)
    for src, dst in pairs:
        if not (0 <= src < total and 0 <= dst < total):
            raise ParseError(line, f"permutation file {name!r}: pair {src} {dst} out of range 0..{total - 1}")
        if perm[src] != -1:
            raise ParseError(line, f"permutation file {name!r}: duplicate source {src}")
        perm[src] = dst
    return perm


def _load_unitary(name: str, text: str, line: int) -> np.ndarray:
    entries = []
    for raw in text.splitlines():
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        parts = s.split()
        if len(parts) != 2:
            raise ParseError(line, f"unitary file {name!r}: expected 're im', got {s!r}")
        try:
            entries.append(complex(float(parts[0]), float(parts[1])))
        except ValueError:
            raise ParseError(line, f"unitary file {name!r}: non-numeric entry {s!r}") from None
    dim = math.isqrt(len(entries))
    if dim * dim != len(entries) or dim == 0:
        raise ParseError(line, f"unitary file {name!r}: {len(entries)} entries is not a square count")
    return np.array(entries, dtype=np.complex128).reshape(dim, dim)


def _span_wires(dims: tuple[int, ...], cursor: int, needed: int, line: int, what: str) -> int:
    """Number of wires from ``cursor`` whose dimensions multiply to ``needed``."""
    acc = 1
    count = 0
    while acc < needed:
        if cursor + count >= len(dims):
            raise ValidationError(f"line {line}: {what} of dimension {needed} overruns the register")
        acc *= dims[cursor + count]
        count += 1
    if acc != needed:
        raise ValidationError(
            f"line {line}: {what} of dimension {needed} does not align with wire dims "
            f"{dims[cursor:cursor + count]}"
        )
    return count


def _build_gate(
    name: str,
    tokens: list[str],
    dims: tuple[int, ...],
    cursor: int,
    line: int,
    resolver: Resolver,
) -> tuple[Gate, GateSpec, int]:
    """Build one gate at the current wire cursor; returns (gate, spec, wires used)."""
    if name in ("not", "h"):
        k = _int_arg(tokens, line, name)
        if k < 1:
            raise ParseError(line, f"{name}: wire count must be >= 1")
        if cursor + k > len(dims):
            raise ValidationError(f"line {line}: {name} {k} overruns the register")
        span = dims[cursor : cursor + k]
        if any(d != 2 for d in span):
            raise ValidationError(f"line {line}: {name} needs qubit wires, register has {span}")
        gate = gate_not(k) if name == "not" else gate_hadamard(k)
        return gate, (name, k), k
    if name == "cnot":
        if tokens:
            raise ParseError(line, "cnot takes no arguments")
        if cursor + 2 > len(dims) or dims[cursor] != 2 or dims[cursor + 1] != 2:
            raise ValidationError(f"line {line}: cnot needs two qubit wires")
        return gate_cnot(), ("cnot", None), 2
    if name == "id":
        k = _int_arg(tokens, line, "id")
        if k < 1:
            raise ParseError(line, "id: wire count must be >= 1")
        if cursor + k > len(dims):
            raise ValidationError(f"line {line}: id {k} overruns the register")
        return gate_identity_on(dims[cursor : cursor + k]), ("id", k), k
    if name == "qft":
        d = _int_arg(tokens, line, "qft")
        if d < 2:
            raise ParseError(line, "qft: dimension must be >= 2")
        if cursor >= len(dims):
            raise ValidationError(f"line {line}: qft {d} overruns the register")
        if dims[cursor] != d:
            raise ValidationError(
                f"line {line}: qft {d} placed on a wire of dimension {dims[cursor]}"
            )
        return gate_qft(d), ("qft", d), 1
    if name in ("perm", "unitary"):
        if len(tokens) != 1:
            raise ParseError(line, f"{name} takes exactly one file argument")
        fname = tokens[0]
        try:
            content = resolver(fname)
        except ParseError:
            raise
        except Exception as exc:
            raise ParseError(line, f"cannot read gate file {fname!r}: {exc}") from exc
        if name == "perm":
            perm = _load_permutation(fname, content, line)
            wires = _span_wires(dims, cursor, perm.size, line, f"perm {fname!r}")
            try:
                gate = gate_permutation(fname, dims[cursor : cursor + wires], perm)
            except NotBijectiveError as exc:
                raise ValidationError(f"line {line}: {exc}") from exc
        else:
            matrix = _load_unitary(fname, content, line)
            wires = _span_wires(dims, cursor, matrix.shape[0], line, f"unitary {fname!r}")
            try:
                gate = gate_custom(fname, dims[cursor : cursor + wires], matrix)
            except (NonUnitaryError, DimensionMismatchError, ValueError) as exc:
                raise ValidationError(f"line {line}: {exc}") from exc
        return gate, (name, fname), wires
    raise ParseError(line, f"unknown gate {name!r}")


def parse_circuit(text: str, resolver: Resolver | None = None) -> CircuitDocument:
    """Parse a circuit document; errors carry the offending line number."""
    resolver = resolver or _no_resolver
    register: tuple[int, ...] | None = None
    stage_specs: list[tuple[GateSpec, ...]] = []
    stages: list[Stage] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0].lower()

        if keyword == "registers":
            if register is not None:
                raise ParseError(lineno, "duplicate registers line")
            if len(tokens) < 2:
                raise ParseError(lineno, "registers needs at least one wire dimension")
            try:
                register = tuple(int(t) for t in tokens[1:])
            except ValueError:
                raise ParseError(lineno, f"non-integer wire dimension in {line!r}") from None
            if any(d < 2 for d in register):
                raise ParseError(lineno, "wire dimensions must all be >= 2")
            continue

        if keyword == "stage":
            if register is None:
                raise ParseError(lineno, "stage before registers line")
            body = line[len("stage") :].strip()
            if not body:
                raise ParseError(lineno, "stage needs at least one gate")
            gates: list[Gate] = []
            specs: list[GateSpec] = []
            cursor = 0
            for part in body.split("|"):
                part = part.strip()
                if not part:
                    raise ParseError(lineno, "empty gate spec between '|' separators")
                gtokens = part.split()
                gate, spec, used = _build_gate(
                    gtokens[0].lower(), gtokens[1:], register, cursor, lineno, resolver
                )
                gates.append(gate)
                specs.append(spec)
                cursor += used
            if cursor != len(register):
                raise ValidationError(
                    f"line {lineno}: stage covers {cursor} of {len(register)} wires"
                )
            stages.append(Stage(tuple(gates)))
            stage_specs.append(tuple(specs))
            continue

        raise ParseError(lineno, f"unknown directive {tokens[0]!r}")

    if register is None:
        raise ParseError(1, "missing registers line")

    circuit = Circuit(register, tuple(stages))
    return CircuitDocument(register, tuple(stage_specs), circuit)


def parse_amplitude_lines(text: str) -> list[complex]:
    """One 're im' pair per line, comments allowed."""
    amps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        parts = s.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"expected 're im', got {s!r}")
        try:
            amps.append(complex(float(parts[0]), float(parts[1])))
        except ValueError:
            raise ParseError(lineno, f"non-numeric amplitude {s!r}") from None
    if not amps:
        raise ParseError(1, "empty amplitude list")
    return amps


def parse_input_spec(
    spec: str,
    dims: tuple[int, ...],
    amplitudes: list[complex] | None = None,
) -> StateVector:
    """Turn an input description into a normalized state over ``dims``."""
    total = prod(dims)
    if amplitudes is not None:
        if len(amplitudes) != total:
            raise DimensionMismatchError(
                f"{len(amplitudes)} amplitudes for a dimension-{total} register"
            )
        state = StateVector(dims, np.asarray(amplitudes, dtype=np.complex128))
        state.require_normalized()
        return state

    spec = spec.strip()
    if spec.startswith("|") and spec.endswith(">"):
        label = spec[1:-1]
        if any(d != 2 for d in dims):
            raise ValidationError("basis labels like |01> require an all-qubit register; use basis:<index>")
        if len(label) != len(dims) or any(ch not in "01" for ch in label):
            raise ValidationError(f"label {spec!r} does not match a {len(dims)}-qubit register")
        return StateVector.basis(dims, int(label, 2))
    if spec.startswith("basis:"):
        try:
            index = int(spec[len("basis:") :])
        except ValueError:
            raise ValidationError(f"bad basis index in {spec!r}") from None
        if not 0 <= index < total:
            raise ValidationError(f"basis index {index} out of range 0..{total - 1}")
        return StateVector.basis(dims, index)
    raise ValidationError(f"cannot understand input spec {spec!r}")


def format_basis_label(index: int, dims: tuple[int, ...]) -> str:
    """Inverse of the index convention: |0101> for qubits, |1,0,3> otherwise."""
    digits = []
    rem = index
    for d in reversed(dims):
        digits.append(rem % d)
        rem //= d
    digits.reverse()
    if all(d == 2 for d in dims):
        return "|" + "".join(str(b) for b in digits) + ">"
    return "|" + ",".join(str(b) for b in digits) + ">"
