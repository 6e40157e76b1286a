"""Hidden-shift driver: given f promised one-to-one or two-to-one with an XOR
mask t, classify it and recover t.

Register layout: 2n qubit wires, the top n wires (positions 0..n-1, high
order) hold x, the bottom n hold the oracle output.  The measured top
outcomes y satisfy y . t = 0 (mod 2) whenever the mask t exists, because
the paired contributions of x and x^t cancel exactly when y . t is odd;
accumulating enough independent y pins t as the unique nonzero nullspace
element.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .circuit import Circuit, Stage
from .engine import eval_efficient, eval_naive
from .errors import MalformedTableError, NotTwoToOneError, ParseError
from .gates import Gate, gate_hadamard, gate_identity_on, gate_permutation
from .gf2 import as_bits, dot_mod2, gf2_nullspace
from .linalg import StateVector
from .measurement import measure_partial


class Classification(str, Enum):
    ONE_TO_ONE = "one-to-one"
    TWO_TO_ONE = "two-to-one"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class FunctionTable:
    """A function on n-bit strings, promised one-to-one or two-to-one.

    ``mask`` is the XOR mask t (as an integer) for two-to-one tables, None
    for one-to-one tables.  Anything else is rejected at construction.
    """

    n: int
    values: tuple[int, ...]
    mask: int | None = field(init=False)

    def __post_init__(self):
        n = int(self.n)
        values = tuple(int(v) for v in self.values)
        if n < 1:
            raise MalformedTableError("table needs n >= 1")
        size = 2**n
        if len(values) != size:
            raise MalformedTableError(f"table for n={n} needs {size} values, got {len(values)}")
        if any(not 0 <= v < size for v in values):
            raise MalformedTableError(f"table values must lie in 0..{size - 1}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "mask", _promise_mask(n, values))

    @property
    def size(self) -> int:
        return 2**self.n


def _promise_mask(n: int, values: tuple[int, ...]) -> int | None:
    """None for an injective table, the mask t for a valid two-to-one table."""
    first_preimage: dict[int, int] = {}
    mask = None
    counts: dict[int, int] = {}
    for x, v in enumerate(values):
        counts[v] = counts.get(v, 0) + 1
        if v in first_preimage and mask is None:
            mask = x ^ first_preimage[v]
        first_preimage.setdefault(v, x)
    if mask is None:
        return None  # injective
    if any(c != 2 for c in counts.values()):
        raise MalformedTableError("table is neither one-to-one nor exactly two-to-one")
    if any(values[x] != values[x ^ mask] for x in range(2**n)):
        raise MalformedTableError("collisions are not explained by a single XOR mask")
    return mask


def load_table(text: str) -> FunctionTable:
    """Parse a table file: first line n, then 2^n lines of 'x f(x)' in decimal."""
    lines = [(i + 1, raw.split("#", 1)[0].strip()) for i, raw in enumerate(text.splitlines())]
    lines = [(num, s) for num, s in lines if s]
    if not lines:
        raise ParseError(1, "empty function table")
    num, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise ParseError(num, f"expected the wire count n, got {head!r}") from None
    if n < 1:
        raise ParseError(num, "n must be >= 1")
    values = [-1] * 2**n
    if len(lines) - 1 != 2**n:
        raise ParseError(num, f"expected {2**n} table rows for n={n}, got {len(lines) - 1}")
    for num, s in lines[1:]:
        parts = s.split()
        if len(parts) != 2:
            raise ParseError(num, f"expected 'x f(x)', got {s!r}")
        try:
            x, fx = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(num, f"expected two integers, got {s!r}") from None
        if not 0 <= x < 2**n:
            raise ParseError(num, f"x = {x} out of range 0..{2**n - 1}")
        if values[x] != -1:
            raise ParseError(num, f"duplicate row for x = {x}")
        values[x] = fx
    try:
        return FunctionTable(n, tuple(values))
    except MalformedTableError as exc:
        raise MalformedTableError(f"table rejected: {exc}") from exc


def dump_table(table: FunctionTable) -> str:
    lines = [str(table.n)]
    lines += [f"{x} {v}" for x, v in enumerate(table.values)]
    return "\n".join(lines) + "\n"


def build_simon_oracle(table: FunctionTable) -> Gate:
    """Permutation gate (x, y) -> (x, y XOR f(x)) on 2n qubit wires; self-inverse."""
    n, size = table.n, table.size
    idx = np.arange(size * size, dtype=np.int64)
    x = idx >> n
    y = idx & (size - 1)
    fx = np.asarray(table.values, dtype=np.int64)[x]
    perm = (x << n) | (y ^ fx)
    return gate_permutation("oracle", (2,) * (2 * n), perm)


def build_simon_circuit(table: FunctionTable) -> Circuit:
    """H on the top n wires, the oracle, H on the top n wires again."""
    n = table.n
    hadamard_row = Stage((gate_hadamard(n), gate_identity_on((2,) * n)))
    return Circuit(
        register_dims=(2,) * (2 * n),
        stages=(hadamard_row, Stage((build_simon_oracle(table),)), hadamard_row),
    )


@dataclass(frozen=True)
class SimonResult:
    classification: Classification
    recovered_t: np.ndarray | None
    equations: list[np.ndarray]
    repetitions_used: int


def _index_to_bits(index: int, n: int) -> np.ndarray:
    return np.array([(index >> (n - 1 - j)) & 1 for j in range(n)], dtype=np.uint8)


def _bits_to_index(bits: np.ndarray) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | int(b)
    return out


def simon_run(
    table: FunctionTable,
    rng: np.random.Generator,
    repetitions: int | None = None,
) -> SimonResult:
    """Sample the top register ``repetitions`` times (default 3n) and solve.

    Each repetition starts from a freshly prepared state, which is the same
    deterministic circuit output every time, so the circuit is evaluated
    once and each repetition measures an untouched copy.  Classification:
    a nullspace of {0} alone means one-to-one; a one-dimensional nullspace
    whose candidate passes the classical check f(0) = f(t) means two-to-one
    with that t; anything else is inconclusive.
    """
    n = table.n
    reps = 3 * n if repetitions is None else int(repetitions)
    if reps < 1:
        raise ValueError("repetitions must be >= 1")

    circuit = build_simon_circuit(table)
    final, _ = eval_efficient(circuit, StateVector.basis(circuit.register_dims, 0))

    top_wires = range(n)
    equations = [
        _index_to_bits(measure_partial(final, top_wires, rng).basis_index, n)
        for _ in range(reps)
    ]

    basis = gf2_nullspace(equations, n)
    if len(basis) == 0:
        return SimonResult(Classification.ONE_TO_ONE, None, equations, reps)
    if len(basis) == 1:
        candidate = basis[0]
        t_int = _bits_to_index(candidate)
        if t_int != 0 and table.values[0] == table.values[t_int]:
            return SimonResult(Classification.TWO_TO_ONE, candidate, equations, reps)
    return SimonResult(Classification.INCONCLUSIVE, None, equations, reps)


def simon_topregister_distribution(table: FunctionTable) -> np.ndarray:
    """Exact probability of each top-register outcome, from the final state.

    Uses the full-matrix evaluator: the register dimension 4^n is small for
    every table this analysis runs on, and the distribution is exact rather
    than sampled.
    """
    circuit = build_simon_circuit(table)
    final, _ = eval_naive(circuit, StateVector.basis(circuit.register_dims, 0))
    size = table.size
    joint = np.abs(final.amps) ** 2
    return joint.reshape(size, size).sum(axis=1)


def simon_interference_check(table: FunctionTable, y) -> float:
    """Probability of measuring y on the top register; exactly 0 when t . y is odd."""
    if table.mask is None:
        raise NotTwoToOneError("interference coefficients are defined for two-to-one tables")
    bits = as_bits(y, table.n)
    dist = simon_topregister_distribution(table)
    return float(dist[_bits_to_index(bits)])


def random_two_to_one_table(
    n: int, rng: np.random.Generator, mask: int | None = None
) -> FunctionTable:
    """A uniformly chosen two-to-one table, optionally with a fixed mask."""
    size = 2**n
    t = int(mask) if mask is not None else int(rng.integers(1, size))
    if not 1 <= t < size:
        raise MalformedTableError(f"mask must lie in 1..{size - 1}")
    values = [-1] * size
    labels = rng.permutation(size)[: size // 2]
    next_label = 0
    for x in range(size):
        if values[x] == -1:
            values[x] = values[x ^ t] = int(labels[next_label])
            next_label += 1
    return FunctionTable(n, tuple(values))


def random_one_to_one_table(n: int, rng: np.random.Generator) -> FunctionTable:
    return FunctionTable(n, tuple(int(v) for v in rng.permutation(2**n)))


def mask_bits(table: FunctionTable) -> np.ndarray | None:
    """The promise mask as a bit vector (wire 0 first), or None if one-to-one."""
    if table.mask is None:
        return None
    return _index_to_bits(table.mask, table.n)


def check_equation(table: FunctionTable, y) -> bool:
    """True iff the measured outcome y is orthogonal to the table's mask."""
    if table.mask is None:
        raise NotTwoToOneError("no mask: table is one-to-one")
    return dot_mod2(mask_bits(table), as_bits(y, table.n)) == 0
