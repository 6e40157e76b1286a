"""Discrete-logarithm circuit over (p-1)-dimensional registers, plus the
classical order-finding factoring driver.

The circuit works on three wires of dimension p-1.  The third register
holds a multiplicative-group element v in {1..p-1} encoded as index v-1;
the oracle multiplies it by g^a x^(-b) mod p, which on the initial identity
element is plain replacement while staying a permutation (hence unitary).

Measured first-register pairs (c, d) are supported exactly on
c*r + d = 0 (mod p-1) under the forward Fourier convention used here
(verified by brute force in the tests), so whenever gcd(c, p-1) = 1 the
exponent is r = -d * c^(-1) mod (p-1).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Stage
from .engine import eval_efficient
from .errors import (
    AttemptsExhaustedError,
    InvalidInputError,
    InvalidInstanceError,
    TriesExhaustedError,
)
from .gates import Gate, gate_identity, gate_permutation, gate_qft
from .linalg import StateVector
from .measurement import measure_full
from .numtheory import gcd, is_prime, mod_inverse, mod_pow, order_of

#: Sign in the recovery formula r = DLOG_SIGN * d * c^(-1) mod (p-1), pinned by
#: the brute-force support check on the circuit's output distribution.
DLOG_SIGN = -1

DEFAULT_MAX_TRIES = 50


@dataclass(frozen=True)
class DlogInstance:
    """Find r with g**r = x (mod p): p an odd prime, g a generator mod p."""

    p: int
    g: int
    x: int

    def __post_init__(self):
        p, g, x = int(self.p), int(self.g), int(self.x)
        if p < 3 or not is_prime(p):
            raise InvalidInstanceError(f"p = {p} is not an odd prime")
        if not 1 <= g < p or order_of(g, p) != p - 1:
            raise InvalidInstanceError(f"g = {g} does not generate the multiplicative group mod {p}")
        if not 1 <= x < p:
            raise InvalidInstanceError(f"x = {x} is not in 1..{p - 1}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "x", x)

    @property
    def group_order(self) -> int:
        return self.p - 1


@dataclass(frozen=True)
class DlogOutcome:
    """One successful measurement: the register values and the recovered exponent."""

    c: int
    d: int
    third_register: int
    r: int | None
    tries: int


def build_dlog_oracle(inst: DlogInstance) -> Gate:
    """Permutation |a, b, m> -> |a, b, m * g^a x^(-b) mod p> on dims (p-1,)^3."""
    p, q = inst.p, inst.group_order
    x_inv = mod_inverse(inst.x, p)
    g_pow = np.array([mod_pow(inst.g, a, p) for a in range(q)], dtype=np.int64)
    x_inv_pow = np.array([mod_pow(x_inv, b, p) for b in range(q)], dtype=np.int64)

    idx = np.arange(q**3, dtype=np.int64)
    a = idx // (q * q)
    b = (idx // q) % q
    elem = idx % q + 1
    value = elem * g_pow[a] % p * x_inv_pow[b] % p
    perm = a * q * q + b * q + (value - 1)
    return gate_permutation(f"dlog-oracle-p{p}", (q, q, q), perm)


def build_dlog_circuit(inst: DlogInstance) -> Circuit:
    """QFT on the two exponent registers, the oracle, then QFT again."""
    q = inst.group_order
    fourier_row = Stage((gate_qft(q), gate_qft(q), gate_identity(q)))
    return Circuit(
        register_dims=(q, q, q),
        stages=(fourier_row, Stage((build_dlog_oracle(inst),)), fourier_row),
    )


def dlog_input_state(inst: DlogInstance) -> StateVector:
    """All registers zeroed; the third register's zero is the group identity."""
    q = inst.group_order
    return StateVector.basis((q, q, q), 0)


def split_outcome(index: int, q: int) -> tuple[int, int, int]:
    """Decompose a measured basis index into the (c, d, third) register values."""
    return index // (q * q), (index // q) % q, index % q


def shor_dlog(
    inst: DlogInstance,
    rng: np.random.Generator,
    max_tries: int = DEFAULT_MAX_TRIES,
) -> DlogOutcome:
    """Run the circuit and measure until gcd(c, p-1) = 1, then solve for r.

    The pre-measurement state is the same on every try (fresh preparation of
    a deterministic circuit), so the circuit is evaluated once and each try
    measures an untouched copy.  Raises TriesExhaustedError if no usable c
    appears within ``max_tries``.
    """
    if max_tries < 1:
        raise ValueError("max_tries must be >= 1")
    q = inst.group_order
    circuit = build_dlog_circuit(inst)
    final, _ = eval_efficient(circuit, dlog_input_state(inst))

    for attempt in range(1, max_tries + 1):
        outcome = measure_full(final, rng)
        c, d, third = split_outcome(outcome.basis_index, q)
        if gcd(c, q) == 1:
            r = DLOG_SIGN * d * mod_inverse(c, q) % q
            return DlogOutcome(c, d, third, r, attempt)
    raise TriesExhaustedError(
        f"no measurement with gcd(c, {q}) = 1 within {max_tries} tries"
    )


def factor(
    n: int,
    rng: np.random.Generator,
    max_attempts: int = DEFAULT_MAX_TRIES,
) -> int:
    """Find a nontrivial factor of an odd composite n via order finding.

    Each attempt draws x in 2..n-1.  A shared factor with n is returned
    immediately; otherwise the multiplicative order r of x is computed (the
    classical desk-scale oracle) and the attempt fails when r is odd or
    x^(r/2) = -1 (mod n), else gcd(x^(r/2) - 1, n) is a proper factor.
    """
    n = int(n)
    if n < 3 or n % 2 == 0:
        raise InvalidInputError(f"n = {n} must be an odd integer >= 3")
    if is_prime(n):
        raise InvalidInputError(f"n = {n} is prime; nothing to factor")
    if max_attempts < 1:
        raise ValueError("max_attempts must be >= 1")

    for _ in range(max_attempts):
        x = int(rng.integers(2, n))
        shared = gcd(x, n)
        if shared > 1:
            return shared
        r = order_of(x, n)
        if r % 2 == 1:
            continue
        half = mod_pow(x, r // 2, n)
        if half == n - 1:
            continue
        f = gcd(half - 1, n)
        if 1 < f < n:
            return f
    raise AttemptsExhaustedError(f"no factor of {n} found within {max_attempts} attempts")
