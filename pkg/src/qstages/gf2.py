"""Row reduction and nullspace extraction over GF(2)."""
from __future__ import annotations

import numpy as np


def as_bits(vec, n: int | None = None) -> np.ndarray:
    """Coerce to a uint8 0/1 vector, optionally checking its length."""
    bits = np.asarray(vec, dtype=np.uint8)
    if bits.ndim != 1:
        raise ValueError(f"expected a flat bit vector, got shape {bits.shape}")
    if not np.all(bits <= 1):
        raise ValueError("bit vectors may only contain 0 and 1")
    if n is not None and bits.size != n:
        raise ValueError(f"bit vector of length {bits.size}, expected {n}")
    return bits


def gf2_nullspace(rows, n: int) -> list[np.ndarray]:
    """Basis of the solution space {t : row . t = 0 (mod 2) for every row}.

    Returns one uint8 vector per free variable after elimination; with no
    rows the basis spans the whole n-dimensional space, and with full-rank
    rows the basis is empty (only the zero vector solves, which is never
    reported).
    """
    mat = np.array([as_bits(r, n) for r in rows], dtype=np.uint8)
    if mat.size == 0:
        mat = mat.reshape(0, n)

    # reduced row echelon form, tracking the pivot column of each rank row
    rref = mat.copy()
    pivot_cols: list[int] = []
    rank = 0
    for col in range(n):
        pivot = None
        for r in range(rank, rref.shape[0]):
            if rref[r, col]:
                pivot = r
                break
        if pivot is None:
            continue
        if pivot != rank:
            rref[[rank, pivot]] = rref[[pivot, rank]]
        for r in range(rref.shape[0]):
            if r != rank and rref[r, col]:
                rref[r, :] ^= rref[rank, :]
        pivot_cols.append(col)
        rank += 1

    free_cols = [c for c in range(n) if c not in pivot_cols]
    basis = []
    for free in free_cols:
        vec = np.zeros(n, dtype=np.uint8)
        vec[free] = 1
        # back-substitute: pivot variable = value forced by the free column
        for row_idx, pc in enumerate(pivot_cols):
            if rref[row_idx, free]:
                vec[pc] = 1
        basis.append(vec)
    return basis


def dot_mod2(a, b) -> int:
    """Inner product of two bit vectors modulo 2."""
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch {a.shape} vs {b.shape}")
    return int(np.bitwise_xor.reduce(a & b)) if a.size else 0
