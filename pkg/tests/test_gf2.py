import numpy as np
import pytest

from qstages.gf2 import as_bits, dot_mod2, gf2_nullspace


def brute_force_solutions(rows, n):
    """Every t with row . t = 0 (mod 2) for all rows, by full enumeration."""
    sols = []
    for t in range(2**n):
        bits = [(t >> (n - 1 - j)) & 1 for j in range(n)]
        if all(sum(r[j] * bits[j] for j in range(n)) % 2 == 0 for r in rows):
            sols.append(tuple(bits))
    return set(sols)


def span(basis, n):
    vectors = {(0,) * n}
    for b in basis:
        vectors |= {tuple((np.array(v, dtype=np.uint8) ^ b).tolist()) for v in vectors}
    return vectors


def test_three_equations_pin_t():
    # enumeration: of the 8 candidates only 000 and 111 satisfy all three rows
    rows = [[1, 1, 0], [1, 0, 1], [0, 1, 1]]
    basis = gf2_nullspace(rows, 3)
    assert len(basis) == 1
    assert basis[0].tolist() == [1, 1, 1]
    assert brute_force_solutions(rows, 3) == {(0, 0, 0), (1, 1, 1)}


def test_no_constraints_spans_everything():
    basis = gf2_nullspace([], 2)
    assert len(basis) == 2
    assert span(basis, 2) == {(0, 0), (0, 1), (1, 0), (1, 1)}


def test_full_rank_leaves_only_zero():
    assert gf2_nullspace([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3) == []


def test_zero_vector_never_reported():
    for rows, n in ([([0, 0],), 2], [([1, 1], [1, 1]), 2]):
        for b in gf2_nullspace(list(rows), n):
            assert b.any()


@pytest.mark.parametrize("n", [2, 4, 7, 10, 12])
def test_matches_brute_force(n):
    rng = np.random.default_rng(100 + n)
    for _ in range(8):
        n_rows = int(rng.integers(0, n + 3))
        rows = [rng.integers(0, 2, size=n).tolist() for _ in range(n_rows)]
        basis = gf2_nullspace(rows, n)
        # substitution: every basis vector satisfies every equation
        for b in basis:
            for r in rows:
                assert dot_mod2(r, b) == 0
        # exhaustive equivalence: the basis spans exactly the brute-force set
        assert span(basis, n) == brute_force_solutions(rows, n)


def test_as_bits_validation():
    with pytest.raises(ValueError):
        as_bits([0, 2], 2)
    with pytest.raises(ValueError):
        as_bits([0, 1], 3)
