import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from graphhom.differential import SparseIntMatrix
from graphhom.rank import PRIMES, rank, rank_fraction_free, rank_mod_p


def dense_rank(rows):
    """Plain Gauss-Jordan over Fractions."""
    rows = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def M(rows):
    return SparseIntMatrix.from_dense(rows)


def test_examples():
    assert rank(M([[1, 0], [0, 0]])) == 1
    assert rank(M([[2, 4], [1, 2]])) == 1
    assert rank(SparseIntMatrix(0, 5)) == 0
    assert rank(SparseIntMatrix(3, 3)) == 0


def random_sparse(rng, rows, cols, density, bound):
    return [[rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(cols)]
            for _ in range(rows)]


def test_random_30x30_against_oracles():
    rng = random.Random(7)
    for trial in range(40):
        dense = random_sparse(rng, 30, 30, rng.choice([0.05, 0.1, 0.2]), 5)
        # force dependencies now and then
        if trial % 3 == 0:
            for i in range(5):
                a, b = rng.sample(range(30), 2)
                dense[a] = [x + 2 * y for x, y in zip(dense[a], dense[b])]
        expected = dense_rank(dense)
        if trial < 8:
            assert expected == sympy.Matrix(dense).rank()
        assert rank(M(dense)) == expected
        assert rank(M(dense), "modular") == expected


def test_large_entries_stay_exact():
    # the mod-p rank drops here; the exact rank must not
    p = PRIMES[0]
    dense = [[1, 1], [1, 1 + p]]
    assert rank(M(dense)) == 2
    assert rank_mod_p(M(dense), p) == 1
    with pytest.raises(ArithmeticError):
        rank(M(dense), "modular")


def test_unknown_method():
    with pytest.raises(ValueError):
        rank(M([[1]]), "float")


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 9).flatmap(lambda r: st.integers(1, 9).flatmap(
    lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r))))
def test_rank_properties(dense):
    A = M(dense)
    r = rank_fraction_free(A)
    assert r == rank_fraction_free(A.transpose())
    assert r == dense_rank(dense)
    assert r <= min(len(dense), len(dense[0]))
    for p in PRIMES:
        assert rank_mod_p(A, p) == r
