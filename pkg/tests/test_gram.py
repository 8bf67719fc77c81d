import math

import numpy as np
import pytest

from etf_partition.conference import build_conference
from etf_partition.gram import (
    DiagonalBlockIndex,
    block_conjugated,
    block_index_set,
    block_norm,
    build_gram,
    build_r_matrix,
    diagonal_block,
    reference_block,
)
from etf_partition.linalg import eig_hermitian, spectral_norm

from conftest import r_matrix


def test_k1_alpha1_hand_computation():
    r = build_gram(build_conference(1), 1.0)
    np.testing.assert_array_equal(r.matrix, [[1, -1j], [1j, 1]])
    np.testing.assert_allclose(eig_hermitian(r.matrix).eigenvalues, [2, 0], atol=1e-15)


@pytest.mark.parametrize("k", range(1, 7))
def test_structure(k):
    r = r_matrix(k)
    n = 2**k
    assert np.all(np.diag(r.matrix) == 1)
    off = r.matrix[~np.eye(n, dtype=bool)]
    assert np.all(off.real == 0) and np.all(np.abs(off.imag) == r.alpha)
    assert np.array_equal(r.matrix, r.matrix.conj().T)
    assert r.field_tag == "complex"


def test_k3_spectrum():
    evals = eig_hermitian(r_matrix(3).matrix).eigenvalues
    np.testing.assert_allclose(evals, [2] * 4 + [0] * 4, atol=1e-10)


@pytest.mark.parametrize("alpha", [0.1, 0.3, 1.0])
def test_norm_formula_any_alpha(alpha):
    r = build_gram(build_conference(3), alpha)
    assert spectral_norm(r.matrix) == pytest.approx(1 + alpha * math.sqrt(7), abs=1e-10)


@pytest.mark.parametrize("alpha", [0.0, -1.0, float("nan")])
def test_rejects_nonpositive_alpha(alpha):
    with pytest.raises(ValueError):
        build_gram(build_conference(2), alpha)


def test_block_index_sets():
    assert block_index_set(DiagonalBlockIndex(3, 1), 4) == [1, 2]
    assert block_index_set(DiagonalBlockIndex(2, 2), 4) == [5, 6, 7, 8]
    assert block_index_set(DiagonalBlockIndex(4, 16), 4) == [16]
    for bad in (DiagonalBlockIndex(5, 1), DiagonalBlockIndex(2, 5), DiagonalBlockIndex(1, 0)):
        with pytest.raises(ValueError):
            block_index_set(bad, 4)


@pytest.mark.parametrize("k", range(1, 7))
def test_block_index_sets_partition_each_depth(k):
    for d in range(k + 1):
        merged = [i for q in range(1, 2**d + 1) for i in block_index_set(DiagonalBlockIndex(d, q), k)]
        assert merged == list(range(1, 2**k + 1))


def test_diagonal_block_examples():
    r = r_matrix(2)
    np.testing.assert_array_equal(diagonal_block(r, DiagonalBlockIndex(0, 1)), r.matrix)
    lower = diagonal_block(r, DiagonalBlockIndex(1, 2))
    expected = np.eye(2) - 1j * r.alpha * build_conference(1).entries
    np.testing.assert_array_equal(lower, expected)
    r4 = r_matrix(4)
    block = diagonal_block(r4, DiagonalBlockIndex(2, 3))
    np.testing.assert_array_equal(block, np.eye(4) - 1j * r4.alpha * build_conference(2).entries)


@pytest.mark.parametrize("k", range(1, 9))
def test_conjugation_parity_exhaustive(k):
    r = r_matrix(k)
    for d in range(k + 1):
        for q in range(1, 2**d + 1):
            idx = DiagonalBlockIndex(d, q)
            assert np.array_equal(diagonal_block(r, idx), reference_block(k, idx, r.alpha)), (d, q)


def test_parity_rule():
    assert [block_conjugated(DiagonalBlockIndex(2, q)) for q in (1, 2, 3, 4)] == [False, True, True, False]


def test_block_norm_examples():
    r4 = r_matrix(4)
    assert block_norm(r4, DiagonalBlockIndex(4, 7)) == 1.0
    assert block_norm(r4, DiagonalBlockIndex(1, 2)) == pytest.approx(1.6831300510639733, abs=1e-12)
    assert block_norm(r4, DiagonalBlockIndex(0, 1)) == pytest.approx(2.0, abs=1e-15)
    with pytest.raises(ValueError):
        block_norm(build_r_matrix(4, alpha=0.5), DiagonalBlockIndex(1, 1))


@pytest.mark.parametrize("k", range(1, 7))
def test_block_norm_and_spectrum_match_eigensolver(k):
    r = r_matrix(k)
    alpha = r.alpha
    for d in range(k + 1):
        for q in range(1, 2**d + 1):
            idx = DiagonalBlockIndex(d, q)
            closed = block_norm(r, idx, check=True)
            evals = eig_hermitian(diagonal_block(r, idx)).eigenvalues
            assert abs(evals[0] - closed) <= 1e-10
            if d < k:
                half = 2 ** (k - d - 1)
                spread = math.sqrt(2 ** (k - d) - 1) * alpha
                np.testing.assert_allclose(evals, [1 + spread] * half + [1 - spread] * half, atol=1e-10)
