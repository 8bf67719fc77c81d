import numpy as np
import pytest

from etf_partition.conference import (
    ConferenceMatrix,
    build_conference,
    build_symmetric_conference_paley,
    check_conference,
    conference_spectrum,
)
from etf_partition.linalg import eig_hermitian, spectral_norm


def test_base_case():
    np.testing.assert_array_equal(build_conference(1).entries, [[0, -1], [1, 0]])


def test_k2_hand_expansion():
    expected = [[0, -1, -1, -1], [1, 0, 1, -1], [1, -1, 0, 1], [1, 1, -1, 0]]
    np.testing.assert_array_equal(build_conference(2).entries, expected)


@pytest.mark.parametrize("k", range(1, 11))
def test_invariants_exact(k):
    c = build_conference(k).entries.astype(np.int64)
    n = 2**k
    assert c.shape == (n, n)
    assert np.all(np.diag(c) == 0)
    assert np.all(np.abs(c[~np.eye(n, dtype=bool)]) == 1)
    assert np.array_equal(c, -c.T)
    assert np.array_equal(c @ c.T, (n - 1) * np.eye(n, dtype=np.int64))


@pytest.mark.parametrize("k", [0, 13, -1, 2.5, True])
def test_depth_out_of_range(k):
    with pytest.raises(ValueError):
        build_conference(k)


def test_entries_are_read_only():
    c = build_conference(2)
    with pytest.raises(ValueError):
        c.entries[0, 0] = 1


@pytest.mark.parametrize("k", range(1, 6))
def test_norm_is_sqrt_n_minus_1(k):
    assert spectral_norm(build_conference(k).entries) == pytest.approx(np.sqrt(2**k - 1), abs=1e-10)


def test_spectrum_closed_form():
    s1 = conference_spectrum(build_conference(1))
    assert s1["values"] == (1j, -1j) and s1["multiplicity"] == 1
    s3 = conference_spectrum(build_conference(3))
    assert s3["values"] == (complex(0, np.sqrt(7)), complex(0, -np.sqrt(7)))
    assert s3["multiplicity"] == 4


def test_spectrum_k2_numeric():
    evals = eig_hermitian(1j * build_conference(2).entries).eigenvalues
    np.testing.assert_allclose(evals, [np.sqrt(3)] * 2 + [-np.sqrt(3)] * 2, atol=1e-12)


@pytest.mark.parametrize("k", range(1, 9))
def test_spectrum_checked_against_eigensolver(k):
    assert conference_spectrum(build_conference(k), check=True)["residual"] <= 1e-10 * np.sqrt(2**k)


def test_spectrum_rejects_invalid_input():
    bad = ConferenceMatrix(np.array([[0, 1], [1, 1]], dtype=np.int8))
    with pytest.raises(ValueError):
        conference_spectrum(bad)


@pytest.mark.parametrize("q", [5, 13, 17])
def test_paley_identity(q):
    c = build_symmetric_conference_paley(q).entries.astype(np.int64)
    assert c.shape == (q + 1, q + 1)
    assert np.array_equal(c, c.T)
    assert np.all(np.diag(c) == 0)
    assert np.array_equal(c @ c.T, q * np.eye(q + 1, dtype=np.int64))
    check_conference(c)


def test_paley_13_spectrum():
    c = build_symmetric_conference_paley(13)
    evals = eig_hermitian(c.entries).eigenvalues
    np.testing.assert_allclose(evals, [np.sqrt(13)] * 7 + [-np.sqrt(13)] * 7, atol=1e-10)
    assert conference_spectrum(c, check=True)["multiplicity"] == 7


@pytest.mark.parametrize("q", [3, 7, 9, 29])
def test_paley_unsupported(q):
    with pytest.raises(ValueError):
        build_symmetric_conference_paley(q)
