from __future__ import annotations

from functools import lru_cache

import numpy as np
import pytest

from etf_partition.conference import build_symmetric_conference_paley
from etf_partition.frame import build_frame
from etf_partition.gram import build_gram, build_r_matrix
from etf_partition.linalg import eig_hermitian, principal_submatrix


@lru_cache(maxsize=None)
def r_matrix(k: int):
    return build_r_matrix(k)


@lru_cache(maxsize=None)
def etf(k: int):
    return build_frame(r_matrix(k))


@lru_cache(maxsize=None)
def paley_setup(q: int):
    r = build_gram(build_symmetric_conference_paley(q), 1 / np.sqrt(q))
    return r, build_frame(r)


@lru_cache(maxsize=None)
def gram_block_spectrum(k: int, subset: tuple[int, ...]) -> np.ndarray:
    """Eigenvalues of the principal submatrix R(k)_S, cached across tests."""
    return eig_hermitian(principal_submatrix(r_matrix(k).matrix, subset)).eigenvalues


@pytest.fixture
def rng():
    return np.random.default_rng(20240531)


def random_hermitian(rng, n: int) -> np.ndarray:
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (x + x.conj().T) / 2


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
