import json

import numpy as np
import pytest

from etf_partition.frame import (
    Frame,
    SpectrumError,
    build_frame,
    frame_from_basis,
    frame_from_json,
    frame_residuals,
    frame_to_json,
    load_frame,
    max_frame_correlation,
    save_frame,
    verify_welch_equality,
    welch_bound,
)
from etf_partition.gram import build_r_matrix
from etf_partition.linalg import eig_hermitian

from conftest import etf, paley_setup, r_matrix


def test_k1_two_scalars():
    f = etf(1)
    assert f.n == 2 and f.m == 1
    np.testing.assert_allclose(np.abs(f.vectors[:, 0]), [np.sqrt(0.5)] * 2, atol=1e-15)
    assert abs(f.gram()[0, 1]) == pytest.approx(0.5, abs=1e-15)


@pytest.mark.parametrize("k", range(1, 7))
def test_frame_invariants(k):
    f, r = etf(k), r_matrix(k)
    assert f.m == f.n // 2
    res = frame_residuals(f)
    assert res["tightness"] <= 1e-10
    assert res["norms"] <= 1e-10
    assert res["equiangular"] <= 1e-10
    assert np.max(np.abs(f.gram() - 0.5 * r.matrix)) <= 1e-10


def test_k5_tight():
    f = etf(5)
    assert np.max(np.abs(f.frame_operator() - np.eye(16))) <= 1e-10


def test_inner_products_follow_r(rng):
    f, r = etf(4), r_matrix(4)
    v = f.vectors
    for _ in range(20):
        j, l = rng.integers(0, 16, size=2)
        inner = np.vdot(v[l], v[j])  # <f_j, f_l>, conjugate-linear in the second slot
        assert abs(inner - 0.5 * r.matrix[l, j]) <= 1e-10


def test_gram_invariant_under_eigenspace_rotation(rng):
    r = r_matrix(5)
    w = eig_hermitian(r.matrix).eigenvectors[:, :16]
    z = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
    u, _ = np.linalg.qr(z)
    rotated = frame_from_basis(w @ u)
    np.testing.assert_allclose(rotated.gram(), etf(5).gram(), atol=1e-10)


def test_rejects_wrong_spectrum():
    with pytest.raises(SpectrumError):
        build_frame(build_r_matrix(3, alpha=0.2))


def test_max_frame_correlation_cases():
    assert max_frame_correlation(Frame(np.array([[1.0, 0.0], [1.0, 0.0]]))) == pytest.approx(1.0)
    assert max_frame_correlation(Frame(np.eye(3))) == 0.0
    with pytest.raises(ValueError):
        max_frame_correlation(Frame(np.eye(1)))


@pytest.mark.parametrize("k", range(2, 7))
def test_etf_meets_welch_bound(k):
    f = etf(k)
    assert max_frame_correlation(f) == pytest.approx(1 / np.sqrt(2**k - 1), abs=1e-9)
    ok, residual = verify_welch_equality(f)
    assert ok and abs(residual) <= 1e-9


def test_welch_fails_for_repeated_vector():
    f = Frame(np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 0.0]]))
    ok, residual = verify_welch_equality(f)
    assert not ok and residual == pytest.approx(1 - welch_bound(3, 2))


def test_real_paley_etf():
    r, f = paley_setup(5)
    assert f.field_tag == "real" and f.vectors.dtype == np.float64
    assert (f.n, f.m) == (6, 3)
    assert verify_welch_equality(f)[0]
    assert all(v <= 1e-10 for v in frame_residuals(f).values())
    np.testing.assert_allclose(f.gram(), 0.5 * r.matrix.real, atol=1e-12)


def test_json_round_trip_is_exact(tmp_path):
    f = etf(3)
    path = tmp_path / "f.json"
    save_frame(f, path)
    g = load_frame(path)
    assert np.array_equal(g.vectors, f.vectors)
    assert (g.k, g.alpha, g.field_tag) == (f.k, f.alpha, f.field_tag)
    data = json.loads(path.read_text())
    assert set(data) == {"k", "n", "m", "alpha", "field", "vectors"}
    assert len(data["vectors"][0][0]) == 2


def test_json_rejects_malformed():
    with pytest.raises(ValueError):
        frame_from_json({"vectors": [[1, 2, 3]]})
    with pytest.raises(ValueError):
        frame_from_json({"n": 3, "vectors": [[[1, 0]], [[0, 1]]]})
    with pytest.raises(ValueError):
        frame_from_json({})
    assert frame_from_json(frame_to_json(etf(2))).n == 4
