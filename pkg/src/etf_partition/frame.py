"""Equiangular tight frames synthesized from a two-valued R-matrix spectrum."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .gram import GramMatrix, welch_alpha
from .linalg import cluster_eigenvalues, eig_hermitian

__all__ = [
    "Frame",
    "SpectrumError",
    "build_frame",
    "frame_from_basis",
    "frame_residuals",
    "max_frame_correlation",
    "welch_bound",
    "verify_welch_equality",
    "frame_to_json",
    "frame_from_json",
    "save_frame",
    "load_frame",
]


class SpectrumError(ValueError):
    """R does not have the {n/m, 0} spectrum needed to extract a frame."""


@dataclass(frozen=True)
class Frame:
    """n vectors in H^m stored as the rows of ``vectors`` (shape n x m)."""

    vectors: np.ndarray = field(repr=False)
    field_tag: str = "complex"
    k: int | None = None
    alpha: float | None = None

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def m(self) -> int:
        return self.vectors.shape[1]

    @property
    def delta(self) -> float:
        return self.m / self.n

    def gram(self) -> np.ndarray:
        """Matrix of inner products, entry (j, l) = f_j^* f_l."""
        return self.vectors.conj() @ self.vectors.T

    def frame_operator(self) -> np.ndarray:
        """sum_j f_j f_j^*."""
        return self.vectors.T @ self.vectors.conj()

    def __post_init__(self):
        if self.vectors.ndim != 2 or self.vectors.shape[0] < 1 or self.vectors.shape[1] < 1:
            raise ValueError("frame needs a non-empty n x m vector array")
        self.vectors.setflags(write=False)


def frame_from_basis(basis: np.ndarray, field_tag: str = "complex", k=None, alpha=None) -> Frame:
    """Frame whose j-th vector is the conjugate of row j of an n x m orthonormal basis.

    With ``basis`` spanning the top eigenspace of R this makes F^*F = (m/n) R.
    """
    vectors = np.conj(basis)
    if field_tag == "real":
        if np.max(np.abs(vectors.imag), initial=0.0) > 1e-12:
            raise ValueError("real frame requested but basis has imaginary parts")
        vectors = vectors.real.copy()
    return Frame(np.ascontiguousarray(vectors), field_tag, k, alpha)


def build_frame(r: GramMatrix) -> Frame:
    """ETF in H^m from the eigenvectors of R for the eigenvalue n/m.

    Raises ``SpectrumError`` unless R has exactly the two eigenvalue clusters
    n/m (multiplicity m) and 0 (multiplicity n - m).
    """
    n = r.order
    system = eig_hermitian(r.matrix)
    evals = system.eigenvalues
    scale = float(max(abs(evals[0]), abs(evals[-1])))
    clusters = cluster_eigenvalues(evals, scale)
    tol = 1e-8 * max(scale, 1.0)
    if len(clusters) != 2:
        raise SpectrumError(f"expected two eigenvalue clusters, found {len(clusters)}")
    (top, m), (bottom, rest) = clusters
    if abs(bottom) > tol or abs(top - n / m) > tol:
        raise SpectrumError(f"spectrum {{{top:.6g} x{m}, {bottom:.6g} x{rest}}} is not {{n/m, 0}}")
    return frame_from_basis(system.eigenvectors[:, :m], r.field_tag, r.k, r.alpha)


def frame_residuals(f: Frame) -> dict:
    """Max-abs deviations from tightness, equal norms m/n, and equiangularity."""
    n, m = f.n, f.m
    g = f.gram()
    off = np.abs(g[~np.eye(n, dtype=bool)]) if n > 1 else np.zeros(1)
    return {
        "tightness": float(np.max(np.abs(f.frame_operator() - np.eye(m)))),
        "norms": float(np.max(np.abs(np.diag(g).real - m / n))),
        "equiangular": float(np.max(np.abs(off - (m / n) * welch_alpha(n, m)))) if n > 1 else 0.0,
    }


def max_frame_correlation(f: Frame) -> float:
    """Largest |<u_j, u_l>| over j != l for the unit-normalized vectors u_j."""
    if f.n < 2:
        raise ValueError("maximal frame correlation needs at least two vectors")
    norms = np.linalg.norm(f.vectors, axis=1)
    if np.any(norms == 0):
        raise ValueError("frame contains a zero vector")
    u = f.vectors / norms[:, None]
    g = np.abs(u.conj() @ u.T)
    np.fill_diagonal(g, 0.0)
    return float(g.max())


def welch_bound(n: int, m: int) -> float:
    return welch_alpha(n, m) if n > 1 else 0.0


def verify_welch_equality(f: Frame, tol: float = 1e-9) -> tuple[bool, float]:
    """(is_etf, M(F) - Welch bound)."""
    residual = max_frame_correlation(f) - welch_bound(f.n, f.m)
    return abs(residual) <= tol, residual


def frame_to_json(f: Frame) -> dict:
    vecs = np.asarray(f.vectors, dtype=np.complex128)
    return {
        "k": f.k,
        "n": f.n,
        "m": f.m,
        "alpha": f.alpha,
        "field": f.field_tag,
        "vectors": [[[float(z.real), float(z.imag)] for z in row] for row in vecs],
    }


def frame_from_json(data: dict) -> Frame:
    try:
        vecs = np.array(data["vectors"], dtype=float)
        if vecs.ndim != 3 or vecs.shape[2] != 2:
            raise ValueError("vectors must be an n x m array of [re, im] pairs")
        z = vecs[..., 0] + 1j * vecs[..., 1]
        n, m = int(data.get("n", z.shape[0])), int(data.get("m", z.shape[1]))
        if z.shape != (n, m):
            raise ValueError(f"declared shape ({n}, {m}) does not match vectors {z.shape}")
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed frame JSON: {exc}") from exc
    tag = data.get("field", "complex")
    if tag == "real":
        z = z.real.copy()
    alpha = data.get("alpha")
    k = data.get("k")
    return Frame(z, tag, None if k is None else int(k), None if alpha is None else float(alpha))


def save_frame(f: Frame, path) -> None:
    Path(path).write_text(json.dumps(frame_to_json(f)) + "\n")


def load_frame(path) -> Frame:
    return frame_from_json(json.loads(Path(path).read_text()))

