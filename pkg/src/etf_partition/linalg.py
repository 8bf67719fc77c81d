"""Dense complex linear algebra: Hermitian eigensolver, spectral norm, submatrices.

The eigensolver is a cyclic Jacobi method.  Each sweep visits every
off-diagonal pair exactly once using a round-robin (tournament) ordering, so
the n/2 rotations of one round act on disjoint index pairs and are applied
together as vectorized numpy updates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "ConvergenceError",
    "HermitianEigenSystem",
    "as_complex_matrix",
    "eig_hermitian",
    "principal_submatrix",
    "spectral_norm",
    "cluster_eigenvalues",
]

OFF_DIAGONAL_TOL = 1e-13
MAX_SWEEPS = 64
HERMITIAN_TOL = 1e-12
PHASE_TOL = 1e-10


class ConvergenceError(RuntimeError):
    """Raised when the Jacobi iteration exceeds its sweep budget."""


@dataclass(frozen=True)
class HermitianEigenSystem:
    """Eigenvalues sorted descending with matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def reconstruct(self) -> np.ndarray:
        w = self.eigenvectors
        return (w * self.eigenvalues) @ w.conj().T


def as_complex_matrix(a, square: bool = True) -> np.ndarray:
    """Validate `a` as a finite 2-D matrix and return a complex128 copy."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if square and m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


@lru_cache(maxsize=64)
def _round_robin_steps(size: int) -> tuple[np.ndarray, ...]:
    """Permutations taking one round-robin round to the next (size even).

    After applying step i to the working order, slots (0,1), (2,3), ... hold the
    pairs of round i.  Over ``size - 1`` rounds every pair meets exactly once;
    the last step is followed by the first again on the next sweep.
    """
    players = list(range(size))
    layouts = []
    for _ in range(size - 1):
        layout = []
        for i in range(size // 2):
            layout += [players[i], players[size - 1 - i]]
        layouts.append(np.array(layout))
        players = [players[0], players[-1]] + players[1:-1]
    # layouts[i] lists original positions relative to the identity ordering;
    # convert to relative moves from layouts[i-1] (wrapping around).
    steps = []
    for prev, cur in zip([layouts[-1]] + layouts[:-1], layouts):
        slot = np.empty(size, dtype=np.intp)
        slot[prev] = np.arange(size)
        steps.append(slot[cur])
    return tuple(steps)


def _normalize_phases(w: np.ndarray) -> np.ndarray:
    # First component of magnitude > PHASE_TOL becomes real positive.
    mags = np.abs(w)
    first = np.argmax(mags > PHASE_TOL, axis=0)
    lead = w[first, np.arange(w.shape[1])]
    lead_mag = np.abs(lead)
    phase = np.where(lead_mag > 0, lead / np.where(lead_mag > 0, lead_mag, 1.0), 1.0)
    return w * phase.conj()


def eig_hermitian(
    a,
    tol: float = OFF_DIAGONAL_TOL,
    max_sweeps: int = MAX_SWEEPS,
) -> HermitianEigenSystem:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Iteration stops once the off-diagonal Frobenius norm falls below
    ``tol * ||A||_F``.  Raises ``ConvergenceError`` after ``max_sweeps``.
    """
    a = as_complex_matrix(a)
    skew = np.max(np.abs(a - a.conj().T))
    if skew > HERMITIAN_TOL * max(1.0, np.max(np.abs(a))):
        raise ValueError(f"matrix is not Hermitian (max |A - A*| = {skew:.3e})")
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    scale = np.linalg.norm(a)
    threshold = tol * scale
    size = n + (n % 2)
    if size != n:
        # Decoupled zero padding row/column; its rotations are all inactive.
        a = np.pad(a, ((0, 1), (0, 1)))
    v = np.eye(size, dtype=np.complex128)
    h = size // 2
    steps = _round_robin_steps(size)
    # where[i] is the original index sitting in working slot i
    where = np.arange(size)

    sweeps = 0
    while True:
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if n == 1 or off <= threshold or scale == 0.0:
            break
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal {off:.3e})"
            )
        for perm in steps:
            a = a.take(perm, axis=0).take(perm, axis=1)
            v = v.take(perm, axis=1)
            where = where[perm]

            apq = np.diagonal(a, 1)[::2]
            mag = np.abs(apq)
            active = mag > 1e-300
            if not active.any():
                continue
            d = np.diagonal(a).real
            safe = np.where(active, mag, 1.0)
            e = np.where(active, apq / safe, 1.0)
            tau = (d[1::2] - d[::2]) / (2.0 * safe)
            t = np.copysign(1.0, tau) / (np.abs(tau) + np.hypot(1.0, tau))
            t[~active] = 0.0
            c = 1.0 / np.hypot(1.0, t)
            sn = t * c
            # per-pair U = [[c, s], [-conj(e) s, conj(e) c]]; A <- U* A U, V <- V U
            ec = e.conj()
            g = -ec * sn
            hh = ec * c
            cols = a.reshape(size, h, 2)
            x, y = cols[:, :, 0].copy(), cols[:, :, 1]
            cols[:, :, 0] = x * c + y * g
            cols[:, :, 1] = x * sn + y * hh
            rows = a.reshape(h, 2, size)
            x, y = rows[:, 0, :].copy(), rows[:, 1, :]
            rows[:, 0, :] = c[:, None] * x + g.conj()[:, None] * y
            rows[:, 1, :] = sn[:, None] * x + hh.conj()[:, None] * y
            idx = np.arange(0, size, 2)
            a[idx, idx + 1] = 0.0
            a[idx + 1, idx] = 0.0
            cols = v.reshape(size, h, 2)
            x, y = cols[:, :, 0].copy(), cols[:, :, 1]
            cols[:, :, 0] = x * c + y * g
            cols[:, :, 1] = x * sn + y * hh
        sweeps += 1

    # back to the original ordering, dropping any padding slot
    slot = np.empty(size, dtype=np.intp)
    slot[where] = np.arange(size)
    a = a[np.ix_(slot, slot)][:n, :n]
    v = v[:, slot][:n, :n]
    evals = np.diag(a).real.copy()
    order = np.argsort(-evals, kind="stable")
    w = _normalize_phases(v[:, order])
    return HermitianEigenSystem(evals[order], w, sweeps)


def spectral_norm(a) -> float:
    """Operator 2-norm.  Hermitian input uses max |eigenvalue|, otherwise sqrt(max eig(A*A))."""
    a = as_complex_matrix(a)
    if not np.any(a):
        return 0.0
    if np.max(np.abs(a - a.conj().T)) <= HERMITIAN_TOL * np.max(np.abs(a)):
        evals = eig_hermitian(a).eigenvalues
        return float(max(abs(evals[0]), abs(evals[-1])))
    evals = eig_hermitian(a.conj().T @ a).eigenvalues
    return float(np.sqrt(max(evals[0], 0.0)))


def _check_index_set(s: Iterable[int], order: int) -> list[int]:
    idx = [int(i) for i in s]
    if not idx:
        raise ValueError("index set is empty")
    if len(set(idx)) != len(idx):
        raise ValueError("index set has duplicate entries")
    if min(idx) < 1 or max(idx) > order:
        raise ValueError(f"indices must lie in [1, {order}]")
    return sorted(idx)


def principal_submatrix(a, s: Sequence[int]) -> np.ndarray:
    """Rows and columns of `a` indexed by the 1-based set `s`, in increasing order."""
    a = as_complex_matrix(a)
    idx = np.array(_check_index_set(s, a.shape[0])) - 1
    return a[np.ix_(idx, idx)]


def cluster_eigenvalues(evals: np.ndarray, scale: float, rel_tol: float = 1e-8) -> list[tuple[float, int]]:
    """Group descending eigenvalues into (mean value, multiplicity) clusters.

    Neighbours closer than ``rel_tol * scale`` share a cluster.
    """
    tol = rel_tol * max(scale, 1.0)
    clusters: list[list[float]] = []
    for lam in evals:
        if clusters and abs(clusters[-1][-1] - lam) <= tol:
            clusters[-1].append(float(lam))
        else:
            clusters.append([float(lam)])
    return [(float(np.mean(c)), len(c)) for c in clusters]
