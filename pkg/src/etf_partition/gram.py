"""The R-matrix R(k) = I + i*alpha*C(k) and its recursive diagonal sub-blocks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .conference import ConferenceMatrix, build_conference, check_conference
from .linalg import principal_submatrix, spectral_norm

__all__ = [
    "GramMatrix",
    "DiagonalBlockIndex",
    "mss_alpha",
    "welch_alpha",
    "build_gram",
    "build_r_matrix",
    "block_index_set",
    "diagonal_block",
    "block_conjugated",
    "reference_block",
    "block_norm",
]


def welch_alpha(n: int, m: int) -> float:
    """Off-diagonal magnitude sqrt((n - m) / (m (n - 1))) of a unit-diagonal ETF Gram matrix."""
    return math.sqrt((n - m) / (m * (n - 1)))


def mss_alpha(k: int) -> float:
    """alpha = 1/sqrt(2^k - 1), the n = 2m case."""
    return 1.0 / math.sqrt(2**k - 1)


@dataclass(frozen=True)
class GramMatrix:
    """Hermitian R = I + i alpha C (skew C) or I + alpha C (symmetric C)."""

    matrix: np.ndarray = field(repr=False)
    alpha: float
    k: int | None
    field_tag: str  # "complex" or "real"

    @property
    def order(self) -> int:
        return self.matrix.shape[0]

    def __post_init__(self):
        self.matrix.setflags(write=False)


@dataclass(frozen=True, order=True)
class DiagonalBlockIndex:
    """Block at depth ``d`` and 1-based position ``q`` along the diagonal."""

    d: int
    q: int

    def validate(self, k: int) -> None:
        if not 0 <= self.d <= k:
            raise ValueError(f"depth d={self.d} outside [0, {k}]")
        if not 1 <= self.q <= 2**self.d:
            raise ValueError(f"position q={self.q} outside [1, {2 ** self.d}] at depth {self.d}")

    def size(self, k: int) -> int:
        return 2 ** (k - self.d)


def build_gram(c: ConferenceMatrix, alpha: float) -> GramMatrix:
    check_conference(c.entries)
    if not alpha > 0 or not math.isfinite(alpha):
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    n = c.order
    if c.skew:
        r = np.eye(n, dtype=np.complex128) + 1j * alpha * c.entries
        tag = "complex"
    else:
        r = np.eye(n, dtype=np.complex128) + alpha * c.entries
        tag = "real"
    return GramMatrix(r, float(alpha), c.k, tag)


def build_r_matrix(k: int, alpha: float | None = None) -> GramMatrix:
    """R(k) with the MSS choice of alpha unless one is given."""
    return build_gram(build_conference(k), mss_alpha(k) if alpha is None else alpha)


def block_index_set(idx: DiagonalBlockIndex, k: int) -> list[int]:
    """1-based contiguous index range {(q-1) 2^(k-d) + 1, ..., q 2^(k-d)}."""
    idx.validate(k)
    size = 2 ** (k - idx.d)
    return list(range((idx.q - 1) * size + 1, idx.q * size + 1))


def _depth(r: GramMatrix) -> int:
    if r.k is None:
        raise ValueError("diagonal blocks are defined only for the recursive R(k)")
    return r.k


def diagonal_block(r: GramMatrix, idx: DiagonalBlockIndex) -> np.ndarray:
    return principal_submatrix(r.matrix, block_index_set(idx, _depth(r)))


def block_conjugated(idx: DiagonalBlockIndex) -> bool:
    """True when block (d, q) is the conjugate of R(k - d).

    Unrolling the two-block form of R(k) (upper-left R(k-1), lower-right its
    conjugate) flips conjugation once per set bit of q - 1.
    """
    return bin(idx.q - 1).count("1") % 2 == 1


def reference_block(k: int, idx: DiagonalBlockIndex, alpha: float) -> np.ndarray:
    """R(k - d) built directly with the same alpha, conjugated per ``block_conjugated``."""
    idx.validate(k)
    if idx.d == k:
        return np.ones((1, 1), dtype=np.complex128)
    block = build_gram(build_conference(k - idx.d), alpha).matrix
    return block.conj() if block_conjugated(idx) else block.copy()


def block_norm(r: GramMatrix, idx: DiagonalBlockIndex, check: bool = False) -> float:
    """Closed form 1 + alpha sqrt(2^(k-d) - 1); requires alpha = 1/sqrt(2^k - 1).

    ``check=True`` also compares against the eigensolver norm of the block.
    """
    k = _depth(r)
    idx.validate(k)
    if not math.isclose(r.alpha, mss_alpha(k), rel_tol=1e-12):
        raise ValueError(f"block_norm needs alpha = 1/sqrt(2^k - 1), got {r.alpha!r}")
    value = 1.0 + r.alpha * math.sqrt(2 ** (k - idx.d) - 1)
    if check:
        numeric = spectral_norm(diagonal_block(r, idx))
        if abs(numeric - value) > 1e-10:
            raise ArithmeticError(f"block ({idx.d},{idx.q}) norm {numeric!r} != closed form {value!r}")
    return value
