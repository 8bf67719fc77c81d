"""Skew-symmetric conference matrices of order 2^k and small Paley (symmetric) ones."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import eig_hermitian

__all__ = [
    "MAX_DEPTH",
    "PALEY_ORDERS",
    "ConferenceMatrix",
    "build_conference",
    "build_symmetric_conference_paley",
    "conference_spectrum",
    "check_conference",
]

MAX_DEPTH = 12
PALEY_ORDERS = (5, 13, 17)
_QUADRATIC_RESIDUES = {q: frozenset(x * x % q for x in range(1, q)) for q in PALEY_ORDERS}


@dataclass(frozen=True)
class ConferenceMatrix:
    """Integer conference matrix.

    ``k`` is the recursion depth for the skew-symmetric family and ``None`` for
    the symmetric Paley matrices, which have order q + 1.
    """

    entries: np.ndarray = field(repr=False)
    k: int | None = None

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    @property
    def skew(self) -> bool:
        return bool(np.array_equal(self.entries, -self.entries.T))

    def __post_init__(self):
        self.entries.setflags(write=False)


def check_conference(entries: np.ndarray) -> None:
    """Raise ValueError unless `entries` is a skew-symmetric or symmetric conference matrix.

    All checks are exact integer arithmetic.
    """
    c = np.asarray(entries)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise ValueError("conference matrix must be square")
    n = c.shape[0]
    if np.any(np.diag(c) != 0):
        raise ValueError("diagonal must be zero")
    off = c[~np.eye(n, dtype=bool)]
    if np.any(np.abs(off) != 1):
        raise ValueError("off-diagonal entries must be +1 or -1")
    ci = c.astype(np.int64)
    if not np.array_equal(ci @ ci.T, (n - 1) * np.eye(n, dtype=np.int64)):
        raise ValueError("C C^T != (n-1) I")
    if not (np.array_equal(ci, -ci.T) or np.array_equal(ci, ci.T)):
        raise ValueError("matrix is neither skew-symmetric nor symmetric")


def build_conference(k: int) -> ConferenceMatrix:
    """C(k) of order 2^k from the block recursion.

    C(1) = [[0, -1], [1, 0]] and
    C(k) = [[C(k-1), C(k-1) - I], [C(k-1) + I, -C(k-1)]].
    """
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool) or not 1 <= k <= MAX_DEPTH:
        raise ValueError(f"k must be an integer in [1, {MAX_DEPTH}], got {k!r}")
    c = np.array([[0, -1], [1, 0]], dtype=np.int8)
    for j in range(2, int(k) + 1):
        eye = np.eye(2 ** (j - 1), dtype=np.int8)
        c = np.block([[c, c - eye], [c + eye, -c]])
    return ConferenceMatrix(c, int(k))


def build_symmetric_conference_paley(q: int) -> ConferenceMatrix:
    """Symmetric conference matrix of order q + 1 for a prime q = 1 (mod 4).

    Bordered Jacobsthal matrix: Q[i, j] = chi(j - i) with chi the quadratic
    character mod q, then [[0, 1^T], [1, Q]].
    """
    if q not in _QUADRATIC_RESIDUES:
        raise ValueError(f"unsupported Paley order q={q!r}; supported: {PALEY_ORDERS}")
    residues = _QUADRATIC_RESIDUES[q]
    chi = np.array([0] + [1 if x in residues else -1 for x in range(1, q)], dtype=np.int8)
    idx = np.arange(q)
    jac = chi[(idx[None, :] - idx[:, None]) % q]
    c = np.zeros((q + 1, q + 1), dtype=np.int8)
    c[0, 1:] = 1
    c[1:, 0] = 1
    c[1:, 1:] = jac
    return ConferenceMatrix(c, None)


def conference_spectrum(c: ConferenceMatrix, check: bool = False) -> dict:
    """Two-point spectrum of a conference matrix with multiplicity n/2 each.

    Skew-symmetric: {+i sqrt(n-1), -i sqrt(n-1)}.  Symmetric: {+sqrt(n-1), -sqrt(n-1)}.
    With ``check=True`` the values are confirmed against the Jacobi eigensolver
    applied to iC (skew case) or C (symmetric case).
    """
    check_conference(c.entries)
    n = c.order
    root = math.sqrt(n - 1)
    if c.skew:
        values = (complex(0.0, root), complex(0.0, -root))
    else:
        values = (complex(root), complex(-root))
    result = {"values": values, "multiplicity": n // 2}
    if check:
        herm = 1j * c.entries if c.skew else c.entries
        evals = eig_hermitian(herm).eigenvalues
        expected = np.array([root] * (n // 2) + [-root] * (n // 2))
        residual = float(np.max(np.abs(evals - expected)))
        if residual > 1e-10 * max(1.0, root):
            raise ArithmeticError(f"numerical spectrum deviates from closed form by {residual:.3e}")
        result["residual"] = residual
    return result
