"""Equiangular tight frames from recursive skew-symmetric conference matrices.

Builds C(k), the R-matrix R(k) = I + i C(k)/sqrt(2^k - 1), the ETF it
generates, diagonal partitions of that frame, and exact subset norms checked
against the MSS bound and the sharper diagonal-partition bound.
"""

from .conference import ConferenceMatrix, build_conference, build_symmetric_conference_paley, conference_spectrum
from .frame import Frame, build_frame, max_frame_correlation, verify_welch_equality
from .gram import DiagonalBlockIndex, GramMatrix, block_index_set, block_norm, build_gram, build_r_matrix, diagonal_block
from .linalg import HermitianEigenSystem, eig_hermitian, principal_submatrix, spectral_norm
from .partition import (
    DiagonalPartition,
    NormReport,
    Partition,
    diagonal_partition_algorithm,
    diagonal_subset_norm_closed,
    find_mss_violation,
    mss_bound,
    sharp_bound,
    small_subset_norm_closed,
    subset_norm_gram,
    subset_norm_outer,
    verify_small_subset_bounds,
    verify_theorem_bound,
)

__version__ = "0.1.0"
