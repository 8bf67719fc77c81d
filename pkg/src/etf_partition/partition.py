"""Partitions of [n], the diagonal partition algorithm, subset norms and bounds."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .frame import Frame
from .gram import (
    DiagonalBlockIndex,
    GramMatrix,
    block_index_set,
    build_r_matrix,
    mss_alpha,
    welch_alpha,
)
from .linalg import eig_hermitian, principal_submatrix

__all__ = [
    "BOUND_SLACK",
    "KNOWN_COUNTEREXAMPLE",
    "Partition",
    "DiagonalPartition",
    "NormReport",
    "Violation",
    "mss_bound",
    "sharp_bound",
    "pair_bound",
    "triple_bound",
    "subset_norm_gram",
    "subset_norm_outer",
    "subset_norm",
    "gram_route_applicable",
    "diagonal_subset_norm_closed",
    "diagonal_partition_algorithm",
    "verify_theorem_bound",
    "small_subset_norm_closed",
    "resolve_epsilon",
    "verify_small_subset_bounds",
    "norm_reports",
    "find_mss_violation",
    "partition_to_json",
    "partition_from_json",
    "save_partition",
    "load_partition",
]

BOUND_SLACK = 1e-9
SINGULAR_TOL = 1e-10
KNOWN_COUNTEREXAMPLE = (2, 5, 7, 8, 9, 10, 11, 13, 14, 16, 17, 19, 21, 25, 27, 31)


@dataclass(frozen=True)
class Partition:
    """Ordered disjoint nonempty subsets covering {1, ..., n}."""

    n: int
    subsets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        subsets = tuple(tuple(sorted(int(i) for i in s)) for s in self.subsets)
        object.__setattr__(self, "subsets", subsets)
        if self.n < 1:
            raise ValueError("partition ground set must be nonempty")
        seen: set[int] = set()
        for s in subsets:
            if not s:
                raise ValueError("partition contains an empty subset")
            for i in s:
                if not 1 <= i <= self.n:
                    raise ValueError(f"index {i} outside [1, {self.n}]")
                if i in seen:
                    raise ValueError(f"index {i} appears in more than one subset")
                seen.add(i)
        if len(seen) != self.n:
            missing = sorted(set(range(1, self.n + 1)) - seen)
            raise ValueError(f"subsets do not cover [n]; missing {missing[:8]}")

    @property
    def r(self) -> int:
        return len(self.subsets)

    def max_size(self) -> int:
        return max(len(s) for s in self.subsets)


@dataclass(frozen=True)
class DiagonalPartition:
    """Diagonal blocks S_{d,q} of R(k) that together partition [2^k]."""

    k: int
    blocks: tuple[DiagonalBlockIndex, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        for b in self.blocks:
            b.validate(self.k)
        self.partition()  # raises if the blocks do not partition [2^k]

    @property
    def r(self) -> int:
        return len(self.blocks)

    def partition(self) -> Partition:
        return Partition(2**self.k, tuple(tuple(block_index_set(b, self.k)) for b in self.blocks))


@dataclass
class NormReport:
    subset: tuple[int, ...]
    norm: float
    route: str  # "closed-form", "gram-eig" or "outer-product-eig"
    mss_bound: float
    sharp_bound: float | None = None
    closed_form: float | None = None
    verdicts: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def to_json(self) -> str:
        d = asdict(self)
        d["subset"] = list(self.subset)
        return json.dumps(d)


# -- bounds -------------------------------------------------------------------


def mss_bound(r: int, delta: float = 0.5) -> float:
    """(1/sqrt(r) + sqrt(delta))^2."""
    return (1.0 / math.sqrt(r) + math.sqrt(delta)) ** 2


def sharp_bound(r: int) -> float:
    """1/2 + 1/sqrt(2r), valid for diagonal partitions with delta = 1/2."""
    return 0.5 + 1.0 / math.sqrt(2 * r)


def pair_bound(r: int, delta: float = 0.5) -> float:
    """delta + sqrt(delta/r) for partitions whose subsets have at most two elements."""
    return delta + math.sqrt(delta / r)


def triple_bound(r: int, delta: float = 0.5, field_tag: str = "complex", epsilon: int = 2) -> float:
    """Bound for subsets of at most three elements: delta + sqrt(3 delta/r) complex,
    delta + epsilon sqrt(delta/r) real."""
    if field_tag == "complex":
        return delta + math.sqrt(3 * delta / r)
    return delta + epsilon * math.sqrt(delta / r)


# -- subset norms -------------------------------------------------------------


def _check_subset(s: Iterable[int], n: int) -> list[int]:
    idx = sorted(int(i) for i in s)
    if not idx or len(set(idx)) != len(idx) or idx[0] < 1 or idx[-1] > n:
        raise ValueError(f"subset must be a nonempty set of distinct indices in [1, {n}]")
    return idx


def _gram_eigenvalues(r: GramMatrix, s: Sequence[int]) -> np.ndarray:
    return eig_hermitian(principal_submatrix(r.matrix, s)).eigenvalues


def gram_route_applicable(r: GramMatrix, s: Sequence[int]) -> bool:
    """True when R_S is nonsingular, i.e. the vectors indexed by S are independent."""
    return bool(_gram_eigenvalues(r, _check_subset(s, r.order))[-1] > SINGULAR_TOL)


def subset_norm_gram(f: Frame, r: GramMatrix, s: Sequence[int]) -> float:
    """(m/n) ||R_S||, the largest eigenvalue of the scaled principal submatrix."""
    if r.order != f.n:
        raise ValueError(f"R has order {r.order} but the frame has {f.n} vectors")
    idx = _check_subset(s, f.n)
    return f.delta * float(_gram_eigenvalues(r, idx)[0])


def subset_norm_outer(f: Frame, s: Sequence[int]) -> float:
    """Largest eigenvalue of sum_{j in S} f_j f_j^*."""
    idx = np.array(_check_subset(s, f.n)) - 1
    v = np.asarray(f.vectors[idx], dtype=np.complex128)
    op = v.T @ v.conj()
    return float(eig_hermitian(op).eigenvalues[0])


def subset_norm(f: Frame, r: GramMatrix, s: Sequence[int]) -> tuple[float, str]:
    """Norm by the Gram route when R_S is nonsingular, else by outer products."""
    idx = _check_subset(s, f.n)
    evals = _gram_eigenvalues(r, idx)
    if evals[-1] > SINGULAR_TOL:
        return f.delta * float(evals[0]), "gram-eig"
    return subset_norm_outer(f, idx), "outer-product-eig"


def diagonal_subset_norm_closed(k: int, d: int) -> float:
    """1/2 + (1/2) sqrt(2^(k-d) - 1) / sqrt(2^k - 1); the same for every q."""
    if not (isinstance(k, (int, np.integer)) and k >= 1):
        raise ValueError(f"k must be a positive integer, got {k!r}")
    if not 0 <= d <= k:
        raise ValueError(f"d={d} outside [0, {k}]")
    if d == 0:
        return 1.0
    if d == k:
        return 0.5
    return 0.5 + 0.5 * math.sqrt(2 ** (k - d) - 1) / math.sqrt(2**k - 1)


# -- diagonal partitions ------------------------------------------------------


def diagonal_partition_algorithm(k: int, r: int) -> DiagonalPartition:
    """Split [2^k] into r consecutive diagonal blocks.

    With d = floor(log2 r) and r' = 2^d, the first 2(r - r') blocks sit at
    depth d + 1 and the remaining 2r' - r at depth d.  r = 1 gives the whole
    index set as one block.
    """
    if not (isinstance(r, (int, np.integer)) and 1 <= r <= 2**k):
        raise ValueError(f"r must be an integer in [1, {2 ** k}], got {r!r}")
    d = int(r).bit_length() - 1
    r_prime = 2**d
    blocks = [DiagonalBlockIndex(d + 1, i) for i in range(1, 2 * (r - r_prime) + 1)]
    blocks += [DiagonalBlockIndex(d, i) for i in range(r - r_prime + 1, r_prime + 1)]
    return DiagonalPartition(k, tuple(blocks))


def _require_mss_setup(f: Frame, r: GramMatrix) -> int:
    if r.k is None or r.field_tag != "complex" or not math.isclose(r.alpha, mss_alpha(r.k), rel_tol=1e-12):
        raise ValueError("expects R(k) = I + i C(k)/sqrt(2^k - 1)")
    if f.n != r.order or 2 * f.m != f.n:
        raise ValueError("frame does not match R(k) with n = 2m")
    return r.k


def verify_theorem_bound(p: DiagonalPartition, f: Frame, r: GramMatrix) -> list[NormReport]:
    """Per-block reports against 1/2 + 1/sqrt(2r) and the MSS bound with delta = 1/2."""
    if not isinstance(p, DiagonalPartition):
        raise TypeError("verify_theorem_bound needs a DiagonalPartition")
    k = _require_mss_setup(f, r)
    if p.k != k:
        raise ValueError(f"partition depth {p.k} does not match R({k})")
    count = p.r
    cap = 2 ** (k - (count.bit_length() - 1))
    sharp, mss = sharp_bound(count), mss_bound(count, 0.5)
    reports = []
    for block in p.blocks:
        s = tuple(block_index_set(block, k))
        value, route = subset_norm(f, r, s)
        reports.append(
            NormReport(
                subset=s,
                norm=value,
                route=route,
                mss_bound=mss,
                sharp_bound=sharp,
                closed_form=diagonal_subset_norm_closed(k, block.d),
                verdicts={
                    "hypothesis": len(s) <= cap,
                    "sharp": value <= sharp + BOUND_SLACK,
                    "mss": value <= mss + BOUND_SLACK,
                },
            )
        )
    return reports


# -- subsets of two or three vectors ------------------------------------------


def small_subset_norm_closed(f: Frame, s: Sequence[int]) -> float | tuple[float, float]:
    """Closed-form norm of a 2- or 3-element subset.

    Real frames with three elements return both candidates (epsilon = 1, 2);
    which one applies depends on the sign pattern of R_S.
    """
    size = len(_check_subset(s, f.n))
    a = welch_alpha(f.n, f.m)
    delta = f.delta
    if size == 2:
        return delta * (1.0 + a)
    if size == 3:
        if f.field_tag == "complex":
            return delta * (1.0 + math.sqrt(3.0) * a)
        return delta * (1.0 + a), delta * (1.0 + 2.0 * a)
    raise ValueError(f"closed form exists only for subsets of size 2 or 3, got {size}")


def resolve_epsilon(candidates: tuple[float, float], numeric: float, tol: float = 1e-9) -> int | None:
    """Which epsilon in {1, 2} reproduces ``numeric``, or None."""
    for eps, value in zip((1, 2), candidates):
        if abs(value - numeric) <= tol:
            return eps
    return None


def verify_small_subset_bounds(p: Partition, f: Frame) -> list[NormReport]:
    """Reports for a partition with subsets of at most three elements.

    Complex frames use delta + sqrt(3 delta/r), tightened to delta + sqrt(delta/r)
    when no subset exceeds two elements.  Real frames use epsilon = 2 for triples.
    """
    if p.n != f.n:
        raise ValueError(f"partition is over [{p.n}] but the frame has {f.n} vectors")
    if p.max_size() > 3:
        raise ValueError("every subset must have at most three elements")
    delta, count = f.delta, p.r
    if p.max_size() <= 2:
        bound = pair_bound(count, delta)
    else:
        bound = triple_bound(count, delta, f.field_tag, epsilon=2)
    mss = mss_bound(count, delta)
    reports = []
    for s in p.subsets:
        value = subset_norm_outer(f, s)
        closed = None
        if len(s) == 1:
            closed = delta
        elif len(s) == 2 or f.field_tag == "complex":
            closed = small_subset_norm_closed(f, s)
        else:
            cands = small_subset_norm_closed(f, s)
            eps = resolve_epsilon(cands, value)
            closed = cands[eps - 1] if eps else None
        reports.append(
            NormReport(
                subset=s,
                norm=value,
                route="outer-product-eig",
                mss_bound=mss,
                sharp_bound=bound,
                closed_form=closed,
                verdicts={"small": value <= bound + BOUND_SLACK, "mss": value <= mss + BOUND_SLACK},
            )
        )
    return reports


def norm_reports(p: Partition, f: Frame, r: GramMatrix) -> list[NormReport]:
    """Numeric norm of every subset with the MSS verdict (delta = m/n)."""
    if p.n != f.n:
        raise ValueError(f"partition is over [{p.n}] but the frame has {f.n} vectors")
    mss = mss_bound(p.r, f.delta)
    reports = []
    for s in p.subsets:
        value, route = subset_norm(f, r, s)
        reports.append(NormReport(s, value, route, mss, verdicts={"mss": value <= mss + BOUND_SLACK}))
    return reports


# -- MSS violation search -----------------------------------------------------


@dataclass(frozen=True)
class Violation:
    trial: int
    partition: Partition
    subset: tuple[int, ...]
    norm: float
    bound: float


def find_mss_violation(
    k: int = 5,
    r: int = 17,
    trials: int = 10_000,
    seed: int = 0,
    subset: Sequence[int] | None = None,
) -> Violation | None:
    """Search partitions of [2^k] into one large subset plus singletons.

    The large subset has 2^k - r + 1 elements, drawn uniformly by a seeded
    generator; the first trial whose norm exceeds the MSS bound for r parts
    (delta = 1/2) is returned.  Singletons have norm 1/2 and never violate.
    When ``subset`` is given it is evaluated as the only trial.
    """
    gram = build_r_matrix(k)
    n = gram.order
    if not 2 <= r <= n:
        raise ValueError(f"r must lie in [2, {n}]")
    size = n - r + 1
    bound = mss_bound(r, 0.5)
    rng = np.random.default_rng(seed)
    for trial in range(1 if subset is not None else trials):
        if subset is not None:
            big = tuple(_check_subset(subset, n))
            if len(big) != size:
                raise ValueError(f"subset must have {size} elements for {r} parts of [{n}]")
        else:
            big = tuple(sorted(int(i) + 1 for i in rng.choice(n, size=size, replace=False)))
        value = 0.5 * float(_gram_eigenvalues(gram, big)[0])
        if value > bound + BOUND_SLACK:
            rest = sorted(set(range(1, n + 1)) - set(big))
            part = Partition(n, (big,) + tuple((i,) for i in rest))
            return Violation(trial, part, big, value, bound)
    return None


# -- JSON ---------------------------------------------------------------------


def partition_to_json(p: Partition | DiagonalPartition) -> dict:
    base = p.partition() if isinstance(p, DiagonalPartition) else p
    data = {"n": base.n, "subsets": [list(s) for s in base.subsets]}
    if isinstance(p, DiagonalPartition):
        data["k"] = p.k
        data["blocks"] = [[b.d, b.q] for b in p.blocks]
    return data


def partition_from_json(data: dict) -> Partition | DiagonalPartition:
    try:
        if "blocks" in data and "k" in data:
            dp = DiagonalPartition(int(data["k"]), tuple(DiagonalBlockIndex(int(d), int(q)) for d, q in data["blocks"]))
            if "subsets" in data and [list(s) for s in dp.partition().subsets] != [sorted(s) for s in data["subsets"]]:
                raise ValueError("blocks and subsets disagree")
            return dp
        return Partition(int(data["n"]), tuple(tuple(int(i) for i in s) for s in data["subsets"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed partition JSON: {exc}") from exc


def save_partition(p: Partition | DiagonalPartition, path) -> None:
    Path(path).write_text(json.dumps(partition_to_json(p)) + "\n")


def load_partition(path) -> Partition | DiagonalPartition:
    return partition_from_json(json.loads(Path(path).read_text()))
