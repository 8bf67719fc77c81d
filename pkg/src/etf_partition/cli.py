"""Command-line interface.

Usage:
    etf-partition gen --k 3 --format csv
    etf-partition gram --k 3 --out r3.json
    etf-partition frame --k 5 --out f5.json
    etf-partition frame verify f5.json
    etf-partition partition --k 5 --r 8 --out p.json
    etf-partition norms --frame f5.json --partition p.json
    etf-partition verify --frame f5.json --partition p.json --bound sharp
    etf-partition search --k 5 --r 17 --trials 10000 --seed 0
    etf-partition table --r-max 8
    etf-partition bounds --r-max 64

Exit codes: 0 when every verdict passes, 1 when a bound is violated, 2 on
input errors.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path

import click
import numpy as np

from . import conference, frame as frame_mod, gram as gram_mod, partition as part_mod
from .gram import DiagonalBlockIndex, GramMatrix, block_index_set
from .partition import DiagonalPartition, Partition

__all__ = ["main", "emit_block_layout", "table_rows", "bound_rows", "fmt"]

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


def fmt(x: float) -> str:
    """15 significant digits, locale independent."""
    return format(float(x), ".15g")


class InputError(click.ClickException):
    exit_code = EXIT_INPUT


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _load(loader, path):
    try:
        return loader(path)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _gram_for(f: frame_mod.Frame) -> GramMatrix:
    # Rebuild R(k) exactly when the frame carries its construction parameters.
    if f.k is not None and f.alpha is not None and f.field_tag == "complex" and 2**f.k == f.n:
        return gram_mod.build_gram(conference.build_conference(f.k), f.alpha)
    matrix = f.gram() / f.delta
    matrix = 0.5 * (matrix + matrix.conj().T)
    return GramMatrix(matrix, float(np.abs(matrix[0, 1])) if f.n > 1 else 0.0, f.k, f.field_tag)


def table_rows(r_max: int) -> list[tuple[int, float, float]]:
    """(r, 1/2 + 1/sqrt(2r), (1/sqrt(r) + 1/sqrt(2))^2) for r = 1..r_max."""
    return [(r, part_mod.sharp_bound(r), part_mod.mss_bound(r, 0.5)) for r in range(1, r_max + 1)]


def bound_rows(r_max: int, delta: float = 0.5) -> list[tuple]:
    """Curves compared for delta = 1/2: pairs, complex triples, real triples (epsilon=2),
    diagonal partitions and MSS."""
    return [
        (
            r,
            part_mod.pair_bound(r, delta),
            part_mod.triple_bound(r, delta, "complex"),
            part_mod.triple_bound(r, delta, "real", epsilon=2),
            part_mod.sharp_bound(r),
            part_mod.mss_bound(r, delta),
        )
        for r in range(1, r_max + 1)
    ]


def emit_block_layout(k: int, p: DiagonalPartition) -> str:
    """ASCII picture of the 2^k x 2^k grid with each diagonal block filled by its label."""
    if p.k != k:
        raise ValueError(f"partition depth {p.k} != {k}")
    n = 2**k
    labels = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789"
    owner = np.full(n, -1)
    for b, block in enumerate(p.blocks):
        for i in block_index_set(block, k):
            owner[i - 1] = b
    width = len(str(n))
    edge = "+" + "-" * (2 * n + 1) + "+"
    lines = [edge]
    for g in range(n):
        cells = []
        for h in range(n):
            b = owner[g]
            cells.append(labels[b % len(labels)] if owner[h] == b else ".")
        lines.append("| " + " ".join(cells) + " |")
        if g + 1 < n and owner[g + 1] != owner[g]:
            lines.append("|" + " " * (2 * n + 1) + "|")
    lines.append(edge)
    for b, block in enumerate(p.blocks):
        s = block_index_set(block, k)
        span = f"{{{s[0]}}}" if len(s) == 1 else f"{{{s[0]}..{s[-1]}}}"
        lines.append(f"{labels[b % len(labels)]}  S({block.d},{block.q})".ljust(12) + f"{span:>{2 * width + 4}}  size {len(s)}")
    return "\n".join(lines) + "\n"


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Equiangular tight frames from conference matrices and their partitions."""


@main.command()
@click.option("--k", "k", type=int, required=True, help="Recursion depth; order is 2^k.")
@click.option("--format", "fmt_", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def gen(k, fmt_, out):
    """Emit the skew-symmetric conference matrix C(k)."""
    try:
        c = conference.build_conference(k)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    entries = c.entries.astype(int).tolist()
    if fmt_ == "json":
        text = json.dumps({"k": k, "order": c.order, "entries": entries}) + "\n"
    else:
        text = "".join(",".join(str(x) for x in row) + "\n" for row in entries)
    _emit(text, out)


@main.command()
@click.option("--k", "k", type=int, required=True)
@click.option("--alpha", default="auto", show_default=True, help="'auto' for 1/sqrt(2^k - 1) or a positive number.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def gram(k, alpha, out):
    """Emit R(k) = I + i alpha C(k) as JSON with separate real and imaginary arrays."""
    try:
        a = gram_mod.mss_alpha(k) if alpha == "auto" else float(alpha)
        r = gram_mod.build_gram(conference.build_conference(k), a)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    data = {
        "k": k,
        "order": r.order,
        "alpha": r.alpha,
        "real": r.matrix.real.tolist(),
        "imag": r.matrix.imag.tolist(),
    }
    _emit(json.dumps(data) + "\n", out)


@main.group(invoke_without_command=True)
@click.option("--k", "k", type=int, default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def frame(ctx, k, out):
    """Build the ETF from R(k) (or `frame verify FILE`)."""
    if ctx.invoked_subcommand is not None:
        return
    if k is None:
        raise InputError("frame needs --k (or the 'verify' subcommand)")
    try:
        r = gram_mod.build_r_matrix(k)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    f = frame_mod.build_frame(r)
    _emit(json.dumps(frame_mod.frame_to_json(f)) + "\n", out)


@frame.command("verify")
@click.argument("path", type=click.Path(dir_okay=False))
def frame_verify(path):
    """Print tightness, norm and equiangularity residuals and the Welch verdict."""
    f = _load(frame_mod.load_frame, path)
    res = frame_mod.frame_residuals(f)
    ok = True
    for name in ("tightness", "norms", "equiangular"):
        passed = res[name] <= 1e-10
        ok &= passed
        click.echo(f"{name}_residual,{fmt(res[name])},{'pass' if passed else 'fail'}")
    if f.n >= 2:
        welch_ok, welch_res = frame_mod.verify_welch_equality(f)
        ok &= welch_ok
        click.echo(f"welch_residual,{fmt(welch_res)},{'pass' if welch_ok else 'fail'}")
    sys.exit(EXIT_OK if ok else EXIT_VIOLATION)


@main.command("partition")
@click.option("--k", "k", type=int, required=True)
@click.option("--r", "r", type=int, required=True, help="Number of subsets.")
@click.option("--layout", is_flag=True, help="Print an ASCII block diagram instead of JSON.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def partition_cmd(k, r, layout, out):
    """Run the diagonal partition algorithm."""
    if not 1 <= k <= conference.MAX_DEPTH:
        raise InputError(f"k must lie in [1, {conference.MAX_DEPTH}]")
    try:
        p = part_mod.diagonal_partition_algorithm(k, r)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    text = emit_block_layout(k, p) if layout else json.dumps(part_mod.partition_to_json(p)) + "\n"
    _emit(text, out)


def _frame_and_partition(frame_path, partition_path):
    f = _load(frame_mod.load_frame, frame_path)
    p = _load(part_mod.load_partition, partition_path)
    base = p.partition() if isinstance(p, DiagonalPartition) else p
    if base.n != f.n:
        raise InputError(f"partition covers [{base.n}] but the frame has {f.n} vectors")
    return f, p, base


@main.command()
@click.option("--frame", "frame_path", type=click.Path(dir_okay=False), required=True)
@click.option("--partition", "partition_path", type=click.Path(dir_okay=False), required=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def norms(frame_path, partition_path, out):
    """Per-subset norm reports as JSON lines."""
    f, _, base = _frame_and_partition(frame_path, partition_path)
    reports = part_mod.norm_reports(base, f, _gram_for(f))
    _emit("".join(rep.to_json() + "\n" for rep in reports), out)


@main.command()
@click.option("--frame", "frame_path", type=click.Path(dir_okay=False), required=True)
@click.option("--partition", "partition_path", type=click.Path(dir_okay=False), required=True)
@click.option("--bound", type=click.Choice(["mss", "sharp", "small"]), default="mss", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def verify(frame_path, partition_path, bound, out):
    """Check subset norms against a bound; exit 1 if any subset violates it."""
    f, p, base = _frame_and_partition(frame_path, partition_path)
    r = _gram_for(f)
    try:
        if bound == "sharp":
            if not isinstance(p, DiagonalPartition):
                p = _as_diagonal(base, f)
            reports = part_mod.verify_theorem_bound(p, f, r)
        elif bound == "small":
            reports = part_mod.verify_small_subset_bounds(base, f)
        else:
            reports = part_mod.norm_reports(base, f, r)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit("".join(rep.to_json() + "\n" for rep in reports), out)
    failed = [rep for rep in reports if not all(v for key, v in rep.verdicts.items() if key != "hypothesis")]
    click.echo(f"{len(reports) - len(failed)}/{len(reports)} subsets within the {bound} bound", err=True)
    sys.exit(EXIT_VIOLATION if failed else EXIT_OK)


def _as_diagonal(base: Partition, f: frame_mod.Frame) -> DiagonalPartition:
    if f.k is None:
        raise InputError("sharp bound needs a frame built from R(k)")
    k = f.k
    blocks = []
    for s in base.subsets:
        size = len(s)
        d = k - (size.bit_length() - 1)
        if size != 2 ** (k - d) or (s[0] - 1) % size or list(s) != list(range(s[0], s[0] + size)):
            raise InputError(f"subset starting at {s[0]} is not a diagonal block")
        blocks.append(DiagonalBlockIndex(d, (s[0] - 1) // size + 1))
    return DiagonalPartition(k, tuple(blocks))


@main.command()
@click.option("--k", "k", type=int, default=5, show_default=True)
@click.option("--r", "r", type=int, default=17, show_default=True)
@click.option("--trials", type=int, default=10_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--subset", default=None, help="Comma-separated subset to test instead of sampling.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def search(k, r, trials, seed, subset, out):
    """Look for a partition (one big subset plus singletons) that breaks the MSS bound."""
    if trials < 0 or not 1 <= k <= conference.MAX_DEPTH:
        raise InputError("trials must be >= 0 and k within range")
    try:
        chosen = [int(x) for x in subset.split(",")] if subset else None
        found = part_mod.find_mss_violation(k, r, trials=trials, seed=seed, subset=chosen)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if found is None:
        click.echo(json.dumps({"violation": False, "k": k, "r": r, "trials": trials, "seed": seed}))
        sys.exit(EXIT_OK)
    data = {
        "violation": True,
        "k": k,
        "r": r,
        "seed": seed,
        "trial": found.trial,
        "subset": list(found.subset),
        "norm": found.norm,
        "mss_bound": found.bound,
        "partition": part_mod.partition_to_json(found.partition),
    }
    _emit(json.dumps(data) + "\n", out)
    sys.exit(EXIT_VIOLATION)


@main.command()
@click.option("--r-max", type=int, default=8, show_default=True)
@click.option("--format", "fmt_", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def table(r_max, fmt_, out):
    """Diagonal-partition bound next to the MSS bound, six decimals."""
    if r_max < 1:
        raise InputError("--r-max must be at least 1")
    rows = [(r, f"{a:.6f}", f"{b:.6f}") for r, a, b in table_rows(r_max)]
    if fmt_ == "json":
        text = json.dumps([{"r": r, "sharp": float(a), "mss": float(b)} for r, a, b in rows]) + "\n"
    else:
        text = _csv(rows, ["r", "sharp_bound", "mss_bound"])
    _emit(text, out)


@main.command()
@click.option("--r-max", type=int, default=64, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def bounds(r_max, out):
    """Curve data comparing the subset-norm bounds for delta = 1/2."""
    if r_max < 1:
        raise InputError("--r-max must be at least 1")
    rows = [(row[0],) + tuple(fmt(x) for x in row[1:]) for row in bound_rows(r_max)]
    header = ["r", "pair_bound", "triple_bound_complex", "triple_bound_real", "sharp_bound", "mss_bound"]
    _emit(_csv(rows, header), out)


if __name__ == "__main__":
    main()
