"""Network file ingestion, canonical builders, and trajectory serialization.

Two text formats are supported, both UTF-8 with ``#`` comment lines:

* dense matrix: one row per line, comma or whitespace separated reals;
* adjacency list: lines ``i: j k l`` meaning node i seeks advice from the
  listed nodes.  Advice rows convert to weights by the equal-split rule
  (each of the n_i listed advisors gets 1/n_i); self-nominations are
  dropped silently before the split, and a node left with nobody to listen
  to is rejected because its row could not be made row-stochastic.

Trajectories export to CSV with 17-significant-digit decimals, which
round-trips IEEE doubles exactly.
"""

from __future__ import annotations

import os
from typing import Optional

import numpy as np

from .errors import EmptyAdviceSetError, ParseError
from .netcore import (
    EPS_VALIDATION,
    MultiSink,
    NetworkStructure,
    RelativeInteractionMatrix,
    classify,
    Irreducible,
    validate_matrix,
)
from .dynamics import Converged, MaxStepsReached, Trajectory, VertexAbsorbed, sink_power

FORMAT_DENSE = "dense"
FORMAT_ADJACENCY = "adjacency"


def _content_lines(path) -> list[tuple[int, str]]:
    """(line_number, stripped_text) pairs, skipping blanks and # comments."""
    out = []
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            text = raw.strip()
            if not text or text.startswith("#"):
                continue
            out.append((line_no, text))
    return out


def _parse_dense(lines: list[tuple[int, str]], eps: float) -> RelativeInteractionMatrix:
    rows = []
    width = None
    for line_no, text in lines:
        parts = text.replace(",", " ").split()
        try:
            row = [float(p) for p in parts]
        except ValueError:
            bad = next(p for p in parts if not _is_float(p))
            raise ParseError(line_no, f"not a number: {bad!r}") from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(
                line_no, f"expected {width} values per row, got {len(row)}"
            )
        rows.append(row)
    if not rows:
        raise ParseError(0, "file holds no matrix rows")
    return validate_matrix(np.asarray(rows, dtype=float), eps)


def _is_float(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def _parse_adjacency(
    lines: list[tuple[int, str]], eps: float
) -> RelativeInteractionMatrix:
    advice: dict[int, list[int]] = {}
    max_node = 0
    for line_no, text in lines:
        head, sep, tail = text.partition(":")
        if not sep:
            raise ParseError(line_no, "expected 'node: advisor advisor ...'")
        try:
            node = int(head)
        except ValueError:
            raise ParseError(line_no, f"not a node id: {head.strip()!r}") from None
        if node < 1:
            raise ParseError(line_no, f"node ids are 1-based, got {node}")
        if node in advice:
            raise ParseError(line_no, f"node {node} listed twice")
        try:
            targets = [int(p) for p in tail.split()]
        except ValueError:
            raise ParseError(line_no, "advisor ids must be integers") from None
        if any(j < 1 for j in targets):
            raise ParseError(line_no, "node ids are 1-based")
        seen: list[int] = []
        for j in targets:
            if j != node and j not in seen:  # drop self-nominations and repeats
                seen.append(j)
        advice[node] = seen
        max_node = max(max_node, node, *targets) if targets else max(max_node, node)
    n = max_node
    entries = np.zeros((n, n))
    for node in range(1, n + 1):
        targets = advice.get(node, [])
        if not targets:
            raise EmptyAdviceSetError(node)
        weight = 1.0 / len(targets)
        for j in targets:
            entries[node - 1, j - 1] = weight
    return validate_matrix(entries, eps)


def load_network(
    path, format: Optional[str] = None, eps: float = EPS_VALIDATION
) -> RelativeInteractionMatrix:
    """Load and validate a network file.

    `format` is "dense", "adjacency", or None to sniff: a first content
    line containing ':' marks an adjacency list.
    """
    lines = _content_lines(path)
    if not lines:
        raise ParseError(0, f"no content in {os.fspath(path)!r}")
    if format is None:
        format = FORMAT_ADJACENCY if ":" in lines[0][1] else FORMAT_DENSE
    if format == FORMAT_DENSE:
        return _parse_dense(lines, eps)
    if format == FORMAT_ADJACENCY:
        return _parse_adjacency(lines, eps)
    raise ValueError(f"unknown format {format!r}")


def write_matrix(C: RelativeInteractionMatrix, path) -> None:
    """Write a dense matrix file that loads back bit-for-bit identical."""
    with open(path, "w", encoding="utf-8") as handle:
        for row in C.entries:
            handle.write(" ".join(format(v, ".17g") for v in row) + "\n")


def build_star(n: int) -> RelativeInteractionMatrix:
    """Star network on n >= 3 nodes with center node 1.

    The center spreads its weight uniformly, 1/(n-1) to each other node;
    every other node accords full weight to the center.
    """
    if n < 3:
        raise ValueError(f"a star needs at least 3 nodes, got {n}")
    entries = np.zeros((n, n))
    entries[0, 1:] = 1.0 / (n - 1)
    entries[1:, 0] = 1.0
    return validate_matrix(entries)


def build_ring(n: int) -> RelativeInteractionMatrix:
    """Directed ring on n >= 3 nodes: each node accords full weight to its
    successor.  Uniform centrality, so the democratic test regime."""
    if n < 3:
        raise ValueError(f"a ring needs at least 3 nodes, got {n}")
    entries = np.zeros((n, n))
    for i in range(n):
        entries[i, (i + 1) % n] = 1.0
    return validate_matrix(entries)


def build_doubly_stochastic_random(n: int, seed: int) -> RelativeInteractionMatrix:
    """Random zero-diagonal doubly stochastic network, deterministic in seed.

    Symmetrized random convex combination of zero-diagonal permutation
    matrices (derangements); convex combinations keep both row and column
    sums at 1 and symmetrization preserves that.  Redraws until the result
    is strongly connected, so the democratic limit applies.
    """
    if n < 3:
        raise ValueError(f"need at least 3 nodes, got {n}")
    rng = np.random.default_rng(seed)
    for _ in range(100):
        entries = np.zeros((n, n))
        weights = rng.random(n + 2)
        weights /= weights.sum()
        for w in weights:
            perm = rng.permutation(n)
            while np.any(perm == np.arange(n)):
                perm = rng.permutation(n)
            entries[np.arange(n), perm] += w
        entries = 0.5 * (entries + entries.T)
        C = validate_matrix(entries)
        if isinstance(classify(C), Irreducible):
            return C
    raise RuntimeError("could not draw a strongly connected matrix")


def _status_comment(status) -> str:
    if isinstance(status, Converged):
        return f"# status=converged at={status.at}"
    if isinstance(status, VertexAbsorbed):
        return f"# status=vertex_absorbed vertex={status.vertex} at={status.at}"
    if isinstance(status, MaxStepsReached):
        return f"# status=max_steps_reached steps={status.steps}"
    return f"# status={status!r}"


def write_trajectory_csv(
    trajectory: Trajectory, path, structure: Optional[NetworkStructure] = None
) -> None:
    """Write recorded states as CSV: header ``t,x_1,...,x_n`` plus
    ``zeta_1,...,zeta_K`` columns for multi-sink runs, one row per recorded
    step at 17 significant digits, and a trailing ``# status=...`` line.

    Pass `structure` to add the sink columns when the trajectory was
    simulated without them.
    """
    if trajectory.states.shape[0] == 0:
        raise ValueError("trajectory holds no states")
    n = trajectory.states.shape[1]
    zeta = trajectory.sink_power
    if zeta is None and isinstance(structure, MultiSink):
        zeta = np.vstack([sink_power(structure, row) for row in trajectory.states])
        zeta_rows = zeta
    elif zeta is not None:
        # sink_power is per step; pick out the recorded steps
        zeta_rows = zeta[trajectory.steps]
    else:
        zeta_rows = None
    header = "t," + ",".join(f"x_{i}" for i in range(1, n + 1))
    if zeta_rows is not None:
        header += "," + ",".join(f"zeta_{k}" for k in range(1, zeta_rows.shape[1] + 1))
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(header + "\n")
        for row_idx, t in enumerate(trajectory.steps):
            values = [format(v, ".17g") for v in trajectory.states[row_idx]]
            if zeta_rows is not None:
                values += [format(v, ".17g") for v in zeta_rows[row_idx]]
            handle.write(f"{int(t)}," + ",".join(values) + "\n")
        handle.write(_status_comment(trajectory.status) + "\n")
