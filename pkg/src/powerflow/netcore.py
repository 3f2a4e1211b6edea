"""Influence-matrix validation and directed-graph structure analysis.

The relative interaction matrix of a group is row-stochastic with zero
diagonal: entry (i, j) is the relative weight individual i accords to
individual j.  Everything downstream dispatches on the shape of the digraph
induced by its positive entries, so this module owns the validation gate,
the strongly-connected-component machinery, and the classifier that splits
a network into one of three variants: irreducible, reducible with a
globally reachable node set, or multi-sink.

All node identifiers on public surfaces are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .errors import (
    DiagonalNonzeroError,
    MatrixValidationError,
    NegativeEntryError,
    NonSquareError,
    RowSumOutOfToleranceError,
)

#: Validation tolerance.  File-sourced matrices carry decimal round-off
#: (e.g. rows made of nine copies of 1/9), so exact comparisons are too strict.
EPS_VALIDATION = 1e-9


@dataclass(frozen=True)
class RelativeInteractionMatrix:
    """Validated row-stochastic, zero-diagonal weight matrix.

    Construct via :func:`validate_matrix` or the builders in
    :mod:`powerflow.io`.  The entries array is frozen after construction,
    so values are safe to share across threads.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        self.entries.setflags(write=False)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def validate_matrix(raw, eps: float = EPS_VALIDATION) -> RelativeInteractionMatrix:
    """Validate a raw square matrix of relative interpersonal weights.

    Requires non-negative entries, an exactly-zero diagonal and unit row
    sums, all within `eps`.  Accepted rows are renormalized so each sums to
    1 up to float rounding, and round-off negatives / diagonal dust are
    cleared, which keeps the positive-entry pattern free of spurious edges.
    """
    entries = np.array(raw, dtype=float)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise NonSquareError(entries.shape if entries.ndim else ())
    n = entries.shape[0]
    if n < 2:
        raise MatrixValidationError(f"need at least 2 nodes, got {n}")
    if not np.all(np.isfinite(entries)):
        raise MatrixValidationError("entries must be finite numbers")
    negative = np.argwhere(entries < -eps)
    if negative.size:
        i, j = negative[0]
        raise NegativeEntryError(int(i) + 1, int(j) + 1, float(entries[i, j]))
    nonzero_diag = np.flatnonzero(np.abs(np.diagonal(entries)) > eps)
    if nonzero_diag.size:
        i = int(nonzero_diag[0])
        raise DiagonalNonzeroError(i + 1, float(entries[i, i]))
    sums = entries.sum(axis=1)
    off = np.flatnonzero(np.abs(sums - 1.0) > eps)
    if off.size:
        i = int(off[0])
        raise RowSumOutOfToleranceError(i + 1, float(sums[i]))
    entries[entries < 0.0] = 0.0
    np.fill_diagonal(entries, 0.0)
    entries /= entries.sum(axis=1, keepdims=True)
    return RelativeInteractionMatrix(entries)


def _tarjan(adjacency: Sequence[Sequence[int]]) -> list[list[int]]:
    """Strongly connected components of an adjacency-list digraph (0-based).

    Iterative so deep graphs cannot hit the recursion limit.  Components
    come out in reverse topological order of the condensation: whenever an
    edge runs from component A to component B, B is emitted first.
    """
    n = len(adjacency)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, edge_pos = work[-1]
            if edge_pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            descended = False
            neighbors = adjacency[v]
            for pos in range(edge_pos, len(neighbors)):
                w = neighbors[pos]
                if index[w] == -1:
                    work[-1] = (v, pos + 1)
                    work.append((w, 0))
                    descended = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            work.pop()
            if low[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    component.append(w)
                    if w == v:
                        break
                components.append(component)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return components


@dataclass(frozen=True)
class Condensation:
    """Strongly connected components plus the digraph between them.

    `components` holds 1-based node tuples in reverse topological order
    (every component precedes the components that point into it), `edges`
    the deduplicated component-index pairs, and `component_index[i-1]` the
    component holding node i.
    """

    components: tuple[tuple[int, ...], ...]
    component_index: tuple[int, ...]
    edges: frozenset[tuple[int, int]]

    @property
    def sinks(self) -> tuple[int, ...]:
        """Indices of components with no outgoing condensation edge."""
        has_out = {a for a, _ in self.edges}
        return tuple(k for k in range(len(self.components)) if k not in has_out)


def _condensation(entries: np.ndarray) -> Condensation:
    """Condensation of the positive-entry pattern of any square matrix."""
    n = entries.shape[0]
    adjacency = [np.flatnonzero(entries[i] > 0.0).tolist() for i in range(n)]
    raw = _tarjan(adjacency)
    component_index = [0] * n
    for k, component in enumerate(raw):
        for v in component:
            component_index[v] = k
    edges = set()
    for i in range(n):
        for j in adjacency[i]:
            if component_index[i] != component_index[j]:
                edges.add((component_index[i], component_index[j]))
    return Condensation(
        components=tuple(tuple(sorted(v + 1 for v in comp)) for comp in raw),
        component_index=tuple(component_index),
        edges=frozenset(edges),
    )


def strongly_connected_components(C: RelativeInteractionMatrix) -> Condensation:
    """Components of the weight digraph of `C` (edge i -> j iff c_ij > 0)."""
    return _condensation(C.entries)


def globally_reachable_set(C: RelativeInteractionMatrix) -> tuple[int, ...]:
    """Nodes reachable from every node of the network.

    Nonempty exactly when the condensation has a single sink, in which case
    it equals that sink's node set; with several sinks no node is reachable
    from all of them and the result is empty.
    """
    condensation = strongly_connected_components(C)
    sinks = condensation.sinks
    if len(sinks) != 1:
        return ()
    return condensation.components[sinks[0]]


def star_center(
    C: RelativeInteractionMatrix,
    nodes: Optional[Sequence[int]] = None,
    eps: float = EPS_VALIDATION,
) -> Optional[int]:
    """Center of a star pattern within `nodes` (default: all nodes), or None.

    Node h is the center when, inside the group, every other member accords
    weight 1 to h (and hence 0 to everyone else) while h accords strictly
    positive weight to every other member.  Groups of fewer than three
    members never count: with two nodes the pattern is a symmetric swap,
    not a star.  Callers should pass a group whose induced submatrix is
    row-stochastic (the full network, a sink, or the reachable set).
    """
    if nodes is None:
        idx = np.arange(C.n)
    else:
        idx = np.asarray(sorted(nodes), dtype=int) - 1
    k = idx.size
    if k < 3:
        return None
    sub = C.entries[np.ix_(idx, idx)]
    for p in range(k):
        others = np.arange(k) != p
        if np.all(sub[others, p] >= 1.0 - eps) and np.all(sub[p, others] > 0.0):
            return int(idx[p]) + 1
    return None


@dataclass(frozen=True)
class Irreducible:
    """Strongly connected network.

    `star_center` is set iff the star predicate holds.  A two-node network
    is flagged `degenerate_pair`: both update rules fix every interior
    point of the simplex, so no unique interior equilibrium exists.
    """

    n: int
    star_center: Optional[int] = None
    degenerate_pair: bool = False


@dataclass(frozen=True)
class ReducibleReachable:
    """Not strongly connected, with a single condensation sink.

    `reachable` lists the globally reachable nodes (ascending); power
    eventually concentrates there.  `star_center_of_subgraph` is populated
    only when the sink has at least three nodes and forms a star.
    """

    n: int
    reachable: tuple[int, ...]
    star_center_of_subgraph: Optional[int] = None

    @property
    def r(self) -> int:
        return len(self.reachable)


@dataclass(frozen=True)
class MultiSink:
    """Two or more condensation sinks plus transient (non-sink) nodes.

    `permutation` lists original 1-based node ids in normal-form order:
    sink 1 nodes, then sink 2 nodes, ..., then non-sink nodes.  Reindexing
    rows and columns by it yields a block lower-triangular matrix whose
    leading diagonal blocks are the irreducible row-stochastic sinks.
    Sinks are ordered by their smallest node id.
    """

    n: int
    sinks: tuple[tuple[int, ...], ...]
    non_sink_nodes: tuple[int, ...]
    permutation: tuple[int, ...]

    @property
    def num_sinks(self) -> int:
        return len(self.sinks)

    @property
    def sink_sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sinks)

    @property
    def m(self) -> int:
        return len(self.non_sink_nodes)


NetworkStructure = Union[Irreducible, ReducibleReachable, MultiSink]


def classify(C: RelativeInteractionMatrix) -> NetworkStructure:
    """Classify the network structure of `C`.

    Total: every validated matrix maps to exactly one variant, and the
    result equals Irreducible iff the globally reachable set is all nodes.
    """
    condensation = strongly_connected_components(C)
    if len(condensation.components) == 1:
        return Irreducible(
            C.n, star_center=star_center(C), degenerate_pair=C.n == 2
        )
    sink_ids = condensation.sinks
    if len(sink_ids) == 1:
        reachable = condensation.components[sink_ids[0]]
        center = star_center(C, reachable) if len(reachable) >= 3 else None
        return ReducibleReachable(C.n, reachable, center)
    sinks = tuple(
        sorted((condensation.components[k] for k in sink_ids), key=lambda c: c[0])
    )
    in_sink = {v for comp in sinks for v in comp}
    non_sink = tuple(v for v in range(1, C.n + 1) if v not in in_sink)
    permutation = tuple(v for comp in sinks for v in comp) + non_sink
    return MultiSink(C.n, sinks, non_sink, permutation)
