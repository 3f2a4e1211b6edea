"""Dominant-left-eigenvector machinery for row-stochastic matrices.

Provides the eigenvalue-1 left eigenvector (eigenvector centrality) of an
irreducible row-stochastic matrix, the centrality profile of a classified
network (one global vector, or one vector per sink), and construction of
the state-dependent influence matrix W(x) = diag(x) + (I - diag(x)) C.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NoConvergenceError
from .netcore import (
    Irreducible,
    NetworkStructure,
    ReducibleReachable,
    RelativeInteractionMatrix,
)

#: Residual target for eigenvector computations (max norm of v M - v).
EPS_SPECTRAL = 1e-12


def dominant_left_eigenvector(
    M, eps: float = EPS_SPECTRAL, max_iters: Optional[int] = None
) -> np.ndarray:
    """Left eigenvector v of an irreducible row-stochastic matrix M with
    v M = v, v >= 0, sum(v) = 1, accepted when the max-norm residual of
    v M - v is below `eps`.

    Power iteration runs on the lazy matrix (I + M) / 2, which is aperiodic
    for every irreducible M and shares its eigenvalue-1 left eigenspace, so
    periodic inputs such as plain cycles converge too.  The start vector is
    uniform: results are deterministic with no internal randomness.  If the
    iteration budget runs out (a slow spectral gap), the eigenvector is
    recovered by a dense least-squares solve of v (M - I) = 0 with a
    sum-to-one row; NoConvergenceError signals genuine numerical pathology
    only after that fallback also misses the residual target.
    """
    A = np.asarray(M, dtype=float)
    n = A.shape[0]
    if n == 1:
        return np.ones(1)
    if max_iters is None:
        max_iters = int(100 * n * math.log(1.0 / eps)) + 1
    AT = np.ascontiguousarray(A.T)
    v = np.full(n, 1.0 / n)
    for _ in range(max_iters):
        u = AT @ v
        if np.max(np.abs(u - v)) < eps:
            return v / v.sum()
        v = 0.5 * (u + v)
        v /= v.sum()
    lhs = np.vstack([AT - np.eye(n), np.ones((1, n))])
    rhs = np.zeros(n + 1)
    rhs[n] = 1.0
    w, *_ = np.linalg.lstsq(lhs, rhs, rcond=None)
    w = np.clip(w, 0.0, None)
    total = w.sum()
    residual = math.inf
    if total > 0.0:
        w /= total
        residual = float(np.max(np.abs(AT @ w - w)))
        if residual < eps:
            return w
    raise NoConvergenceError(max_iters, residual=residual)


@dataclass(frozen=True)
class CentralityProfile:
    """Eigenvector centrality scores of a classified network.

    global_c: n-vector, present when the condensation has a single sink;
        zero outside the reachable set in the reducible case.
    per_sink: for each sink, the centrality vector of the sink's induced
        subnetwork (strictly positive, sums to 1).  A single-sink network
        contributes one entry.
    lifted: the per_sink vectors embedded as n-vectors, positive exactly on
        the owning sink's nodes.
    """

    global_c: Optional[np.ndarray]
    per_sink: tuple[np.ndarray, ...]
    lifted: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if self.global_c is not None:
            self.global_c.setflags(write=False)
        for vec in (*self.per_sink, *self.lifted):
            vec.setflags(write=False)


def centrality_profile(
    C: RelativeInteractionMatrix,
    structure: NetworkStructure,
    eps: float = EPS_SPECTRAL,
) -> CentralityProfile:
    """Centrality scores for `C` under its classified `structure`."""
    if isinstance(structure, Irreducible):
        c = dominant_left_eigenvector(C.entries, eps)
        return CentralityProfile(global_c=c, per_sink=(c,), lifted=(c,))
    if isinstance(structure, ReducibleReachable):
        idx = np.asarray(structure.reachable, dtype=int) - 1
        c_sink = dominant_left_eigenvector(C.entries[np.ix_(idx, idx)], eps)
        lifted = np.zeros(C.n)
        lifted[idx] = c_sink
        return CentralityProfile(global_c=lifted, per_sink=(c_sink,), lifted=(lifted,))
    per_sink = []
    lifted = []
    for sink in structure.sinks:
        idx = np.asarray(sink, dtype=int) - 1
        c_k = dominant_left_eigenvector(C.entries[np.ix_(idx, idx)], eps)
        vec = np.zeros(C.n)
        vec[idx] = c_k
        per_sink.append(c_k)
        lifted.append(vec)
    return CentralityProfile(
        global_c=None, per_sink=tuple(per_sink), lifted=tuple(lifted)
    )


@dataclass(frozen=True)
class InfluenceMatrix:
    """Influence matrix W(x) = diag(x) + (I - diag(x)) C with its source x."""

    entries: np.ndarray
    source_x: np.ndarray

    def __post_init__(self) -> None:
        self.entries.setflags(write=False)
        self.source_x.setflags(write=False)


def influence_matrix(C: RelativeInteractionMatrix, x) -> InfluenceMatrix:
    """Build W(x): self-weights on the diagonal, (1 - x_i) c_ij elsewhere.

    Row-stochastic for every simplex x because each row is a convex
    combination of e_i and row i of C.
    """
    x = np.asarray(x, dtype=float)
    W = (1.0 - x)[:, None] * C.entries
    np.fill_diagonal(W, x)
    return InfluenceMatrix(entries=W, source_x=x.copy())
