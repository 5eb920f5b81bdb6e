"""Immutable hypergraph structure backed by dual compressed adjacency.

A hypergraph is a set of nodes plus a family of hyperedges, each hyperedge
an arbitrary nonempty subset of nodes.  The structure is equivalent to a
binary incidence matrix ``H`` of shape ``(n_nodes, n_edges)`` with
``H[i, j] = 1`` iff node ``i`` belongs to hyperedge ``j``.  Both views of
that matrix are stored in CSR form: node -> incident edges (row view) and
hyperedge -> member nodes (column view), so either direction of traversal
is contiguous.

Instances are deeply immutable (all arrays are read-only) and safe to
share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable

import numpy as np
import scipy.sparse as sp

from .errors import EmptyGraphError


class IdMap:
    """Bijection between external identifiers and dense indices ``[0, n)``.

    Indices are assigned in first-appearance order of :meth:`intern` calls,
    which keeps construction streaming-friendly and deterministic.
    """

    __slots__ = ("_index", "_ids")

    def __init__(self, ids: Iterable[Hashable] = ()):
        self._index: dict[Hashable, int] = {}
        self._ids: list[Hashable] = []
        for key in ids:
            self.intern(key)

    def intern(self, key: Hashable) -> int:
        """Return the dense index for ``key``, assigning a new one if unseen."""
        idx = self._index.get(key)
        if idx is None:
            idx = len(self._ids)
            self._index[key] = idx
            self._ids.append(key)
        return idx

    def index_of(self, key: Hashable) -> int:
        """Dense index of ``key``; raises ``KeyError`` if never interned."""
        return self._index[key]

    def id_of(self, index: int) -> Hashable:
        """External identifier stored at dense ``index``."""
        return self._ids[index]

    @property
    def ids(self) -> tuple:
        """All identifiers, in dense-index order."""
        return tuple(self._ids)

    def __len__(self) -> int:
        return len(self._ids)

    def __contains__(self, key: Hashable) -> bool:
        return key in self._index


@dataclass(frozen=True)
class IdMaps:
    """External-identifier maps for the two index spaces of a hypergraph."""

    node_ids: IdMap
    edge_ids: IdMap


@dataclass(frozen=True, eq=False)
class Hypergraph:
    """Dual-CSR hypergraph.

    Parameters
    ----------
    node_ptr, node_adj : ndarray of int64
        CSR layout of the node -> edge view. ``node_adj[node_ptr[i]:
        node_ptr[i+1]]`` are the hyperedges incident to node ``i``, strictly
        increasing.
    edge_ptr, edge_adj : ndarray of int64
        CSR layout of the hyperedge -> node view, same convention.

    Incidence is binary: a given (node, edge) pair is stored at most once.
    Every hyperedge has at least one member node; isolated nodes (degree 0)
    are legal.  Use :func:`build_hypergraph` rather than constructing
    directly from arrays.
    """

    node_ptr: np.ndarray
    node_adj: np.ndarray
    edge_ptr: np.ndarray
    edge_adj: np.ndarray

    def __post_init__(self):
        for name in ("node_ptr", "node_adj", "edge_ptr", "edge_adj"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=np.int64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        _check_csr(self.node_ptr, self.node_adj, self.n_edges, "node")
        _check_csr(self.edge_ptr, self.edge_adj, self.n_nodes, "edge")
        if self.node_adj.size != self.edge_adj.size:
            raise ValueError("node and edge views disagree on incidence count")
        if self.n_edges and np.diff(self.edge_ptr).min() < 1:
            raise ValueError("empty hyperedges are not allowed")

    # -- sizes ------------------------------------------------------------

    @property
    def n_nodes(self) -> int:
        return self.node_ptr.size - 1

    @property
    def n_edges(self) -> int:
        return self.edge_ptr.size - 1

    @property
    def nnz(self) -> int:
        """Number of (node, edge) incidences; equals both degree sums."""
        return self.node_adj.size

    @cached_property
    def node_degree(self) -> np.ndarray:
        """Number of hyperedges incident to each node (diagonal of D)."""
        deg = np.diff(self.node_ptr)
        deg.setflags(write=False)
        return deg

    @cached_property
    def edge_degree(self) -> np.ndarray:
        """Number of member nodes of each hyperedge (diagonal of B)."""
        deg = np.diff(self.edge_ptr)
        deg.setflags(write=False)
        return deg

    # -- traversal --------------------------------------------------------

    def edges_of(self, node: int) -> np.ndarray:
        """Sorted hyperedge indices incident to ``node`` (read-only view)."""
        return self.node_adj[self.node_ptr[node]:self.node_ptr[node + 1]]

    def nodes_of(self, edge: int) -> np.ndarray:
        """Sorted member node indices of ``edge`` (read-only view)."""
        return self.edge_adj[self.edge_ptr[edge]:self.edge_ptr[edge + 1]]

    # -- sparse-matrix views (shared by the propagation engine) -----------

    @cached_property
    def node_edge_matrix(self) -> sp.csr_matrix:
        """Incidence matrix H as ``(n_nodes, n_edges)`` CSR."""
        data = np.ones(self.nnz, dtype=np.float64)
        return sp.csr_matrix(
            (data, self.node_adj, self.node_ptr),
            shape=(self.n_nodes, self.n_edges),
        )

    @cached_property
    def edge_node_matrix(self) -> sp.csr_matrix:
        """Transposed incidence H^T as ``(n_edges, n_nodes)`` CSR."""
        data = np.ones(self.nnz, dtype=np.float64)
        return sp.csr_matrix(
            (data, self.edge_adj, self.edge_ptr),
            shape=(self.n_edges, self.n_nodes),
        )

    def __repr__(self) -> str:
        return (f"Hypergraph(n_nodes={self.n_nodes}, n_edges={self.n_edges}, "
                f"nnz={self.nnz})")


def _check_csr(ptr, adj, n_cols, what):
    if ptr.ndim != 1 or adj.ndim != 1 or ptr.size < 1:
        raise ValueError(f"malformed {what} CSR arrays")
    if ptr[0] != 0 or ptr[-1] != adj.size or np.any(np.diff(ptr) < 0):
        raise ValueError(f"{what}_ptr is not a valid offset array")
    if adj.size:
        if adj.min() < 0 or adj.max() >= n_cols:
            raise ValueError(f"{what}_adj index out of range")
        # strictly increasing within each row <=> sorted and duplicate-free
        inner = np.ones(adj.size, dtype=bool)
        starts = ptr[1:-1]
        inner[starts[starts < adj.size]] = False
        if np.any(adj[1:][inner[1:]] <= adj[:-1][inner[1:]]):
            raise ValueError(f"{what}_adj rows must be strictly increasing")


def _structure_from_indices(nodes, edges, n_nodes, n_edges) -> Hypergraph:
    """Build both CSR views from parallel (node, edge) index arrays.

    Duplicate pairs collapse (incidence is binary).
    """
    nodes = np.asarray(nodes, dtype=np.int64)
    edges = np.asarray(edges, dtype=np.int64)
    keys = np.unique(nodes * n_edges + edges)

    row_nodes, row_edges = keys // n_edges, keys % n_edges
    node_ptr = np.zeros(n_nodes + 1, dtype=np.int64)
    np.cumsum(np.bincount(row_nodes, minlength=n_nodes), out=node_ptr[1:])

    order = np.argsort(row_edges * n_nodes + row_nodes, kind="stable")
    col_edges, col_nodes = row_edges[order], row_nodes[order]
    edge_ptr = np.zeros(n_edges + 1, dtype=np.int64)
    np.cumsum(np.bincount(col_edges, minlength=n_edges), out=edge_ptr[1:])

    return Hypergraph(node_ptr, row_edges, edge_ptr, col_nodes)


def build_hypergraph(
    pairs: Iterable[tuple[Hashable, Hashable]],
    node_universe: Iterable[Hashable] | None = None,
) -> tuple[Hypergraph, IdMaps]:
    """Construct a hypergraph from a stream of (node id, edge id) pairs.

    Parameters
    ----------
    pairs : iterable of (node identifier, edge identifier)
        Arbitrary hashable identifiers.  Duplicate pairs collapse silently;
        dense indices follow first appearance in the stream.
    node_universe : iterable of node identifiers, optional
        Identifiers interned (in the given order) before reading ``pairs``,
        so that nodes carrying labels but appearing in no incidence pair
        still exist, with degree 0.

    Returns
    -------
    (Hypergraph, IdMaps)

    Raises
    ------
    EmptyGraphError
        If ``pairs`` yields nothing.
    """
    node_map = IdMap(node_universe if node_universe is not None else ())
    edge_map = IdMap()
    node_idx: list[int] = []
    edge_idx: list[int] = []
    for node_id, edge_id in pairs:
        node_idx.append(node_map.intern(node_id))
        edge_idx.append(edge_map.intern(edge_id))
    if not node_idx:
        raise EmptyGraphError("incidence stream contains no (node, edge) pairs")
    h = _structure_from_indices(node_idx, edge_idx, len(node_map), len(edge_map))
    return h, IdMaps(node_ids=node_map, edge_ids=edge_map)


def random_hypergraph(n_nodes: int, n_edges: int, nnz: int, seed: int) -> Hypergraph:
    """Seeded random hypergraph with exactly ``nnz`` distinct incidences.

    Each hyperedge receives one guaranteed member node, then the remaining
    ``nnz - n_edges`` incidences are sampled uniformly without replacement
    from the rest of the (node, edge) grid.  Intended for benchmarks and
    scaling experiments; nodes missed by sampling stay isolated.

    Raises
    ------
    ValueError
        If ``nnz < n_edges`` or ``nnz > n_nodes * n_edges``.
    """
    if n_nodes < 1 or n_edges < 1:
        raise ValueError("need at least one node and one edge")
    if not n_edges <= nnz <= n_nodes * n_edges:
        raise ValueError(f"nnz must lie in [{n_edges}, {n_nodes * n_edges}]")
    rng = np.random.default_rng(seed)
    base = rng.integers(0, n_nodes, size=n_edges) * n_edges + np.arange(n_edges)
    extras = np.empty(0, dtype=np.int64)
    need = nnz - n_edges
    while extras.size < need:
        draw = rng.integers(0, n_nodes, size=2 * (need - extras.size) + 16) * n_edges
        draw += rng.integers(0, n_edges, size=draw.size)
        extras = np.setdiff1d(np.union1d(extras, draw), base)
    if extras.size > need:
        extras = rng.choice(extras, size=need, replace=False)
    keys = np.concatenate([base, extras])
    return _structure_from_indices(keys // n_edges, keys % n_edges,
                                   n_nodes, n_edges)
