"""Sparse weighted undirected graphs with cached strengths.

Node ids are dense 0-based integers.  Off-diagonal edges are stored once per
direction in CSR form; a self-loop is stored once with its edge weight and
contributes twice to its node's strength, so collapsing a community into a
single node never changes total weight.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np
import scipy.sparse as sp

from .errors import EdgeListParseError, ValidationError

__all__ = [
    "Graph",
    "load_edge_list",
    "serialize_edge_list",
    "aggregate_by_partition",
    "check_dense_labels",
]


def check_dense_labels(labels, size: int) -> int:
    """Validate a dense labelling of ``size`` items and return the label count.

    Labels must be integers covering [0, C) with no unused value below the
    maximum.  Returns C (0 for an empty labelling).
    """
    labels = np.asarray(labels)
    if labels.shape != (size,):
        raise ValidationError(f"expected {size} labels, got shape {labels.shape}")
    if size == 0:
        return 0
    if not np.issubdtype(labels.dtype, np.integer):
        raise ValidationError("labels must be integers")
    if int(labels.min()) < 0:
        raise ValidationError("labels must be nonnegative")
    counts = np.bincount(labels)
    if np.any(counts == 0):
        missing = int(np.flatnonzero(counts == 0)[0])
        raise ValidationError(f"labels are not dense: id {missing} is unused")
    return int(labels.max()) + 1


class Graph:
    """Immutable weighted undirected graph in CSR form.

    Attributes
    ----------
    n : int
        Node count; ids are dense in [0, n).
    indptr, indices, weights : ndarray
        CSR adjacency.  Neighbor ids are sorted within each row and stored
        weights are strictly positive.  A self-loop appears once in its row
        at its stored weight.
    strengths : ndarray
        Weighted degree of each node, with self-loops counted twice.
    total_weight_2m : float
        Sum of all strengths; twice the total edge weight.
    """

    __slots__ = ("n", "indptr", "indices", "weights", "strengths",
                 "total_weight_2m", "row_ids", "loop_weights")

    def __init__(self, n: int, indptr, indices, weights):
        self.n = int(n)
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int64)
        self.weights = np.ascontiguousarray(weights, dtype=np.float64)
        if self.indptr.shape != (self.n + 1,):
            raise ValidationError("indptr length must be n + 1")
        self.row_ids = np.repeat(np.arange(self.n, dtype=np.int64),
                                 np.diff(self.indptr))
        loops = np.zeros(self.n)
        diag = self.row_ids == self.indices
        loops[self.row_ids[diag]] = self.weights[diag]
        self.loop_weights = loops
        row_sums = np.bincount(self.row_ids, weights=self.weights,
                               minlength=self.n)
        self.strengths = row_sums + loops
        self.total_weight_2m = float(self.strengths.sum())

    @classmethod
    def from_edge_arrays(cls, u, v, w, n: int | None = None) -> "Graph":
        """Build from parallel arrays of endpoints and weights.

        Duplicate pairs are merged by summing.  Zero-weight entries are
        dropped after node ids are accounted for; negative weights are
        rejected.
        """
        u = np.asarray(u, dtype=np.int64).ravel()
        v = np.asarray(v, dtype=np.int64).ravel()
        w = np.asarray(w, dtype=np.float64).ravel()
        if not (u.shape == v.shape == w.shape):
            raise ValidationError("endpoint and weight arrays must align")
        if w.size and not np.all(np.isfinite(w)):
            raise ValidationError("edge weights must be finite")
        if w.size and w.min() < 0:
            raise ValidationError("edge weights must be nonnegative")
        if n is None:
            n = int(max(u.max(), v.max())) + 1 if u.size else 0
        n = int(n)
        if u.size and (u.min() < 0 or v.min() < 0 or u.max() >= n or v.max() >= n):
            raise ValidationError(f"node ids must lie in [0, {n})")
        keep = w > 0
        u, v, w = u[keep], v[keep], w[keep]
        off = u != v
        rows = np.concatenate([u, v[off]])
        cols = np.concatenate([v, u[off]])
        data = np.concatenate([w, w[off]])
        mat = sp.coo_matrix((data, (rows, cols)), shape=(n, n)).tocsr()
        mat.sort_indices()
        return cls(n, mat.indptr, mat.indices, mat.data)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], n: int | None = None) -> "Graph":
        """Build from an iterable of ``(u, v, weight)`` triples."""
        triples = list(edges)
        if not triples:
            return cls.from_edge_arrays([], [], [], n=n)
        u, v, w = zip(*triples)
        return cls.from_edge_arrays(u, v, w, n=n)

    def neighbors(self, node: int):
        """Return (ids, weights) views of the stored row of ``node``."""
        lo, hi = self.indptr[node], self.indptr[node + 1]
        return self.indices[lo:hi], self.weights[lo:hi]

    def edges(self) -> Iterator[tuple]:
        """Yield canonical stored edges as (u, v, w) with u <= v."""
        keep = self.row_ids <= self.indices
        for u, v, w in zip(self.row_ids[keep], self.indices[keep],
                           self.weights[keep]):
            yield int(u), int(v), float(w)

    @property
    def num_edges(self) -> int:
        return int(np.count_nonzero(self.row_ids <= self.indices))

    def matrix_csr(self) -> sp.csr_matrix:
        """Adjacency in matrix form: the diagonal carries twice the stored
        self-loop weight, so row sums equal strengths."""
        mat = sp.csr_matrix((self.weights, self.indices, self.indptr),
                            shape=(self.n, self.n), copy=True)
        if self.loop_weights.any():
            mat = (mat + sp.diags(self.loop_weights)).tocsr()
        mat.sort_indices()
        return mat

    def allclose(self, other: "Graph", rtol: float = 1e-9, atol: float = 1e-12) -> bool:
        return (self.n == other.n
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices)
                and np.allclose(self.weights, other.weights, rtol=rtol, atol=atol))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.num_edges})"


def load_edge_list(source) -> Graph:
    """Parse whitespace-delimited ``u v [weight]`` lines into a Graph.

    ``source`` may be a string, an open text file, or an iterable of lines.
    Blank lines and lines starting with '#' are skipped.  Weight defaults
    to 1.0; repeated pairs sum.  Node count is one past the largest id seen,
    counting ids mentioned on zero-weight lines.
    """
    if isinstance(source, str):
        lines = source.splitlines()
    elif hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        lines = source
    us, vs, ws = [], [], []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise EdgeListParseError(lineno, f"expected 'u v [weight]', got {raw!r}")
        try:
            u = int(parts[0])
            v = int(parts[1])
        except ValueError:
            raise EdgeListParseError(lineno, f"node ids must be integers, got {raw!r}") from None
        if u < 0 or v < 0:
            raise EdgeListParseError(lineno, "node ids must be nonnegative")
        if len(parts) == 3:
            try:
                w = float(parts[2])
            except ValueError:
                raise EdgeListParseError(lineno, f"weight must be a number, got {parts[2]!r}") from None
            if not np.isfinite(w):
                raise EdgeListParseError(lineno, "weight must be finite")
            if w < 0:
                raise ValidationError(f"line {lineno}: negative weight {w!r}")
        else:
            w = 1.0
        us.append(u)
        vs.append(v)
        ws.append(w)
    return Graph.from_edge_arrays(us, vs, ws)


def serialize_edge_list(graph: Graph) -> str:
    """Render stored edges as ``u v weight`` lines, one per edge, u <= v.

    Weights use repr, so a load of the output reproduces the graph exactly.
    Isolated nodes above the last edge's endpoints are not representable.
    """
    out = [f"{u} {v} {w!r}" for u, v, w in graph.edges()]
    return "\n".join(out) + ("\n" if out else "")


def aggregate_by_partition(graph: Graph, labels) -> Graph:
    """Collapse each community into one node, preserving total weight.

    Weight between two communities becomes the edge weight of their
    aggregate nodes; weight inside a community (self-loops included)
    becomes the aggregate's self-loop, so each aggregate strength equals
    the sum of its members' strengths.
    """
    C = check_dense_labels(labels, graph.n)
    if C == 0:
        return Graph.from_edge_arrays([], [], [], n=0)
    labels = np.asarray(labels, dtype=np.int64)
    proj = sp.csr_matrix((np.ones(graph.n), (np.arange(graph.n), labels)),
                         shape=(graph.n, C))
    agg = (proj.T @ graph.matrix_csr() @ proj).tocoo()
    upper = agg.row < agg.col
    diag = agg.row == agg.col
    us = np.concatenate([agg.row[upper], agg.row[diag]])
    vs = np.concatenate([agg.col[upper], agg.col[diag]])
    # matrix diagonal is twice the stored self-loop weight
    ws = np.concatenate([agg.data[upper], agg.data[diag] / 2.0])
    return Graph.from_edge_arrays(us, vs, ws, n=C)
