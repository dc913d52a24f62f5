"""Flat supra-node form of a multislice problem, used by the optimizer.

Every (node, slice) pair becomes one supra node.  The supra matrix holds
within-slice adjacency in diagonal blocks (matrix convention: the diagonal
carries twice the stored self-loop weight) and coupling weights between
copies of a node in adjacent slices.

Aggregation collapses each community to a single super node, which may span
slices; per-slice strengths are therefore kept as a sparse (node, slice)
table rather than one home slice per node.  Collapsing whole communities is
what lets a later sweep merge two cross-slice communities in one strictly
improving move.  Couplings internal to a community fold into the diagonal,
so total quality is preserved exactly at every level.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import UndefinedQualityError, ValidationError
from .multislice import MultisliceNetwork
from .quality import QualityNorm, _apply_norm

__all__ = ["SupraGraph", "from_multislice", "aggregate", "supra_quality"]


@dataclass
class SupraGraph:
    """One level of the coarsening hierarchy.

    indptr, indices, weights : CSR supra matrix (adjacency + couplings),
        matrix convention on the diagonal
    k_indptr, k_slice, k_value : per-node within-slice strengths as CSR
        rows over slices; level 0 has exactly one entry per node
    gammas, two_m_s : per-slice resolution and normalizer of the original
        problem; unchanged by aggregation
    two_mu : global normalizer of the original problem
    """

    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    k_indptr: np.ndarray
    k_slice: np.ndarray
    k_value: np.ndarray
    gammas: np.ndarray
    two_m_s: np.ndarray
    two_mu: float

    @property
    def n(self) -> int:
        return int(self.k_indptr.shape[0] - 1)

    @property
    def num_slices(self) -> int:
        return int(self.gammas.shape[0])

    def to_csr(self) -> sp.csr_matrix:
        return sp.csr_matrix((self.weights, self.indices, self.indptr),
                             shape=(self.n, self.n))

    def diagonal(self) -> np.ndarray:
        return self.to_csr().diagonal()

    def strength_table(self) -> np.ndarray:
        """Dense (n, S) per-slice strengths."""
        rows = np.repeat(np.arange(self.n, dtype=np.int64),
                         np.diff(self.k_indptr))
        table = np.zeros((self.n, self.num_slices))
        table[rows, self.k_slice] = self.k_value
        return table


def from_multislice(ms: MultisliceNetwork) -> SupraGraph:
    """Flatten a multislice network into supra form (slice-major ids)."""
    if ms.base.total_weight_2m <= 0:
        raise UndefinedQualityError("base graph has no edge weight")
    n, S = ms.base.n, ms.num_slices
    mat = sp.kron(sp.eye(S), ms.base.matrix_csr(), format="csr")
    if S > 1 and ms.omega > 0:
        ones = np.ones(S - 1)
        chain = sp.diags([ones, ones], [1, -1], shape=(S, S))
        mat = (mat + sp.kron(chain, ms.omega * sp.eye(n), format="csr")).tocsr()
    mat.sort_indices()
    N = n * S
    return SupraGraph(
        indptr=mat.indptr.astype(np.int64),
        indices=mat.indices.astype(np.int64),
        weights=mat.data.astype(np.float64),
        k_indptr=np.arange(N + 1, dtype=np.int64),
        k_slice=np.repeat(np.arange(S, dtype=np.int64), n),
        k_value=np.tile(ms.base.strengths, S),
        gammas=ms.gammas.copy(),
        two_m_s=ms.two_m_s.copy(),
        two_mu=ms.two_mu,
    )


def supra_quality(sg: SupraGraph, labels, norm: QualityNorm = QualityNorm.CONVENTIONAL) -> float:
    """Exact quality of a supra labelling, computed from scratch."""
    labels = np.asarray(labels, dtype=np.int64)
    if labels.shape != (sg.n,):
        raise ValidationError(f"expected {sg.n} labels, got {labels.shape}")
    if labels.size and labels.min() < 0:
        raise ValidationError("community ids must be nonnegative")
    C = int(labels.max()) + 1 if labels.size else 1
    rows = np.repeat(np.arange(sg.n, dtype=np.int64), np.diff(sg.indptr))
    adj = float(sg.weights[labels[rows] == labels[sg.indices]].sum())
    k_rows = np.repeat(np.arange(sg.n, dtype=np.int64), np.diff(sg.k_indptr))
    K = np.bincount(sg.k_slice * C + labels[k_rows], weights=sg.k_value,
                    minlength=sg.num_slices * C).reshape(sg.num_slices, C)
    null = float(((K * K).sum(axis=1) * (sg.gammas / sg.two_m_s)).sum())
    return _apply_norm(adj - null, sg.two_mu, norm)


def aggregate(sg: SupraGraph, labels):
    """Collapse each community into one super node.

    Returns (coarser SupraGraph, super_of) where ``super_of`` maps every
    node to its super node; super ids follow ascending old community ids.
    Couplings between members land inside the collapsed node (diagonal),
    so quality under the singleton labelling of the result equals quality
    of ``labels`` on the input, exactly.
    """
    labels = np.asarray(labels, dtype=np.int64)
    if labels.shape != (sg.n,):
        raise ValidationError(f"expected {sg.n} labels, got {labels.shape}")
    _, super_of = np.unique(labels, return_inverse=True)
    super_of = super_of.astype(np.int64)
    C = int(super_of.max()) + 1 if super_of.size else 0
    proj = sp.csr_matrix((np.ones(sg.n), (np.arange(sg.n), super_of)),
                         shape=(sg.n, C))
    mat = (proj.T @ sg.to_csr() @ proj).tocsr()
    mat.sort_indices()
    # merge member strength rows per (super, slice)
    k_rows = np.repeat(np.arange(sg.n, dtype=np.int64), np.diff(sg.k_indptr))
    S = sg.num_slices
    keys = super_of[k_rows] * S + sg.k_slice
    merged = np.bincount(keys, weights=sg.k_value, minlength=C * S)
    occupied = np.flatnonzero(merged > 0)
    counts = np.bincount(occupied // S, minlength=C)
    coarse = SupraGraph(
        indptr=mat.indptr.astype(np.int64),
        indices=mat.indices.astype(np.int64),
        weights=mat.data.astype(np.float64),
        k_indptr=np.concatenate(([0], np.cumsum(counts))).astype(np.int64),
        k_slice=(occupied % S).astype(np.int64),
        k_value=merged[occupied],
        gammas=sg.gammas,
        two_m_s=sg.two_m_s,
        two_mu=sg.two_mu,
    )
    return coarse, super_of
