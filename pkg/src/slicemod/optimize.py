"""Greedy multilevel maximizer for multislice modularity.

Each level sweeps best-improvement single-node moves until none helps, then
collapses every community into one super node and recurses on the coarser
problem.  Super nodes may span slices, so a later sweep can merge whole
cross-slice communities in one strictly improving move.  The run ends at
the first level whose sweeps make no moves.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import OracleSizeError, ValidationError
from .multislice import MultisliceNetwork
from .quality import Partition, QualityNorm, modularity_multislice
from .supra import SupraGraph, aggregate, from_multislice, supra_quality

__all__ = [
    "OptimizerParams",
    "OptimizeResult",
    "optimize",
    "brute_force_optimum",
    "BRUTE_FORCE_MAX_NODES",
]

BRUTE_FORCE_MAX_NODES = 12
_LEVEL_CAP = 1000


@dataclass(frozen=True)
class OptimizerParams:
    """Knobs for the multilevel greedy optimizer."""

    seed: int = 0
    max_passes: int = 100
    min_delta: float = 1e-10
    restarts: int = 1
    move_strategy: str = "best-improvement"

    def __post_init__(self) -> None:
        if self.max_passes < 1:
            raise ValidationError("max_passes must be at least 1")
        if self.restarts < 1:
            raise ValidationError("restarts must be at least 1")
        if not np.isfinite(self.min_delta) or self.min_delta < 0:
            raise ValidationError("min_delta must be finite and nonnegative")
        if self.move_strategy != "best-improvement":
            raise ValidationError(
                f"unknown move strategy: {self.move_strategy!r}")


@dataclass
class OptimizeResult:
    partition: Partition
    quality: float
    passes_used: int
    restart_index_of_best: int
    trace: list = field(default_factory=list)


def _sweep_level(sg: SupraGraph, rng: np.random.Generator, params: OptimizerParams):
    """Run sweeps at one level from singletons; returns (labels, moves, passes)."""
    N = sg.n
    labels = np.arange(N, dtype=np.int64)
    comm_strength = sg.strength_table()
    max_deg = int(np.diff(sg.indptr).max()) if N else 0
    cand_comm = np.empty(max_deg + 1, dtype=np.int64)
    cand_w = np.empty(max_deg + 1)
    cand_pos = np.full(N, -1, dtype=np.int64)
    g2m = sg.gammas / sg.two_m_s
    total_moves = 0
    passes = 0
    for _ in range(params.max_passes):
        order = rng.permutation(N).astype(np.int64)
        moves, gain = _kernels.greedy_sweep(
            sg.indptr, sg.indices, sg.weights,
            sg.k_indptr, sg.k_slice, sg.k_value,
            g2m, labels, comm_strength, order,
            cand_comm, cand_w, cand_pos)
        passes += 1
        total_moves += moves
        if moves == 0 or gain * (2.0 / sg.two_mu) <= params.min_delta:
            break
    return labels, total_moves, passes


def _run_single(sg0: SupraGraph, rng: np.random.Generator,
                params: OptimizerParams, norm: QualityNorm,
                trace: list | None = None) -> tuple[np.ndarray, int]:
    """One restart: multilevel greedy from singletons on the base level."""
    current = np.arange(sg0.n, dtype=np.int64)
    level = sg0
    passes_total = 0
    for _ in range(_LEVEL_CAP):
        labels, moves, passes = _sweep_level(level, rng, params)
        passes_total += passes
        if trace is not None:
            trace.append(supra_quality(sg0, labels[current], norm))
        if moves == 0:
            return current, passes_total
        level, super_of = aggregate(level, labels)
        current = super_of[current]
    return current, passes_total


def optimize(ms: MultisliceNetwork, params: OptimizerParams | None = None,
             norm: QualityNorm = QualityNorm.CONVENTIONAL) -> OptimizeResult:
    """Maximize multislice modularity; best result across restarts wins.

    Deterministic for a given (network, params): restart r uses the r-th
    spawn of the seed.  Ties between restarts keep the earliest one.
    """
    params = params or OptimizerParams()
    sg = from_multislice(ms)
    root = np.random.SeedSequence(params.seed)
    children = root.spawn(params.restarts)
    best_labels = None
    best_quality = -np.inf
    best_restart = 0
    passes_used = 0
    trace: list = []
    for r in range(params.restarts):
        rng = np.random.default_rng(children[r])
        rtrace: list = []
        labels, passes = _run_single(sg, rng, params, norm, rtrace)
        passes_used += passes
        q = supra_quality(sg, labels, norm)
        if q > best_quality:
            best_quality = q
            best_labels = labels
            best_restart = r
            trace = rtrace
    partition = Partition.from_labels(ms, best_labels).compacted()
    quality = modularity_multislice(ms, partition, norm)
    return OptimizeResult(partition=partition, quality=quality,
                          passes_used=passes_used,
                          restart_index_of_best=best_restart, trace=trace)


def brute_force_optimum(ms: MultisliceNetwork,
                        norm: QualityNorm = QualityNorm.CONVENTIONAL
                        ) -> tuple[Partition, float]:
    """Exact optimum by exhaustive search; only for tiny instances.

    Enumerates every partition of the supra nodes, so the supra node count
    (nodes x slices) is capped at BRUTE_FORCE_MAX_NODES.
    """
    sg = from_multislice(ms)
    if sg.n > BRUTE_FORCE_MAX_NODES:
        raise OracleSizeError(
            f"exhaustive search needs nodes x slices <= "
            f"{BRUTE_FORCE_MAX_NODES}, got {sg.n}")
    # level-0 supra nodes each live in exactly one slice
    score, labels = _kernels.exhaustive_best_partition(
        sg.indptr, sg.indices, sg.weights, sg.diagonal(),
        sg.k_slice, sg.k_value, sg.gammas / sg.two_m_s)
    partition = Partition.from_labels(ms, labels).compacted()
    quality = modularity_multislice(ms, partition, norm)
    return partition, quality
