"""Per-slice and cross-slice summaries of multislice partitions.

Persistence measures how often a node keeps its community across adjacent
slices: the fraction of (node, slice -> slice + 1) transitions whose two
copies share a community id.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UndefinedDiagnosticError, ValidationError
from .quality import Partition

__all__ = [
    "PALETTE",
    "SliceDiagnostics",
    "community_counts",
    "community_sizes",
    "persistence",
    "adjacent_persistence",
    "compute_diagnostics",
    "render_label_map",
    "diagnostics_csv",
]

# fixed 24-color palette; community c renders as PALETTE[c % 24]
PALETTE = np.array([
    (31, 119, 180), (255, 127, 14), (44, 160, 44), (214, 39, 40),
    (148, 103, 189), (140, 86, 75), (227, 119, 194), (127, 127, 127),
    (188, 189, 34), (23, 190, 207), (174, 199, 232), (255, 187, 120),
    (152, 223, 138), (255, 152, 150), (197, 176, 213), (196, 156, 148),
    (247, 182, 210), (199, 199, 199), (219, 219, 141), (158, 218, 229),
    (57, 59, 121), (140, 162, 82), (214, 97, 107), (123, 65, 115),
], dtype=np.uint8)


@dataclass
class SliceDiagnostics:
    """Summary of one partition: per-slice community structure plus
    cross-slice persistence and the final quality value."""

    community_counts: list
    community_sizes: list
    adjacent_persistence: list
    global_persistence: float | None
    quality: float


def community_counts(partition: Partition) -> list:
    """Number of distinct communities present in each slice."""
    return [int(np.unique(partition.slice_labels(s)).shape[0])
            for s in range(partition.n_slices)]


def community_sizes(partition: Partition) -> list:
    """Per slice: occupied community sizes, sorted largest first."""
    out = []
    for s in range(partition.n_slices):
        counts = np.bincount(partition.slice_labels(s))
        counts = counts[counts > 0]
        out.append(sorted((int(c) for c in counts), reverse=True))
    return out


def adjacent_persistence(partition: Partition) -> list:
    """Fraction of nodes keeping their community from slice s to s + 1,
    one value per adjacent pair."""
    if partition.n_slices < 2:
        raise UndefinedDiagnosticError(
            "persistence needs at least two slices")
    out = []
    for s in range(partition.n_slices - 1):
        same = np.count_nonzero(partition.slice_labels(s)
                                == partition.slice_labels(s + 1))
        out.append(same / partition.n_nodes)
    return out


def persistence(partition: Partition) -> float:
    """Overall fraction of slice-to-slice transitions keeping community."""
    per_pair = adjacent_persistence(partition)
    return float(sum(per_pair) / len(per_pair))


def compute_diagnostics(partition: Partition, quality: float) -> SliceDiagnostics:
    multi = partition.n_slices >= 2
    return SliceDiagnostics(
        community_counts=community_counts(partition),
        community_sizes=community_sizes(partition),
        adjacent_persistence=adjacent_persistence(partition) if multi else [],
        global_persistence=persistence(partition) if multi else None,
        quality=float(quality),
    )


def render_label_map(partition: Partition, slice_index: int,
                     width: int, height: int) -> np.ndarray:
    """(h, w, 3) uint8 color map of one slice's community labels."""
    if width * height != partition.n_nodes:
        raise ValidationError(
            f"{width}x{height} raster does not hold {partition.n_nodes} nodes")
    if not 0 <= slice_index < partition.n_slices:
        raise ValidationError(f"slice {slice_index} out of range")
    lab = partition.slice_labels(slice_index)
    return PALETTE[lab % PALETTE.shape[0]].reshape(height, width, 3)


def diagnostics_csv(diag: SliceDiagnostics) -> str:
    """Render per-slice rows: slice, community count, largest community
    size, persistence to the next slice (blank on the last row)."""
    lines = ["slice,n_communities,largest_size,persistence_to_next"]
    n_slices = len(diag.community_counts)
    for s in range(n_slices):
        largest = diag.community_sizes[s][0] if diag.community_sizes[s] else 0
        if s < n_slices - 1 and diag.adjacent_persistence:
            tail = repr(diag.adjacent_persistence[s])
        else:
            tail = ""
        lines.append(f"{s},{diag.community_counts[s]},{largest},{tail}")
    return "\n".join(lines) + "\n"
