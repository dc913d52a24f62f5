"""Patch-similarity graphs over image pixels with self-tuning local scale.

Each pixel is described by the square patch around it (edge-replicated at
the borders).  Pairwise patch distance is the plain L2 norm.  The affinity
kernel divides the squared distance by the product of the two pixels' local
scales, where a pixel's scale is its distance to its tau_rank-th nearest
candidate; this adapts the kernel bandwidth to local contrast.  Each pixel
keeps its knn strongest candidates and the result is symmetrized by max.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from numpy.lib.stride_tricks import sliding_window_view
from scipy.spatial.distance import cdist

from .errors import ValidationError
from .graph import Graph
from .images import ImageBuffer

__all__ = ["TAU_FLOOR", "AffinityConfig", "extract_patch", "patch_distance",
           "local_scale", "build_affinity_graph"]

TAU_FLOOR = 1e-8


@dataclass
class AffinityConfig:
    """Parameters of the pixel-affinity construction.

    candidate_window limits distance computation to pixels within a square
    of half-width w (Chebyshev distance); "all" compares every pair.
    """

    patch_radius: int = 1
    tau_rank: int = 30
    knn: int = 30
    candidate_window: int | str = 10

    def __post_init__(self):
        if self.patch_radius < 0:
            raise ValidationError("patch radius must be nonnegative")
        if self.tau_rank < 1:
            raise ValidationError("tau rank must be at least 1")
        if self.knn < 1:
            raise ValidationError("knn must be at least 1")
        if self.candidate_window != "all":
            try:
                self.candidate_window = int(self.candidate_window)
            except (TypeError, ValueError):
                raise ValidationError(
                    "candidate window must be a positive integer or 'all'") from None
            if self.candidate_window < 1:
                raise ValidationError("candidate window must be at least 1")


def _patch_stack(img: ImageBuffer, radius: int) -> np.ndarray:
    """(H, W, P) array of flattened patches, edge-replicated padding.

    Flattening order is row, column, channel, matching extract_patch.
    """
    k = 2 * radius + 1
    padded = np.pad(img.pixels, ((radius, radius), (radius, radius), (0, 0)),
                    mode="edge")
    win = sliding_window_view(padded, (k, k), axis=(0, 1))
    # window axes arrive last: (H, W, C, k, k) -> (H, W, k, k, C)
    win = win.transpose(0, 1, 3, 4, 2)
    return win.reshape(img.height, img.width, k * k * img.channels)


def extract_patch(img: ImageBuffer, pixel: int, radius: int = 1) -> np.ndarray:
    """Flattened patch around one pixel (flat row-major id)."""
    if radius < 0:
        raise ValidationError("patch radius must be nonnegative")
    if not 0 <= pixel < img.n_pixels:
        raise ValidationError(f"pixel {pixel} out of range")
    y, x = divmod(pixel, img.width)
    k = 2 * radius + 1
    padded = np.pad(img.pixels, ((radius, radius), (radius, radius), (0, 0)),
                    mode="edge")
    return padded[y:y + k, x:x + k, :].reshape(-1).copy()


def patch_distance(a, b) -> float:
    """L2 norm between two flattened patches."""
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    if a.shape != b.shape:
        raise ValidationError("patches must have the same length")
    return float(np.linalg.norm(a - b))


def local_scale(distances, tau_rank: int) -> float:
    """The tau_rank-th smallest distance, floored at TAU_FLOOR when zero."""
    d = np.asarray(distances, dtype=np.float64).ravel()
    if tau_rank < 1:
        raise ValidationError("tau rank must be at least 1")
    if d.size < tau_rank:
        raise ValidationError(
            f"need at least {tau_rank} distances, got {d.size}")
    if d.size and d.min() < 0:
        raise ValidationError("distances must be nonnegative")
    val = float(np.partition(d, tau_rank - 1)[tau_rank - 1])
    return TAU_FLOOR if val == 0.0 else val


def _offsets(half: int):
    offs = []
    for dy in range(-half, half + 1):
        for dx in range(-half, half + 1):
            if dy == 0 and dx == 0:
                continue
            offs.append((dy, dx))
    return offs


def _windowed_candidates(img: ImageBuffer, patches: np.ndarray, half: int):
    """Squared patch distances from each pixel to its window, as a dense
    (n_pixels, n_offsets) array with np.inf at out-of-image offsets.

    Column o corresponds to the flat-id shift dy * W + dx of offset o.
    """
    H, W = img.height, img.width
    offs = _offsets(half)
    d2 = np.full((H * W, len(offs)), np.inf)
    shift = np.empty(len(offs), dtype=np.int64)
    for o, (dy, dx) in enumerate(offs):
        shift[o] = dy * W + dx
        sy0, sy1 = max(0, -dy), H - max(0, dy)
        sx0, sx1 = max(0, -dx), W - max(0, dx)
        if sy0 >= sy1 or sx0 >= sx1:
            continue
        src = patches[sy0:sy1, sx0:sx1]
        dst = patches[sy0 + dy:sy1 + dy, sx0 + dx:sx1 + dx]
        block = ((src - dst) ** 2).sum(axis=2)
        ids = (np.arange(sy0, sy1)[:, None] * W
               + np.arange(sx0, sx1)[None, :]).ravel()
        d2[ids, o] = block.ravel()
    return d2, shift


def build_affinity_graph(img: ImageBuffer, cfg: AffinityConfig | None = None) -> Graph:
    """Pixel-affinity graph of an image.

    Weights are exp(-d^2 / (tau_i * tau_j)) for squared patch distance d^2
    and per-pixel scales tau; each pixel proposes its knn nearest
    candidates and proposals are merged by elementwise max, so the result
    is symmetric with no self-loops.  Weights that underflow to zero are
    dropped.  Deterministic: distance ties are broken by candidate
    enumeration order.
    """
    if cfg is None:
        cfg = AffinityConfig()
    n = img.n_pixels
    need = max(cfg.tau_rank, cfg.knn)
    if cfg.candidate_window == "all":
        if n - 1 < need:
            raise ValidationError(
                f"image has {n - 1} candidate pairs per pixel, need {need}")
    else:
        half = cfg.candidate_window
        worst = ((min(half, img.height - 1) + 1)
                 * (min(half, img.width - 1) + 1) - 1)
        if worst < need:
            raise ValidationError(
                f"corner pixels have only {worst} candidates, need {need}; "
                "enlarge the window or the image")
    patches = _patch_stack(img, cfg.patch_radius)
    rows = np.arange(n)
    if cfg.candidate_window == "all":
        flat = patches.reshape(n, -1)
        d2 = cdist(flat, flat, "sqeuclidean")
        np.fill_diagonal(d2, np.inf)
        order = np.argsort(d2, axis=1, kind="stable")
        nearest = order[:, :need]
        d2near = d2[rows[:, None], nearest]
        neighbor_ids = nearest[:, :cfg.knn]
    else:
        d2, shift = _windowed_candidates(img, patches, half)
        order = np.argsort(d2, axis=1, kind="stable")
        nearest = order[:, :need]
        d2near = d2[rows[:, None], nearest]
        neighbor_ids = rows[:, None] + shift[nearest[:, :cfg.knn]]
    tau = np.sqrt(d2near[:, cfg.tau_rank - 1])
    tau[tau == 0.0] = TAU_FLOOR
    sel_d2 = d2near[:, :cfg.knn]
    w = np.exp(-sel_d2 / (tau[:, None] * tau[neighbor_ids]))
    src = np.repeat(rows, cfg.knn)
    dst = neighbor_ids.ravel()
    vals = w.ravel()
    keep = vals > 0.0
    prop = sp.coo_matrix((vals[keep], (src[keep], dst[keep])),
                         shape=(n, n)).tocsr()
    sym = prop.maximum(prop.T).tocoo()
    upper = sym.row < sym.col
    return Graph.from_edge_arrays(sym.row[upper], sym.col[upper],
                                  sym.data[upper], n=n)
