"""Uniform multislice networks: one shared graph copied across ordered slices.

Each slice s carries its own resolution gamma_s.  The same node in adjacent
slices is coupled with a constant weight omega; non-adjacent slices are not
coupled.  Normalization uses 2*mu, the total strength over all slices plus
all coupling endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .graph import Graph

__all__ = [
    "GammaSchedule",
    "linear_gamma_schedule",
    "MultisliceNetwork",
    "build_uniform_multislice",
]


@dataclass
class GammaSchedule:
    """Per-slice resolution values, one per slice in order."""

    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64).ravel()
        if vals.size == 0:
            raise ValidationError("schedule needs at least one value")
        if not np.all(np.isfinite(vals)):
            raise ValidationError("resolution values must be finite")
        if vals.min() < 0:
            raise ValidationError("resolution values must be nonnegative")
        self.values = vals

    def __len__(self):
        return self.values.shape[0]

    def __iter__(self):
        return iter(self.values)


def linear_gamma_schedule(start: float, step: float, count: int) -> GammaSchedule:
    """Evenly spaced resolutions: start, start + step, ..., count values."""
    if count < 1:
        raise ValidationError("count must be at least 1")
    return GammaSchedule(start + step * np.arange(count, dtype=np.float64))


class MultisliceNetwork:
    """S identical copies of a base graph with chain coupling.

    Supra-node ids are slice-major: node i in slice s maps to s * n + i.
    """

    def __init__(self, base: Graph, gammas, omega: float):
        if not isinstance(gammas, GammaSchedule):
            gammas = GammaSchedule(np.asarray(gammas, dtype=np.float64))
        omega = float(omega)
        if not np.isfinite(omega) or omega < 0:
            raise ValidationError("coupling weight must be finite and nonnegative")
        self.base = base
        self.gammas = gammas.values
        self.omega = omega
        self.num_slices = len(gammas)
        # every slice is the same copy, so per-slice totals are all equal
        self.two_m_s = np.full(self.num_slices, base.total_weight_2m)
        ends = 2.0 * omega * base.n * (self.num_slices - 1)
        self.two_mu = self.num_slices * base.total_weight_2m + ends

    @property
    def num_supra_nodes(self) -> int:
        return self.base.n * self.num_slices

    def supra_index(self, node: int, slice_index: int) -> int:
        return slice_index * self.base.n + node

    @property
    def intra_strengths(self) -> np.ndarray:
        """(S, n) within-slice strength of each (node, slice); rows are
        identical because slices share one graph."""
        return np.broadcast_to(self.base.strengths,
                               (self.num_slices, self.base.n)).copy()

    @property
    def inter_strengths(self) -> np.ndarray:
        """(S, n) coupling strength of each (node, slice): omega per
        adjacent slice, so end slices get omega and interior ones 2*omega."""
        per_slice = np.full(self.num_slices, 2.0 * self.omega)
        if self.num_slices == 1:
            per_slice[:] = 0.0
        else:
            per_slice[0] = self.omega
            per_slice[-1] = self.omega
        return np.broadcast_to(per_slice[:, None],
                               (self.num_slices, self.base.n)).copy()

    def __repr__(self):
        return (f"MultisliceNetwork(n={self.base.n}, slices={self.num_slices}, "
                f"omega={self.omega})")


def build_uniform_multislice(base: Graph, gammas, omega: float) -> MultisliceNetwork:
    """Assemble a multislice network from a base graph, a resolution
    schedule (one value per slice), and a constant coupling weight."""
    return MultisliceNetwork(base, gammas, omega)
