"""Shared builders and independent oracles for the test suite.

The pure-Python brute force here deliberately avoids the compiled search
kernel: it enumerates restricted-growth strings and scores each partition
through the public quality function, so it can cross-check the fast oracle.
"""

from __future__ import annotations

import numpy as np

from slicemod.graph import Graph
from slicemod.multislice import GammaSchedule, MultisliceNetwork, build_uniform_multislice
from slicemod.quality import Partition, QualityNorm, modularity_multislice

TRIANGLE_EDGES = "0 1\n1 2\n0 2\n"
BOWTIE_EDGES = "0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n2 3\n"


def random_connected_graph(rng: np.random.Generator, n: int,
                           self_loops: bool = False) -> Graph:
    """Random spanning tree plus extra edges, weights in [0.2, 2]."""
    edges = []
    perm = rng.permutation(n)
    for i in range(1, n):
        j = int(perm[rng.integers(0, i)])
        edges.append((int(perm[i]), j, float(rng.uniform(0.2, 2.0))))
    for _ in range(int(rng.integers(0, n))):
        u, v = (int(x) for x in rng.integers(0, n, 2))
        if u == v and not self_loops:
            continue
        edges.append((u, v, float(rng.uniform(0.2, 2.0))))
    return Graph.from_edges(edges, n=n)


def random_multislice(rng: np.random.Generator, n: int, num_slices: int,
                      omega: float | None = None) -> MultisliceNetwork:
    g = random_connected_graph(rng, n)
    gammas = GammaSchedule(rng.uniform(0.2, 2.0, num_slices))
    if omega is None:
        omega = float(rng.choice([0.0, 0.5])) if num_slices > 1 else 0.0
    return build_uniform_multislice(g, gammas, omega)


def rgs_partitions(n: int):
    """Yield every partition of n items as a restricted-growth string,
    in lexicographic order."""
    if n == 0:
        yield ()
        return

    def rec(i, used, a):
        if i == n:
            yield tuple(a)
            return
        for c in range(used + 1):
            a.append(c)
            yield from rec(i + 1, max(used, c + 1), a)
            a.pop()

    yield from rec(0, 0, [])


def python_brute_force(ms: MultisliceNetwork,
                       norm: QualityNorm = QualityNorm.CONVENTIONAL):
    """Exhaustive optimum scored through the public quality function.

    Keeps the first (lexicographically smallest) argmax on ties.  Slow;
    use only when nodes x slices is single-digit-ish.
    """
    total = ms.base.n * ms.num_slices
    best_labels, best_q = None, -np.inf
    for rgs in rgs_partitions(total):
        labels = np.asarray(rgs, dtype=np.int64)
        q = modularity_multislice(ms, Partition.from_labels(ms, labels), norm)
        if q > best_q:
            best_q, best_labels = q, labels
    return best_labels, best_q
