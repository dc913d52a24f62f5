from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from helpers import BOWTIE_EDGES, TRIANGLE_EDGES
from slicemod.graph import load_edge_list
from slicemod.multislice import GammaSchedule, build_uniform_multislice
from slicemod.optimize import OptimizerParams, brute_force_optimum, optimize

settings.register_profile(
    "suite", deadline=None, max_examples=30,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session", autouse=True)
def _warm_compiled_kernels():
    """Pay the one-off JIT compilation cost before any timed test runs."""
    g = load_edge_list(TRIANGLE_EDGES)
    ms = build_uniform_multislice(g, GammaSchedule(np.array([1.0, 1.0])), 0.2)
    optimize(ms, OptimizerParams(seed=0))
    brute_force_optimum(ms)


@pytest.fixture
def triangle():
    return load_edge_list(TRIANGLE_EDGES)


@pytest.fixture
def bowtie():
    return load_edge_list(BOWTIE_EDGES)
