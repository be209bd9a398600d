from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from gridconvex import Cluster, generate, load_shape_spec

settings.register_profile(
    "suite",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

REPO_ROOT = Path(__file__).resolve().parents[1]
CONFIG_DIR = REPO_ROOT / "configs"


@pytest.fixture(scope="session")
def ring_spec():
    return load_shape_spec(CONFIG_DIR / "ring.json")


@pytest.fixture(scope="session")
def crescent_spec():
    return load_shape_spec(CONFIG_DIR / "crescent.json")


@pytest.fixture(scope="session")
def ring_cluster(ring_spec) -> Cluster:
    return generate(ring_spec)


@pytest.fixture(scope="session")
def crescent_cluster(crescent_spec) -> Cluster:
    return generate(crescent_spec)


@pytest.fixture(scope="session")
def dense_square() -> Cluster:
    """Axis-aligned unit square sampled on a 0.025 lattice (eps/2 for eps=0.05)."""
    xs = np.linspace(0.0, 1.0, 41)
    return Cluster(np.array([(x, y) for x in xs for y in xs]))
