import math

import numpy as np
import pytest

from boxwave.catalog import symmetric_domain
from boxwave.states import normalized_plane_waves

L2PI = 2 * math.pi


def random_plane_state(rng, n_modes=5, n_range=8, length=L2PI):
    """Random normalized plane-wave state with distinct mode indices."""
    ns = rng.choice(np.arange(-n_range, n_range + 1), size=n_modes, replace=False)
    weights = rng.normal(size=n_modes) + 1j * rng.normal(size=n_modes)
    return normalized_plane_waves(symmetric_domain(length), list(zip(ns.tolist(), weights)))


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
