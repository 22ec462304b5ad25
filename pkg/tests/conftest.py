# tests\conftest.py

import numpy as np
import pytest

from hyperspline.fuchsian import bolza_group
from hyperspline.models import DiskPoint
from hyperspline.partition import default_triangulation


@pytest.fixture(scope="session")
def group():
    return bolza_group()


@pytest.fixture(scope="session")
def star():
    return default_triangulation()


@pytest.fixture
def rng():
    return np.random.default_rng(20240518)


def random_octagon_points(group, rng, count, shrink=0.98):
    """Uniform samples from the interior of the fundamental octagon."""
    radius = group.octagon.apothem * shrink
    points = []
    while len(points) < count:
        x, y = rng.uniform(-radius, radius, size=2)
        if x * x + y * y < radius * radius:
            points.append(DiskPoint.klein(x, y))
    return points
