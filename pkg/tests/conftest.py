import numpy as np
import pytest

from twophase.grid import GridSpec, HalfDisk, build_mask


@pytest.fixture(scope="session")
def half_disk_mask():
    dom = HalfDisk(1.0)
    return build_mask(dom, GridSpec.covering(dom, 1.0 / 64))


@pytest.fixture(scope="session")
def fine_half_disk_mask():
    dom = HalfDisk(1.0)
    return build_mask(dom, GridSpec.covering(dom, 1.0 / 128))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
