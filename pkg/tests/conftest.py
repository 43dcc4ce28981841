import math

import pytest
from hypothesis import settings

from coherent2d import PacketParams, build_table, make_grid

settings.register_profile("suite", deadline=None, max_examples=50)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def elliptic_params():
    return PacketParams(1.5, 0.5)


@pytest.fixture(scope="session")
def elliptic_table(elliptic_params):
    return build_table(elliptic_params)


@pytest.fixture(scope="session")
def elliptic_grid(elliptic_params):
    return make_grid(elliptic_params)


@pytest.fixture(scope="session")
def period():
    return 2.0 * math.pi
