import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import relaysim as rs


@pytest.fixture(scope="session")
def small_spec():
    # 15 gNBs / 30 relays; big enough for contested association, small
    # enough for slot-level tests.
    return rs.GridSpec(area=(1000.0, 720.0), ue_count=150)


@pytest.fixture(scope="session")
def small_scene(small_spec):
    return rs.generate_grid(small_spec, seed=11)


@pytest.fixture(scope="session")
def small_channel(small_scene):
    return rs.DropChannel(small_scene, rs.PathlossParams(), seed=11)


@pytest.fixture(scope="session")
def ants():
    return rs.AntennaSet()


@pytest.fixture(scope="session")
def noise():
    return rs.NoiseParams()


@pytest.fixture(scope="session")
def cases():
    return rs.default_cases()
