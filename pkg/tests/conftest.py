"""
Pytest configuration and fixtures for bushyforce tests.
"""

import pytest

from bushyforce.conditions import HBCond, ICond, LBCond
from bushyforce.maps import MonotoneMap
from bushyforce.pairs import EMPTY_P
from bushyforce.sets import EMPTY, min_len, up_fin
from bushyforce.trees import FULL_TREE, Threshold


@pytest.fixture
def full_tree():
    """The full tree ω^<ω."""
    return FULL_TREE


@pytest.fixture
def threshold_64():
    """Threshold tree with θ = (6, 4) at the root."""
    return Threshold((), (6, 4))


@pytest.fixture
def up_zero():
    """Upward closure of the single string [0]."""
    return up_fin([(0,)])


@pytest.fixture
def min_len_2():
    """All strings of length at least 2."""
    return min_len(2)


@pytest.fixture
def lb_top():
    """Top Laver-with-bad condition: full tree, empty bad set."""
    return LBCond.top()


@pytest.fixture
def hb_33():
    """Hechler-with-bad condition with stem [] and lower bound (3, 3)."""
    return HBCond((), (3, 3), EMPTY)


@pytest.fixture
def i_pad2():
    """Iterated-forcing condition whose map pads with the value 2 at stretch 1."""
    return ICond((), MonotoneMap.pad(1, 2), (), EMPTY_P)


@pytest.fixture
def lb_scenario_text():
    """Scenario text: extend, dominate, then meet an open set on the Laver side."""
    return """bushyforce-scenario 1
# extend the stem, dominate, then meet UpFin([0])
forcing: LB
depth: 6
seed: 1
task: ExtendStem(2)
task: Dominate([5,3])
task: MeetOpen(UpFin([0]))
"""


def pytest_configure(config):
    """Configure pytest markers."""
    config.addinivalue_line("markers", "unit: mark test as unit test")
    config.addinivalue_line("markers", "integration: mark test as integration test")
    config.addinivalue_line("markers", "slow: mark test as slow running")
