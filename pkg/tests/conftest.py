from __future__ import annotations

import pytest
from hypothesis import settings

from recip.algebra import OrderSpec
from recip.ldsystem import LDSystem

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

EXAMPLE_A = ((3, -1, -2), (-1, 1, -1))
SWAPPED_A = ((1, -1, 1), (3, -1, -2))


@pytest.fixture
def case1():
    return OrderSpec.case1()


@pytest.fixture
def example_system():
    def make(b=0, c=0):
        return LDSystem(EXAMPLE_A, (b, c))

    return make


@pytest.fixture
def swapped_system():
    def make(b=0, c=0):
        return LDSystem(SWAPPED_A, (-c, b))

    return make
