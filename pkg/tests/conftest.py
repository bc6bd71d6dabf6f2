"""
Test Configuration and Fixtures

Provides shared engine objects, a seeded random source and settings isolation.
"""

import random

import pytest

from engines.config import get_settings
from engines.services.matroid import Matroid
from engines.services.preposet import Poset
from tests.factories import make_poset, make_uniform_matroid


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Keep GPVAL_* variables from the outer environment out of every test."""
    for name in ("GPVAL_BETA_CONVENTION", "GPVAL_POINTWISE_SAMPLES", "GPVAL_MAX_GROUND_SIZE"):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240601)


@pytest.fixture
def u24() -> Matroid:
    return make_uniform_matroid()


@pytest.fixture
def chain3() -> Poset:
    return make_poset()


@pytest.fixture
def antichain3() -> Poset:
    return make_poset(relations=[])


@pytest.fixture
def v_poset() -> Poset:
    """1 below both 2 and 3."""
    return make_poset(relations=[("1", "2"), ("1", "3")])
