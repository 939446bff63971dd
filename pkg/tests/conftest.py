import pytest

from quiverstar import FieldCtx
from quiverstar.fieldops import DEFAULT_PRIME
from quiverstar.quiver import builtin_quiver

P = DEFAULT_PRIME


@pytest.fixture
def a2():
    return builtin_quiver("A2")


@pytest.fixture
def a3():
    return builtin_quiver("A3")


@pytest.fixture
def d4():
    return builtin_quiver("D4")


@pytest.fixture
def ctx():
    return FieldCtx(seed=12345)
