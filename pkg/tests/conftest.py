import pytest

from dualrt import Runtime


@pytest.fixture
def rt():
    return Runtime()


@pytest.fixture
def space(rt):
    return rt.space
