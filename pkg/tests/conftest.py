import pytest

from sdke.corpus import barbell, complete, cycle, path, petersen, triangle_with_path
from sdke.graph import Graph


@pytest.fixture
def k2():
    return complete(2)


@pytest.fixture
def c3():
    return cycle(3)


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def c5():
    return cycle(5)


@pytest.fixture
def k4():
    return complete(4)


@pytest.fixture
def p4():
    return path(4)


@pytest.fixture
def bar():
    return barbell()


@pytest.fixture
def tri_path():
    return triangle_with_path()


@pytest.fixture
def pet():
    return petersen()


def graph(n, *edges):
    return Graph(n, edges)
