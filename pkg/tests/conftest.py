import random

import pytest

from dgagroups.algebra import GeneratorTable
from dgagroups.corpus import corpus_graphs, corpus_groups, named_graphs
from dgagroups.encoder import encode_graph
from dgagroups.graph import Graph, complete_graph, path_graph


@pytest.fixture(scope="session")
def graphs():
    return corpus_graphs()


@pytest.fixture(scope="session")
def small_graphs():
    return {k: g for k, g in corpus_graphs().items() if len(g.vertices) <= 5}


@pytest.fixture(scope="session")
def groups():
    return corpus_groups()


@pytest.fixture
def k3():
    return Graph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])


@pytest.fixture
def p3():
    return Graph(["a", "b", "c"], [("a", "b"), ("b", "c")])


@pytest.fixture
def enc_k3(k3):
    return encode_graph(k3)


@pytest.fixture
def rng():
    return random.Random(12345)
