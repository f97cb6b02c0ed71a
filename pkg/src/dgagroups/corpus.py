"""The fixed graph and group collections used by the test and acceptance suites."""

from __future__ import annotations

import random

from .graph import Graph, complete_graph, cycle_graph, path_graph, petersen_graph, random_connected_graph
from .groups import cyclic, dihedral, direct_product, quaternion, symmetric3, trivial

CORPUS_SEED = 20240617
RANDOM_GRAPH_COUNT = 10
RANDOM_GRAPH_MAX_VERTICES = 12


def single_vertex() -> Graph:
    return Graph(["a"], [])


def named_graphs() -> dict[str, Graph]:
    return {
        "single": single_vertex(),
        "P2": path_graph(2),
        "P3": path_graph(3),
        "P4": path_graph(4),
        "K3": complete_graph(3),
        "K4": complete_graph(4),
        "C5": cycle_graph(5),
        "Petersen": petersen_graph(),
    }


def random_graphs(seed: int = CORPUS_SEED, count: int = RANDOM_GRAPH_COUNT) -> dict[str, Graph]:
    rng = random.Random(seed)
    out = {}
    for k in range(count):
        n = rng.randint(3, RANDOM_GRAPH_MAX_VERTICES)
        out[f"random{k}"] = random_connected_graph(n, rng, extra_edge_prob=rng.choice([0.15, 0.3, 0.5]))
    return out


def corpus_graphs(seed: int = CORPUS_SEED) -> dict[str, Graph]:
    return {**named_graphs(), **random_graphs(seed)}


def corpus_groups() -> dict:
    z2, z3 = cyclic(2), cyclic(3)
    return {
        "trivial": trivial(),
        "Z2": z2,
        "Z3": z3,
        "Z4": cyclic(4),
        "Z2xZ2": direct_product(z2, z2),
        "Z5": cyclic(5),
        "Z6": cyclic(6),
        "S3": symmetric3(),
        "D4": dihedral(4),
        "Q8": quaternion(),
        "Z2xZ3": direct_product(z2, z3),
    }
