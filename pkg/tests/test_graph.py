import random
from itertools import permutations

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from dgagroups.errors import ResourceCapError
from dgagroups.graph import (DEFAULT_AUT_CAP, Graph, Permutation, automorphisms, complete_graph,
                             cycle_graph, degree_of, is_automorphism, is_connected, path_graph,
                             petersen_graph, random_connected_graph)


def _dfs_automorphisms(g):
    """Plain backtracking over degree-preserving images with adjacency checks."""
    n = len(g.vertices)
    adj = [set(a) for a in g.adjacency]
    deg = [len(a) for a in adj]
    out = []
    img = [None] * n
    used = [False] * n

    def rec(i):
        if i == n:
            out.append(tuple(img))
            return
        for w in range(n):
            if used[w] or deg[w] != deg[i]:
                continue
            if any((j in adj[i]) != (img[j] in adj[w]) for j in range(i)):
                continue
            img[i], used[w] = w, True
            rec(i + 1)
            used[w] = False
        img[i] = None

    rec(0)
    return set(out)


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edge_names())
    return h


def test_degree_examples(k3, p3):
    assert degree_of(k3, "a") == 2
    assert degree_of(Graph(["v"], []), "v") == 0
    assert degree_of(p3, "b") == 2
    with pytest.raises(KeyError):
        degree_of(k3, "zz")


def test_connectivity_examples(k3):
    assert is_connected(k3)
    assert not is_connected(Graph([], [("a", "b"), ("c", "d")]))
    assert is_connected(Graph(["v"], []))
    assert not is_connected(Graph([], []))


def test_graph_rejects_loops():
    with pytest.raises(ValueError):
        Graph([], [("a", "a")])


def test_duplicate_edges_collapse():
    g = Graph([], [("a", "b"), ("b", "a"), ("a", "b")])
    assert len(g.edges) == 1


def test_automorphism_counts(k3, p3):
    assert len(automorphisms(k3)) == 6
    assert len(automorphisms(p3)) == 2
    assert len(automorphisms(petersen_graph(), cap=64)) == 120
    assert len(automorphisms(cycle_graph(5))) == 10
    assert len(automorphisms(Graph(["v"], []))) == 1


def test_petersen_against_plain_dfs():
    g = petersen_graph()
    ours = {p.images for p in automorphisms(g)}
    assert ours == _dfs_automorphisms(g)
    assert len(ours) == 120


def test_identity_first(k3):
    assert automorphisms(k3)[0].is_identity()


def test_is_automorphism_examples(k3):
    p2 = path_graph(2)
    assert is_automorphism(k3, Permutation.identity(3))
    assert is_automorphism(p2, Permutation((1, 0)))
    p4 = Graph(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")])
    assert not is_automorphism(p4, Permutation.from_mapping(p4, {"a": "b", "b": "a"}))


def test_cap():
    assert DEFAULT_AUT_CAP == 64
    with pytest.raises(ResourceCapError):
        automorphisms(path_graph(65))


def test_group_axioms_on_corpus(graphs):
    for name, g in graphs.items():
        auts = automorphisms(g, cap=64)
        imgs = {p.images for p in auts}
        assert len(imgs) == len(auts), name
        assert Permutation.identity(len(g.vertices)).images in imgs
        for p in auts:
            assert is_automorphism(g, p)
            assert p.inverse().images in imgs
            for q in auts[:8]:
                assert (p * q).images in imgs


def test_corpus_matches_networkx(graphs):
    for name, g in graphs.items():
        h = _nx(g)
        want = sum(1 for _ in GraphMatcher(h, h).isomorphisms_iter())
        assert len(automorphisms(g, cap=64)) == want, name


def test_exhaustive_small_graphs():
    rng = random.Random(7)
    graphs = [path_graph(4), cycle_graph(6), complete_graph(4), Graph(["v"], [])]
    graphs += [random_connected_graph(rng.randint(2, 7), rng, extra_edge_prob=p) for p in (0.1, 0.3, 0.6) * 4]
    for g in graphs:
        n = len(g.vertices)
        found = {p.images for p in automorphisms(g)}
        degs = [len(a) for a in g.adjacency]
        for perm in permutations(range(n)):
            if any(degs[perm[i]] != degs[i] for i in range(n)):
                continue
            assert is_automorphism(g, Permutation(perm)) == (perm in found)


def test_count_invariant_under_relabeling():
    rng = random.Random(3)
    for _ in range(10):
        g = random_connected_graph(rng.randint(3, 10), rng)
        names = list(g.vertices)
        shuffled = names[:]
        rng.shuffle(shuffled)
        h = g.relabel({a: "w" + b for a, b in zip(names, shuffled)})
        assert len(automorphisms(g)) == len(automorphisms(h))


def test_permutation_algebra():
    p, q = Permutation((1, 2, 0)), Permutation((1, 0, 2))
    assert (p * q)(0) == p(q(0))
    assert (p * p.inverse()).is_identity()
    assert not Permutation((0, 0, 1)).is_bijection()
