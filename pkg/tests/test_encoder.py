import re

import pytest

from dgagroups.algebra import Element, GeneratorTable
from dgagroups.differential import Derivation
from dgagroups.encoder import BASE_DEGREES, DGAPresentation, certify, encode_graph
from dgagroups.formats import format_dga
from dgagroups.graph import Graph, degree_of, path_graph


def test_k3_presentation(k3):
    p = encode_graph(k3)
    assert len(p.table) == 12
    want = (Element.from_factors(p.table, [("xv:a", 3)])
            + Element.from_factors(p.table, [("xv:a", 1), ("xv:b", 1), ("x2", 4)])
            + Element.from_factors(p.table, [("xv:a", 1), ("xv:c", 1), ("x2", 4)]))
    assert p.differential.of("zv:a") == want


def test_single_vertex_and_edge():
    p = encode_graph(Graph(["v"], []))
    assert p.differential.of("zv:v") == Element.from_factors(p.table, [("xv:v", 3)])
    q = encode_graph(path_graph(2, prefix=""))
    want = Element.from_factors(q.table, [("xv:0", 3)]) + \
        Element.from_factors(q.table, [("xv:0", 1), ("xv:1", 1), ("x2", 4)])
    assert q.differential.of("zv:0") == want


def test_degrees_and_counts(graphs):
    for name, g in graphs.items():
        p = encode_graph(g)
        assert len(p.table) == 2 * len(g.vertices) + 6, name
        for s in p.table:
            want = BASE_DEGREES.get(s.name, 40 if s.name.startswith("xv:") else 119)
            assert s.degree == want
        for v in g.vertices:
            mixed = [m for m in p.differential.of("zv:" + v).monomials() if len(m) == 3]
            assert len(mixed) == degree_of(g, v)


def test_certify_corpus(graphs):
    for name, g in graphs.items():
        rep = certify(encode_graph(g))
        assert rep.ok, name
        assert len(rep.entries()) == len(encode_graph(g).table)


def test_certify_detects_bad_degree(k3):
    p = encode_graph(k3)
    syms = [(s.name, 32 if s.name == "y1" else s.degree) for s in p.table]
    t = GeneratorTable(syms)
    images = {s.name: Element(t, dict(p.differential.images[i].items())) for i, s in enumerate(p.table)}
    bad = DGAPresentation(t, Derivation(t, images, check_degrees=False))
    rep = certify(bad)
    assert not rep.ok
    assert any("y1" in msg for msg in rep.degree_errors)


def test_empty_graph_rejected():
    with pytest.raises(ValueError):
        encode_graph(Graph([], []))


def test_disconnected_warns():
    with pytest.warns(UserWarning):
        encode_graph(Graph([], [("a", "b"), ("c", "d")]))


def test_naturality(graphs):
    g = graphs["random3"]
    mapping = {v: f"u{len(g.vertices) - i}" for i, v in enumerate(g.vertices)}
    renamed = re.sub(r"\b(xv|zv):([\w.]+)", lambda m: f"{m.group(1)}:{mapping[m.group(2)]}",
                     format_dga(encode_graph(g)))
    assert renamed == format_dga(encode_graph(g.relabel(mapping)))
