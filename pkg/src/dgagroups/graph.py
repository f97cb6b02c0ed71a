"""Finite simple undirected graphs and their automorphism groups."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .errors import ResourceCapError

DEFAULT_AUT_CAP = 64


class Graph:
    """Simple undirected graph on named vertices.

    Vertex order is the order of first appearance and fixes the internal
    indices, so two graphs built from the same input agree index by index.
    """

    __slots__ = ("vertices", "_index", "adjacency", "_edges")

    def __init__(self, vertices: Iterable[str] = (), edges: Iterable[tuple[str, str]] = ()):
        order = []
        index = {}

        def see(v):
            if not isinstance(v, str):
                raise TypeError(f"vertex tokens are strings, got {v!r}")
            if v not in index:
                index[v] = len(order)
                order.append(v)
            return index[v]

        for v in vertices:
            see(v)
        edge_set = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u!r}: graphs are simple")
            a, b = see(u), see(v)
            edge_set.add((min(a, b), max(a, b)))
        self.vertices = tuple(order)
        self._index = index
        adj = [set() for _ in order]
        for a, b in edge_set:
            adj[a].add(b)
            adj[b].add(a)
        self.adjacency = tuple(frozenset(s) for s in adj)
        self._edges = frozenset(edge_set)

    @property
    def edges(self):
        """Edges as sorted index pairs."""
        return sorted(self._edges)

    def edge_names(self):
        return [(self.vertices[a], self.vertices[b]) for a, b in self.edges]

    def __len__(self):
        return len(self.vertices)

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise KeyError(f"unknown vertex {v!r}") from None

    def neighbors(self, v: str) -> list[str]:
        return [self.vertices[j] for j in sorted(self.adjacency[self.index(v)])]

    def has_edge(self, u: str, v: str) -> bool:
        return self.index(v) in self.adjacency[self.index(u)]

    def relabel(self, mapping: Mapping[str, str]) -> "Graph":
        return Graph([mapping[v] for v in self.vertices],
                     [(mapping[u], mapping[v]) for u, v in self.edge_names()])

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self._edges == other._edges

    def __hash__(self):
        return hash((self.vertices, self._edges))

    def __repr__(self):
        return f"Graph(|V|={len(self.vertices)}, |E|={len(self._edges)})"


@dataclass(frozen=True)
class Permutation:
    """Bijection on vertex indices ``0..n-1``; ``images[i]`` is the image of ``i``."""

    images: tuple[int, ...]

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @classmethod
    def from_mapping(cls, graph: Graph, mapping: Mapping[str, str]):
        return cls(tuple(graph.index(mapping.get(v, v)) for v in graph.vertices))

    def __call__(self, i):
        return self.images[i]

    def __len__(self):
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(i) = self(other(i))
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self):
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def is_bijection(self):
        return sorted(self.images) == list(range(len(self.images)))

    def to_mapping(self, graph: Graph) -> dict[str, str]:
        return {graph.vertices[i]: graph.vertices[j] for i, j in enumerate(self.images)}


def degree_of(g: Graph, v: str) -> int:
    return len(g.adjacency[g.index(v)])


def is_connected(g: Graph) -> bool:
    """True iff the graph has exactly one component; the empty graph is not connected."""
    n = len(g.vertices)
    if n == 0:
        return False
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == n


def is_automorphism(g: Graph, p: Permutation) -> bool:
    n = len(g.vertices)
    if len(p) != n or not p.is_bijection():
        return False
    adj = g.adjacency
    for a, b in g._edges:
        if p.images[b] not in adj[p.images[a]]:
            return False
    # a bijection on a finite vertex set mapping edges into edges maps them onto edges
    return True


def _refine(adj, colors):
    """Iterated neighbor-colour-multiset refinement to a stable colouring.

    New colours are ranks of sorted signatures, so the result depends only on
    the isomorphism type of (graph, colouring): corresponding vertices in two
    branches of the search get identical colours.
    """
    n = len(colors)
    ncolors = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(n)]
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == ncolors:
            return new
        colors, ncolors = new, len(ranks)


def _individualize(colors, v):
    # the individualized vertex gets a fresh colour that sorts below all others
    out = [2 * c + 1 for c in colors]
    out[v] = 0
    return out


def _histogram(colors):
    hist = {}
    for c in colors:
        hist[c] = hist.get(c, 0) + 1
    return tuple(sorted(hist.items()))


def _target_cell(colors):
    hist = {}
    for c in colors:
        hist[c] = hist.get(c, 0) + 1
    best = None
    for c, k in hist.items():
        if k > 1 and (best is None or (k, c) < best):
            best = (k, c)
    return None if best is None else best[1]


def automorphisms(g: Graph, cap: int = DEFAULT_AUT_CAP) -> list[Permutation]:
    """Every automorphism of ``g`` exactly once, identity first.

    Individualization-refinement search: a reference path of individualized
    vertices is fixed, and every other branch must reproduce its colour
    histograms level by level.  Each automorphism maps the reference leaf to
    exactly one leaf, so leaves and automorphisms correspond one-to-one.
    """
    n = len(g.vertices)
    if n > cap:
        raise ResourceCapError("automorphisms", n, cap)
    if n == 0:
        return []
    adj = [tuple(s) for s in g.adjacency]
    start = _refine(adj, [len(a) for a in adj])

    # reference path
    ref_levels = []
    colors = start
    while True:
        cell = _target_cell(colors)
        ref_levels.append((colors, cell))
        if cell is None:
            break
        v = colors.index(cell)
        colors = _refine(adj, _individualize(colors, v))
    ref_leaf = ref_levels[-1][0]
    ref_pos = {c: v for v, c in enumerate(ref_leaf)}
    hists = [_histogram(c) for c, _ in ref_levels]

    found = []

    def search(level, colors):
        if _histogram(colors) != hists[level]:
            return
        cell = ref_levels[level][1]
        if cell is None:
            images = [0] * n
            for w, c in enumerate(colors):
                images[ref_pos[c]] = w
            p = Permutation(tuple(images))
            if is_automorphism(g, p):
                found.append(p)
            return
        for w in range(n):
            if colors[w] == cell:
                search(level + 1, _refine(adj, _individualize(colors, w)))

    search(0, start)
    found.sort(key=lambda p: (not p.is_identity(), p.images))
    return found


# -- standard graphs -------------------------------------------------------

def path_graph(n: int, prefix="v") -> Graph:
    names = [f"{prefix}{i}" for i in range(n)]
    return Graph(names, zip(names, names[1:]))


def cycle_graph(n: int, prefix="v") -> Graph:
    names = [f"{prefix}{i}" for i in range(n)]
    return Graph(names, [(names[i], names[(i + 1) % n]) for i in range(n)])


def complete_graph(n: int, prefix="v") -> Graph:
    names = [f"{prefix}{i}" for i in range(n)]
    return Graph(names, combinations(names, 2))


def petersen_graph() -> Graph:
    outer = [f"o{i}" for i in range(5)]
    inner = [f"i{i}" for i in range(5)]
    edges = [(outer[i], outer[(i + 1) % 5]) for i in range(5)]
    edges += [(inner[i], inner[(i + 2) % 5]) for i in range(5)]
    edges += [(outer[i], inner[i]) for i in range(5)]
    return Graph(outer + inner, edges)


def random_connected_graph(n: int, rng: random.Random, extra_edge_prob=0.3, prefix="v") -> Graph:
    """Random spanning tree plus independent extra edges."""
    names = [f"{prefix}{i}" for i in range(n)]
    edges = set()
    for i in range(1, n):
        j = rng.randrange(i)
        edges.add((names[j], names[i]))
    for a, b in combinations(range(n), 2):
        if (names[a], names[b]) not in edges and rng.random() < extra_edge_prob:
            edges.add((names[a], names[b]))
    return Graph(names, sorted(edges))
