"""The graph -> DGA construction and its certification.

For a finite graph (V, E) the algebra is free graded-commutative on

    x1 (8), x2 (10), y1 (33), y2 (35), y3 (37), z (119),
    xv:<v> (40) and zv:<v> (119) for every vertex v,

with d x1 = d x2 = d xv = 0 and

    d y1 = x1^3 x2,  d y2 = x1^2 x2^2,  d y3 = x1 x2^3,
    d z  = y1 y2 x1^4 x2^2 - y1 y3 x1^5 x2 + y2 y3 x1^6 + x1^15 + x2^12,
    d zv = xv^3 + sum over neighbours w of xv xw x2^4.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field

from .algebra import Element, GeneratorTable
from .differential import Derivation, apply
from .graph import Graph, is_connected

BASE_DEGREES = {"x1": 8, "x2": 10, "y1": 33, "y2": 35, "y3": 37, "z": 119}
VERTEX_X_DEGREE = 40
VERTEX_Z_DEGREE = 119
X_PREFIX = "xv:"
Z_PREFIX = "zv:"

_TOKEN = re.compile(r"[\w.:]+\Z")


def x_name(v: str) -> str:
    return X_PREFIX + v


def z_name(v: str) -> str:
    return Z_PREFIX + v


@dataclass(frozen=True)
class DGAPresentation:
    table: GeneratorTable
    differential: Derivation

    def d(self, a: Element) -> Element:
        return apply(self.differential, a)

    def gen(self, name: str) -> Element:
        return Element.generator(self.table, name)

    @property
    def vertices(self) -> tuple[str, ...]:
        """Vertex tokens recovered from the ``xv:`` generator names, in table order."""
        return tuple(s.name[len(X_PREFIX):] for s in self.table if s.name.startswith(X_PREFIX))


def _encoded_table(vertices):
    syms = [(n, BASE_DEGREES[n]) for n in ("x1", "x2", "y1", "y2", "y3")]
    syms += [(x_name(v), VERTEX_X_DEGREE) for v in vertices]
    syms.append(("z", BASE_DEGREES["z"]))
    syms += [(z_name(v), VERTEX_Z_DEGREE) for v in vertices]
    return GeneratorTable(syms)


def encode_graph(g: Graph) -> DGAPresentation:
    """Build the DGA attached to a finite graph.

    Disconnected input only triggers a warning; the construction needs local
    finiteness, which finite graphs always have.
    """
    if not g.vertices:
        raise ValueError("cannot encode a graph with no vertices")
    for v in g.vertices:
        if not _TOKEN.match(v):
            raise ValueError(f"vertex token {v!r} cannot be used in a generator name")
    if not is_connected(g):
        warnings.warn("encoding a disconnected graph", stacklevel=2)
    t = _encoded_table(g.vertices)

    def mono(*factors):
        return Element.from_factors(t, factors)

    d = {
        "y1": mono(("x1", 3), ("x2", 1)),
        "y2": mono(("x1", 2), ("x2", 2)),
        "y3": mono(("x1", 1), ("x2", 3)),
        "z": (mono(("y1", 1), ("y2", 1), ("x1", 4), ("x2", 2))
              - mono(("y1", 1), ("y3", 1), ("x1", 5), ("x2", 1))
              + mono(("y2", 1), ("y3", 1), ("x1", 6))
              + mono(("x1", 15))
              + mono(("x2", 12))),
    }
    for i, v in enumerate(g.vertices):
        xv = x_name(v)
        dz = mono((xv, 3))
        for j in sorted(g.adjacency[i]):
            dz = dz + mono((xv, 1), (x_name(g.vertices[j]), 1), ("x2", 4))
        d[z_name(v)] = dz
    return DGAPresentation(t, Derivation(t, d))


@dataclass
class CertifyReport:
    residuals: dict = field(default_factory=dict)
    degree_errors: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.degree_errors and all(not r for r in self.residuals.values())

    def entries(self):
        out = []
        for name, r in self.residuals.items():
            out.append({"name": f"d^2({name})", "status": "pass" if not r else "fail",
                        "residual": str(r)})
        for msg in self.degree_errors:
            out.append({"name": "degrees", "status": "fail", "residual": msg})
        return out


def _is_encoded_shape(table):
    names = [s.name for s in table]
    return all(n in names for n in BASE_DEGREES) and all(
        n in BASE_DEGREES or n.startswith(X_PREFIX) or n.startswith(Z_PREFIX) for n in names)


def certify(p: DGAPresentation) -> CertifyReport:
    """Run the d^2 = 0 check on every generator plus the degree-table checks.

    Degree checks always include ``|d g| = |g| + 1``.  When the generator
    names have the encoded shape, the fixed degree table and the count
    ``2|V| + 6`` are checked as well.
    """
    rep = CertifyReport()
    table = p.table
    d = p.differential
    for i, s in enumerate(table.symbols):
        img = d.images[i]
        if img and not img.is_homogeneous(s.degree + 1):
            got = sorted(img.degrees())
            rep.degree_errors.append(f"d({s.name}) has degree {got}, expected {s.degree + 1}")
    if _is_encoded_shape(table):
        verts = p.vertices
        if len(table) != 2 * len(verts) + 6:
            rep.degree_errors.append(f"{len(table)} generators, expected {2 * len(verts) + 6}")
        for s in table:
            if s.name in BASE_DEGREES:
                want = BASE_DEGREES[s.name]
            elif s.name.startswith(X_PREFIX):
                want = VERTEX_X_DEGREE
            else:
                want = VERTEX_Z_DEGREE
            if s.degree != want:
                rep.degree_errors.append(f"|{s.name}| = {s.degree}, expected {want}")
        if sorted(verts) != sorted(s.name[len(Z_PREFIX):] for s in table if s.name.startswith(Z_PREFIX)):
            rep.degree_errors.append("xv:/zv: generators do not pair up")
    for i, s in enumerate(table.symbols):
        rep.residuals[s.name] = apply(d, d.images[i])
    return rep
