"""Finite groups as multiplication tables.

Elements are indices ``0..n-1`` with 0 the identity; ``table[i][j]`` is the
index of ``g_i * g_j``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Hashable, Sequence

from .errors import ResourceCapError
from .graph import Graph, Permutation, automorphisms, is_connected

DEFAULT_ISO_CAP = 16
# vertex cap for checking realizations; order-16 groups realize on 8416 vertices
DEFAULT_REALIZATION_AUT_CAP = 10_000


@dataclass(frozen=True)
class GroupTable:
    table: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(tuple(int(x) for x in row) for row in self.table))

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        for b in range(self.order):
            if self.table[a][b] == 0:
                return b
        raise ValueError(f"element {a} has no inverse")

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
            if k > self.order:
                raise ValueError(f"element {a} has no finite order")
        return k

    def order_profile(self) -> Counter:
        return Counter(self.element_order(a) for a in range(self.order))

    def is_abelian(self) -> bool:
        t = self.table
        n = self.order
        return all(t[a][b] == t[b][a] for a in range(n) for b in range(a + 1, n))

    def generated_subgroup(self, gens: Sequence[int]) -> set[int]:
        seen = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for s in gens:
                y = self.table[x][s]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return seen

    def generators(self) -> list[int]:
        """Greedy generating set, preferring elements of large order."""
        candidates = sorted(range(1, self.order), key=lambda a: (-self.element_order(a), a))
        gens = []
        span = {0}
        for a in candidates:
            if a not in span:
                gens.append(a)
                span = self.generated_subgroup(gens)
                if len(span) == self.order:
                    break
        return gens


@dataclass
class ValidationReport:
    ok: bool
    diagnostics: list[str]

    def __bool__(self):
        return self.ok


def validate(t: GroupTable) -> ValidationReport:
    """Check every group-table invariant; associativity is tested on all triples."""
    diags = []
    n = t.order
    rows = t.table
    if n == 0:
        return ValidationReport(False, ["empty table"])
    if any(len(r) != n for r in rows):
        return ValidationReport(False, ["table is not square"])
    bad = [(i, j) for i in range(n) for j in range(n) if not 0 <= rows[i][j] < n]
    if bad:
        return ValidationReport(False, [f"entry {bad[0]} out of range"])
    if rows[0] != tuple(range(n)):
        diags.append("row 0 is not the identity map")
    if tuple(r[0] for r in rows) != tuple(range(n)):
        diags.append("column 0 is not the identity map")
    for i in range(n):
        if len(set(rows[i])) != n:
            diags.append(f"row {i} is not a permutation")
        if len({rows[r][i] for r in range(n)}) != n:
            diags.append(f"column {i} is not a permutation")
    for i in range(n):
        if not any(rows[i][j] == 0 and rows[j][i] == 0 for j in range(n)):
            diags.append(f"element {i} has no two-sided inverse")
    for a in range(n):
        ra = rows[a]
        for b in range(n):
            ab = ra[b]
            for c in range(n):
                if rows[ab][c] != ra[rows[b][c]]:
                    diags.append(f"associativity fails for ({a}, {b}, {c})")
                    return ValidationReport(False, diags)
    return ValidationReport(not diags, diags)


def find_isomorphism(a: GroupTable, b: GroupTable, cap: int = DEFAULT_ISO_CAP):
    """Return a witness isomorphism as a tuple ``phi`` (``phi[i]`` = image of i), or None.

    Backtracks over images of a generating set of ``a``, restricted to
    elements of ``b`` with the same order; each complete choice is extended
    along words and checked for being a bijective homomorphism.
    """
    n = a.order
    for t in (a, b):
        if t.order > cap:
            raise ResourceCapError("is_isomorphic", t.order, cap)
    if b.order != n:
        return None
    if a.order_profile() != b.order_profile():
        return None
    gens = a.generators()
    b_by_order = {}
    for y in range(n):
        b_by_order.setdefault(b.element_order(y), []).append(y)
    choices = [b_by_order[a.element_order(g)] for g in gens]

    def extend(images):
        phi = {0: 0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for g, h in zip(gens, images):
                y = a.table[x][g]
                z = b.table[phi[x]][h]
                if y in phi:
                    if phi[y] != z:
                        return None
                else:
                    phi[y] = z
                    frontier.append(y)
        if len(phi) != n or len(set(phi.values())) != n:
            return None
        for x in range(n):
            for y in range(n):
                if phi[a.table[x][y]] != b.table[phi[x]][phi[y]]:
                    return None
        return tuple(phi[i] for i in range(n))

    for images in product(*choices):
        if len(set(images)) != len(images):
            continue
        phi = extend(images)
        if phi is not None:
            return phi
    return None


def is_isomorphic(a: GroupTable, b: GroupTable, cap: int = DEFAULT_ISO_CAP) -> bool:
    return find_isomorphism(a, b, cap) is not None


# -- constructors ----------------------------------------------------------

def from_elements(elements: Sequence[Hashable], mul: Callable, name="") -> GroupTable:
    """Build a table from explicit elements; ``elements[0]`` must be the identity."""
    index = {e: i for i, e in enumerate(elements)}
    return GroupTable(tuple(tuple(index[mul(x, y)] for y in elements) for x in elements), name)


def cyclic(n: int) -> GroupTable:
    return from_elements(list(range(n)), lambda x, y: (x + y) % n, f"Z{n}")


def trivial() -> GroupTable:
    return GroupTable(((0,),), "trivial")


def direct_product(a: GroupTable, b: GroupTable) -> GroupTable:
    elems = [(i, j) for i in range(a.order) for j in range(b.order)]
    return from_elements(elems, lambda x, y: (a.mul(x[0], y[0]), b.mul(x[1], y[1])),
                         f"{a.name}x{b.name}")


def _compose(p, q):
    return tuple(p[i] for i in q)


def from_permutations(gens: Sequence[tuple[int, ...]], name="") -> GroupTable:
    """Permutation group generated by ``gens`` (tuples), identity listed first."""
    k = len(gens[0])
    ident = tuple(range(k))
    elems = [ident]
    seen = {ident}
    i = 0
    while i < len(elems):
        for s in gens:
            y = _compose(elems[i], s)
            if y not in seen:
                seen.add(y)
                elems.append(y)
        i += 1
    return from_elements(elems, _compose, name)


def symmetric3() -> GroupTable:
    return from_permutations([(1, 0, 2), (1, 2, 0)], "S3")


def dihedral(n: int) -> GroupTable:
    """Symmetries of the n-gon, order 2n."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return from_permutations([rot, ref], f"D{n}")


def quaternion() -> GroupTable:
    # unit quaternions as (sign, axis) with axis in 1, i, j, k
    prod_table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }

    def mul(x, y):
        s, ax = prod_table[(x[1], y[1])]
        return (x[0] * y[0] * s, ax)

    elems = [(1, "1"), (-1, "1"), (1, "i"), (-1, "i"), (1, "j"), (-1, "j"), (1, "k"), (-1, "k")]
    return from_elements(elems, mul, "Q8")


# -- realization -----------------------------------------------------------

# Triangle abc with tails a-d-f and b-e; no smaller asymmetric graph exists.
ASYMMETRIC_6 = Graph(
    ["a", "b", "c", "d", "e", "f"],
    [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "e"), ("d", "f")],
)
ORDER_TWO = Graph(["a", "b"], [("a", "b")])


def realize(g: GroupTable) -> Graph:
    """Finite connected graph whose automorphism group should be isomorphic to ``g``.

    Orders 1 and 2 use fixed graphs.  Otherwise every arc u -> u*s of the
    Cayley digraph on all non-identity s becomes a path u - p - q - u*s,
    with a pendant path of length 2s hanging from p and one of length 2s+1
    from q; tail lengths record both the colour s and the direction.
    The result is not trusted: :func:`verify_realization` is the check.
    """
    n = g.order
    if n == 1:
        return ASYMMETRIC_6
    if n == 2:
        return ORDER_TWO
    names = [f"g{i}" for i in range(n)]
    vertices = list(names)
    edges = []
    for u in range(n):
        for s in range(1, n):
            v = g.mul(u, s)
            p, q = f"p{u}.{s}", f"q{u}.{s}"
            vertices += [p, q]
            edges += [(names[u], p), (p, q), (q, names[v])]
            for head, length in ((p, 2 * s), (q, 2 * s + 1)):
                prev = head
                for k in range(1, length + 1):
                    t = f"{head}.{k}"
                    vertices.append(t)
                    edges.append((prev, t))
                    prev = t
    return Graph(vertices, edges)


def automorphism_group_table(perms: Sequence[Permutation]) -> GroupTable:
    """Multiplication table of a list of permutations closed under composition."""
    perms = list(perms)
    ident = [i for i, p in enumerate(perms) if p.is_identity()]
    if len(ident) != 1:
        raise ValueError("expected exactly one identity permutation")
    perms.insert(0, perms.pop(ident[0]))
    index = {p.images: i for i, p in enumerate(perms)}
    rows = []
    for p in perms:
        row = []
        for q in perms:
            r = index.get((p * q).images)
            if r is None:
                raise ValueError("permutation list is not closed under composition")
            row.append(r)
        rows.append(tuple(row))
    return GroupTable(tuple(rows))


def verify_realization(g: GroupTable, gr: Graph, aut_cap: int = DEFAULT_REALIZATION_AUT_CAP,
                       iso_cap: int = DEFAULT_ISO_CAP) -> bool:
    """Compute Aut(gr) and test it for isomorphism with ``g``."""
    if not is_connected(gr):
        return False
    auts = automorphisms(gr, cap=aut_cap)
    if len(auts) != g.order:
        return False
    return is_isomorphic(g, automorphism_group_table(auts), cap=iso_cap)


__all__ = [
    "DEFAULT_ISO_CAP", "DEFAULT_REALIZATION_AUT_CAP", "GroupTable", "ValidationReport", "validate", "find_isomorphism",
    "is_isomorphic", "cyclic", "trivial", "direct_product", "symmetric3", "dihedral",
    "quaternion", "from_elements", "from_permutations", "realize", "verify_realization",
    "automorphism_group_table",
]
