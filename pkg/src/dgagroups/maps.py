"""DGA automorphisms built from graph automorphisms and from the kernel K.

A graph automorphism sigma lifts canonically to the map fixing x1, x2, y1,
y2, y3, z and sending xv -> x(sigma v), zv -> z(sigma v).  Kernel elements
fix every generator except z -> z + d(m_z) and zv -> zv + d(m_zv), with the
m's of degree 118.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

from .algebra import Element, GeneratorMap, monomial_basis, substitute
from .encoder import DGAPresentation, x_name, z_name
from .errors import DegreeError, LiftError, TableMismatchError
from .graph import Permutation

KERNEL_M_DEGREE = 118
DEFAULT_NMAX = 5


def commutation_residuals(p: DGAPresentation, f: GeneratorMap) -> dict[str, Element]:
    """``f(d g) - d(f g)`` for every generator g."""
    out = {}
    for i, s in enumerate(p.table.symbols):
        out[s.name] = substitute(f, p.differential.images[i]) - p.d(f.images[i])
    return out


def verify(p: DGAPresentation, f: GeneratorMap) -> GeneratorMap:
    """Return ``f`` flagged verified, or raise :class:`LiftError` on the first residual."""
    if f.table != p.table:
        raise TableMismatchError("map and presentation use different tables")
    for name, r in commutation_residuals(p, f).items():
        if r:
            raise LiftError(name, r)
    return GeneratorMap(p.table, dict(enumerate(f.images)), verified=True)


def _vertex_mapping(p, sigma):
    verts = p.vertices
    if isinstance(sigma, Permutation):
        if len(sigma) != len(verts):
            raise ValueError("permutation size does not match the vertex count")
        return {verts[i]: verts[j] for i, j in enumerate(sigma.images)}
    mapping = {v: sigma.get(v, v) for v in verts}
    if sorted(mapping.values()) != sorted(verts):
        raise ValueError("vertex map is not a bijection")
    return mapping


def lift(p: DGAPresentation, sigma: Permutation | Mapping[str, str]) -> GeneratorMap:
    """Canonical lift of a vertex permutation; fails with a named residual unless it is an automorphism."""
    mapping = _vertex_mapping(p, sigma)
    images = {}
    for v, w in mapping.items():
        if v != w:
            images[x_name(v)] = p.gen(x_name(w))
            images[z_name(v)] = p.gen(z_name(w))
    return verify(p, GeneratorMap(p.table, images))


def compose(f: GeneratorMap, g: GeneratorMap) -> GeneratorMap:
    """``f o g``: first g, then f."""
    if f.table != g.table:
        raise TableMismatchError("maps use different tables")
    return GeneratorMap(f.table, {i: substitute(f, img) for i, img in enumerate(g.images)},
                        verified=f.verified and g.verified)


def power(f: GeneratorMap, n: int) -> GeneratorMap:
    if n < 0:
        raise ValueError("only non-negative powers")
    out = GeneratorMap.identity(f.table)
    out.verified = f.verified
    for _ in range(n):
        out = compose(f, out)
    return out


def kernel_element(p: DGAPresentation, m_z: Element | None = None,
                   m_zv: Mapping[str, Element] | None = None) -> GeneratorMap:
    """Kernel automorphism z -> z + d(m_z), zv -> zv + d(m_zv); the m's have degree 118."""
    images = {}
    todo = [("z", m_z)] + [(z_name(v), m) for v, m in (m_zv or {}).items()]
    for name, m in todo:
        if m is None or not m:
            continue
        if m.table != p.table:
            raise TableMismatchError(f"m for {name} is over another table")
        if not m.is_homogeneous(KERNEL_M_DEGREE):
            raise DegreeError(f"m for {name} must be homogeneous of degree {KERNEL_M_DEGREE}")
        images[name] = p.gen(name) + p.d(m)
    return verify(p, GeneratorMap(p.table, images))


def _z_generators(p):
    return ["z"] + [z_name(v) for v in p.vertices]


def is_kernel_shaped(p: DGAPresentation, f: GeneratorMap) -> bool:
    """True iff f fixes every generator other than z, zv and moves those by boundaries only."""
    zs = set(_z_generators(p))
    for i, s in enumerate(p.table.symbols):
        img = f.images[i]
        gen = p.gen(s.name)
        if s.name in zs:
            delta = img - gen
            if delta and p.d(delta):
                return False
        elif img != gen:
            return False
    return True


@dataclass
class KernelReport:
    power_failures: list = field(default_factory=list)
    nontrivial_powers: dict = field(default_factory=dict)
    commutator_failures: list = field(default_factory=list)
    shape_failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not (self.power_failures or self.commutator_failures or self.shape_failures)


def check_kernel_properties(p: DGAPresentation, f: GeneratorMap, g: GeneratorMap,
                            nmax: int = DEFAULT_NMAX) -> KernelReport:
    """Check the power law f^n(z) = z + n d(m_z) (and for each zv) and fg = gf.

    ``d(m)`` is read off as ``f(z) - z``.  When it is nonzero the law shows
    f^n differs from the identity for every n in ``1..nmax``.
    """
    rep = KernelReport()
    for name, h in (("f", f), ("g", g)):
        if not is_kernel_shaped(p, h):
            rep.shape_failures.append(name)
    if rep.shape_failures:
        return rep
    zs = _z_generators(p)
    deltas = {z: f.image(z) - p.gen(z) for z in zs}
    fn = f
    for n in range(1, nmax + 1):
        if n > 1:
            fn = compose(f, fn)
        for z in zs:
            want = p.gen(z) + n * deltas[z]
            got = fn.image(z)
            if got != want:
                rep.power_failures.append((n, z, str(got - want)))
        rep.nontrivial_powers[n] = not fn.is_identity()
    fg, gf = compose(f, g), compose(g, f)
    for i, s in enumerate(p.table.symbols):
        if fg.images[i] != gf.images[i]:
            rep.commutator_failures.append((s.name, str(fg.images[i] - gf.images[i])))
    return rep


def random_m_element(basis, table, rng: random.Random, max_support=3, max_coeff=3) -> Element:
    """Random element with at most ``max_support`` monomials from ``basis``."""
    k = rng.randint(1, min(max_support, len(basis)))
    terms = {}
    for m in rng.sample(basis, k):
        c = 0
        while c == 0:
            c = rng.randint(-max_coeff, max_coeff)
        terms[m] = c
    return Element(table, terms)


def random_kernel_element(p: DGAPresentation, rng: random.Random, basis=None, vertex_fraction=0.5):
    """Sample a kernel element; returns ``(map, m_z, m_zv)``."""
    if basis is None:
        basis = monomial_basis(p.table, KERNEL_M_DEGREE)
    m_z = random_m_element(basis, p.table, rng)
    m_zv = {v: random_m_element(basis, p.table, rng)
            for v in p.vertices if rng.random() < vertex_fraction}
    return kernel_element(p, m_z, m_zv), m_z, m_zv
