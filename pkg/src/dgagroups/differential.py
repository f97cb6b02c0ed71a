"""Degree +1 derivations extended from generators by the graded Leibniz rule."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .algebra import Element, GeneratorTable, _resolve
from .errors import DegreeError, TableMismatchError


class Derivation:
    """A derivation of degree +1 given by its values on generators.

    Generators missing from ``images`` have zero differential.
    """

    __slots__ = ("table", "images", "_cache")

    def __init__(self, table: GeneratorTable, images: Mapping | None = None, check_degrees=True):
        self.table = table
        imgs = [Element.zero(table) for _ in range(len(table))]
        for g, img in (images or {}).items():
            i = _resolve(table, g)
            if img.table != table:
                raise TableMismatchError(f"image of {table.name(i)} is over another table")
            if check_degrees and not img.is_homogeneous(table.degrees[i] + 1):
                raise DegreeError(
                    f"d({table.name(i)}) must be homogeneous of degree {table.degrees[i] + 1}"
                )
            imgs[i] = img
        self.images = tuple(imgs)
        self._cache = {}

    def of(self, g) -> Element:
        return self.images[_resolve(self.table, g)]

    def __call__(self, a: Element) -> Element:
        return apply(self, a)

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.table == other.table and self.images == other.images

    def __hash__(self):
        return hash((self.table, self.images))


def _d_monomial(d: Derivation, m) -> Element:
    hit = d._cache.get(m)
    if hit is not None:
        return hit
    table = d.table
    if not m:
        res = Element.zero(table)
    else:
        (i, e), rest = m[0], m[1:]
        dg = d.images[i]
        if dg:
            # d(g^e) = e g^(e-1) d(g) for even g; odd generators only occur with e = 1
            head = dg if e == 1 else (e * Element.monomial(table, ((i, e - 1),))) * dg
            res = head * Element.monomial(table, rest) if rest else head
        else:
            res = Element.zero(table)
        if rest:
            tail = _d_monomial(d, rest)
            if tail:
                sign = -1 if (table.degrees[i] * e) % 2 else 1
                res = res + sign * (Element.monomial(table, ((i, e),)) * tail)
    if len(d._cache) > 100_000:
        d._cache.clear()
    d._cache[m] = res
    return res


def apply(d: Derivation, a: Element) -> Element:
    """Evaluate ``d(a)`` by linearity and d(gh) = d(g)h + (-1)^|g| g d(h)."""
    if a.table != d.table:
        raise TableMismatchError("element and derivation belong to different generator tables")
    out = Element.zero(d.table)
    for m, c in a.items():
        dm = _d_monomial(d, m)
        if dm:
            out = out + c * dm
    return out


@dataclass
class SquareCheck:
    residuals: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(not r for r in self.residuals.values())

    def failures(self):
        return {g: r for g, r in self.residuals.items() if r}


def check_d_squared(d: Derivation) -> SquareCheck:
    """Compute d(d(g)) for every generator g.

    By the Leibniz rule d^2 is itself a derivation, so vanishing on generators
    certifies d^2 = 0 on the whole algebra.
    """
    report = SquareCheck()
    for i, sym in enumerate(d.table.symbols):
        report.residuals[sym.name] = apply(d, d.images[i])
    return report
