"""Free graded-commutative algebras over the rationals.

A generator table fixes an ordered list of graded generators.  Even-degree
generators are polynomial, odd-degree ones are exterior.  Monomials are
tuples of ``(generator index, exponent)`` pairs sorted by index, so the table
order *is* the canonical factor order.  Elements are sparse maps from
monomials to coefficients.

Coefficients are :class:`fractions.Fraction` whenever they come from numbers.
The arithmetic only needs ``+``, ``*`` and truthiness from a coefficient, so
polynomial coefficient rings (used for parametric calculations) also work.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DegreeError, ResourceCapError, TableMismatchError

ExactRational = Fraction

DEFAULT_BASIS_CAP = 10**6


@dataclass(frozen=True)
class GeneratorSymbol:
    name: str
    degree: int

    def __post_init__(self):
        if not isinstance(self.degree, int) or self.degree <= 0:
            raise DegreeError(f"generator {self.name!r} needs a positive degree, got {self.degree!r}")

    @property
    def is_odd(self):
        return self.degree % 2 == 1


class GeneratorTable:
    """Ordered set of graded generators; the order is the monomial order."""

    __slots__ = ("symbols", "_index", "degrees", "odd", "_mul_cache", "_hash")

    def __init__(self, symbols: Iterable[GeneratorSymbol | tuple[str, int]]):
        syms = []
        for s in symbols:
            if not isinstance(s, GeneratorSymbol):
                s = GeneratorSymbol(*s)
            syms.append(s)
        self.symbols = tuple(syms)
        self._index = {}
        for i, s in enumerate(self.symbols):
            if s.name in self._index:
                raise ValueError(f"duplicate generator {s.name!r}")
            self._index[s.name] = i
        self.degrees = tuple(s.degree for s in self.symbols)
        self.odd = tuple(s.is_odd for s in self.symbols)
        self._mul_cache = {}
        self._hash = hash(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, GeneratorTable):
            return NotImplemented
        return self.symbols == other.symbols

    def __hash__(self):
        return self._hash

    def __repr__(self):
        inner = ", ".join(f"{s.name}:{s.degree}" for s in self.symbols)
        return f"GeneratorTable([{inner}])"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def name(self, i: int) -> str:
        return self.symbols[i].name

    def degree_of(self, monomial) -> int:
        degs = self.degrees
        return sum(degs[i] * e for i, e in monomial)

    def multiply_monomials(self, m1, m2):
        """Return ``(sign, monomial)`` for ``m1 * m2``; sign 0 means the product vanishes."""
        key = (m1, m2)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        res = _merge(self.odd, m1, m2)
        if len(self._mul_cache) > 200_000:
            self._mul_cache.clear()
        self._mul_cache[key] = res
        return res


def _merge(odd, m1, m2):
    if not m1:
        return 1, m2
    if not m2:
        return 1, m1
    # An odd factor of m2 moved in front of the remaining m1 factors picks up
    # one sign per odd factor it passes.
    odd_left = sum(1 for i, _ in m1 if odd[i])
    parity = 0
    out = []
    a = b = 0
    n1, n2 = len(m1), len(m2)
    while a < n1 and b < n2:
        i, e = m1[a]
        j, f = m2[b]
        if i < j:
            out.append((i, e))
            if odd[i]:
                odd_left -= 1
            a += 1
        elif j < i:
            out.append((j, f))
            if odd[j]:
                parity ^= odd_left & 1
            b += 1
        else:
            if odd[i]:
                return 0, ()
            out.append((i, e + f))
            a += 1
            b += 1
    out.extend(m1[a:])
    out.extend(m2[b:])
    return (-1 if parity else 1), tuple(out)


def _as_coefficient(c):
    if isinstance(c, numbers.Rational) and not isinstance(c, Fraction):
        return Fraction(c)
    return c


def _resolve(table: GeneratorTable, g) -> int:
    if isinstance(g, GeneratorSymbol):
        i = table.index(g.name)
        if table.symbols[i] != g:
            raise TableMismatchError(f"{g} does not match table entry {table.symbols[i]}")
        return i
    if isinstance(g, str):
        return table.index(g)
    return int(g)


def normalize_product(table: GeneratorTable, factors) -> tuple[int, tuple]:
    """Sort an unordered product of generator powers into canonical form.

    ``factors`` is a sequence of ``(generator, exponent)`` with the generator
    given as a symbol, a name or an index.  Returns ``(sign, monomial)``; the
    sign counts transpositions of odd generators, and is 0 (with the unit
    monomial) when an odd generator would appear squared.
    """
    items = []
    for g, e in factors:
        if e <= 0:
            raise ValueError(f"exponent must be positive, got {e}")
        i = _resolve(table, g)
        if table.odd[i] and e > 1:
            return 0, ()
        items.append((i, e))
    odd = table.odd
    odd_keys = [i for i, _ in items if odd[i]]
    inversions = 0
    for x in range(len(odd_keys)):
        for y in range(x + 1, len(odd_keys)):
            if odd_keys[x] > odd_keys[y]:
                inversions += 1
            elif odd_keys[x] == odd_keys[y]:
                return 0, ()
    merged = {}
    for i, e in items:
        merged[i] = merged.get(i, 0) + e
    return (-1 if inversions % 2 else 1), tuple(sorted(merged.items()))


class Element:
    """Finite linear combination of canonical monomials."""

    __slots__ = ("table", "_terms")

    def __init__(self, table: GeneratorTable, terms: Mapping | None = None):
        self.table = table
        clean = {}
        if terms:
            for m, c in terms.items():
                c = _as_coefficient(c)
                if c:
                    clean[m] = c
        self._terms = clean

    @classmethod
    def _raw(cls, table, terms):
        obj = cls.__new__(cls)
        obj.table = table
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, table):
        return cls._raw(table, {})

    @classmethod
    def one(cls, table):
        return cls._raw(table, {(): Fraction(1)})

    @classmethod
    def constant(cls, table, c):
        return cls(table, {(): c})

    @classmethod
    def generator(cls, table, g):
        return cls._raw(table, {((_resolve(table, g), 1),): Fraction(1)})

    @classmethod
    def monomial(cls, table, monomial, coeff=1):
        return cls(table, {tuple(monomial): coeff})

    @classmethod
    def from_factors(cls, table, factors, coeff=1):
        sign, m = normalize_product(table, factors)
        if sign == 0:
            return cls.zero(table)
        return cls(table, {m: coeff * sign})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coefficient(self, monomial):
        return self._terms.get(tuple(monomial), 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def degrees(self) -> set[int]:
        return {self.table.degree_of(m) for m in self._terms}

    def is_homogeneous(self, degree=None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def degree(self):
        """Degree of a nonzero homogeneous element, ``None`` otherwise."""
        degs = self.degrees()
        return degs.pop() if len(degs) == 1 else None

    def _check(self, other):
        if self.table is not other.table and self.table != other.table:
            raise TableMismatchError("elements belong to different generator tables")

    def _coerce(self, other):
        if isinstance(other, Element):
            self._check(other)
            return other
        return Element.constant(self.table, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Element._raw(self.table, out)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw(self.table, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Element):
            return scale(other, self)
        return multiply(self, other)

    def __rmul__(self, other):
        return scale(other, self)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = Element.one(self.table)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.table == other.table and self._terms == other._terms
        if isinstance(other, numbers.Number) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.table, frozenset(self._terms.items())))

    def map_coefficients(self, fn):
        return Element(self.table, {m: fn(c) for m, c in self._terms.items()})

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda mc: monomial_sort_key(mc[0]))

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({format_element(self)!r})"


def monomial_sort_key(monomial):
    # lex with earlier generators dominant and higher powers first
    return tuple((i, -e) for i, e in monomial)


def add(a: Element, b: Element) -> Element:
    return a + b


def scale(c, a: Element) -> Element:
    c = _as_coefficient(c)
    if not c:
        return Element.zero(a.table)
    out = {}
    for m, v in a._terms.items():
        p = c * v
        if p:
            out[m] = p
    return Element._raw(a.table, out)


def multiply(a: Element, b: Element) -> Element:
    a._check(b)
    table = a.table
    out = {}
    mul = table.multiply_monomials
    for m1, c1 in a._terms.items():
        for m2, c2 in b._terms.items():
            sign, m = mul(m1, m2)
            if not sign:
                continue
            p = c1 * c2
            if sign < 0:
                p = -p
            s = out.get(m)
            s = p if s is None else s + p
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return Element._raw(table, out)


def monomial_basis(table: GeneratorTable, n: int, cap: int = DEFAULT_BASIS_CAP) -> list[tuple]:
    """All canonical monomials of degree exactly ``n``, in a fixed order.

    Raises :class:`ResourceCapError` once more than ``cap`` monomials have
    been produced.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    usable = [(i, d, table.odd[i]) for i, d in enumerate(table.degrees) if d <= n]
    out = []

    def rec(pos, rem, acc):
        if rem == 0:
            out.append(tuple(acc))
            if len(out) > cap:
                raise ResourceCapError("monomial_basis", len(out), cap)
            return
        for k in range(pos, len(usable)):
            i, d, odd = usable[k]
            if d > rem:
                continue
            top = 1 if odd else rem // d
            for e in range(1, top + 1):
                acc.append((i, e))
                rec(k + 1, rem - e * d, acc)
                acc.pop()

    rec(0, n, [])
    return out


class GeneratorMap:
    """Algebra endomorphism given by the images of the generators.

    Generators not mentioned in ``images`` are fixed.  Every image must be
    homogeneous of the generator's degree (zero is allowed).
    """

    __slots__ = ("table", "images", "verified")

    def __init__(self, table: GeneratorTable, images: Mapping | None = None, verified=False):
        self.table = table
        imgs = [Element.generator(table, i) for i in range(len(table))]
        for g, img in (images or {}).items():
            i = _resolve(table, g)
            if not isinstance(img, Element):
                raise TypeError(f"image of {table.name(i)} must be an Element")
            img._check(imgs[i])
            if not img.is_homogeneous(table.degrees[i]):
                raise DegreeError(
                    f"image of {table.name(i)} must be homogeneous of degree {table.degrees[i]}, got {img}"
                )
            imgs[i] = img
        self.images = tuple(imgs)
        self.verified = verified

    @classmethod
    def identity(cls, table):
        return cls(table)

    def __call__(self, a: Element) -> Element:
        return substitute(self, a)

    def image(self, g) -> Element:
        return self.images[_resolve(self.table, g)]

    def is_identity(self):
        return all(
            len(img) == 1 and img.coefficient(((i, 1),)) == 1
            for i, img in enumerate(self.images)
        )

    def moved_generators(self):
        return [
            self.table.name(i)
            for i, img in enumerate(self.images)
            if img != Element.generator(self.table, i)
        ]

    def __eq__(self, other):
        if not isinstance(other, GeneratorMap):
            return NotImplemented
        return self.table == other.table and self.images == other.images

    def __hash__(self):
        return hash((self.table, self.images))

    def __repr__(self):
        moved = ", ".join(f"{self.table.name(i)} -> {img}" for i, img in enumerate(self.images)
                          if img != Element.generator(self.table, i))
        return f"GeneratorMap({moved or 'identity'})"


def substitute(f: GeneratorMap, a: Element) -> Element:
    """Apply the algebra homomorphism determined by ``f`` to ``a``."""
    if f.table != a.table:
        raise TableMismatchError("map and element belong to different generator tables")
    table = a.table
    result = Element.zero(table)
    powers = {}
    for m, c in a._terms.items():
        term = None
        for i, e in m:
            key = (i, e)
            p = powers.get(key)
            if p is None:
                p = f.images[i] if e == 1 else f.images[i] ** e
                powers[key] = p
            term = p if term is None else term * p
            if not term:
                break
        if term is None:
            term = Element.one(table)
        result = result + scale(c, term)
    return result


def format_monomial(table: GeneratorTable, monomial) -> str:
    parts = []
    for i, e in monomial:
        name = table.name(i)
        parts.append(name if e == 1 else f"{name}^{e}")
    return " ".join(parts)


def format_coefficient(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return f"({c})"


def format_element(a: Element) -> str:
    """Canonical text form, e.g. ``x1^2 y1 - 3/2 * x2``; zero prints as ``0``."""
    if not a:
        return "0"
    pieces = []
    for k, (m, c) in enumerate(a.sorted_terms()):
        negative = isinstance(c, Fraction) and c < 0
        mag = -c if negative else c
        body = format_monomial(a.table, m)
        if not body:
            text = format_coefficient(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{format_coefficient(mag)} * {body}"
        if k == 0:
            pieces.append(f"-{text}" if negative else text)
        else:
            pieces.append(f"{'-' if negative else '+'} {text}")
    return " ".join(pieces)
