"""Randomized checks of the algebraic laws the rest of the package relies on.

The same samplers back the ``selftest`` command and the acceptance suite;
hypothesis-based versions live in the test suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Element, GeneratorMap, GeneratorTable, monomial_basis, substitute
from .differential import Derivation, apply

# small mixed-parity table: cheap bases in every low degree
LAW_TABLE = GeneratorTable([("a", 1), ("b", 2), ("c", 3), ("e", 4), ("h", 5), ("k", 6)])


class Sampler:
    """Random homogeneous elements over a fixed table, with cached bases."""

    __slots__ = ("table", "rng", "_bases")

    def __init__(self, table: GeneratorTable, rng: random.Random):
        self.table = table
        self.rng = rng
        self._bases = {}

    def basis(self, n):
        if n not in self._bases:
            self._bases[n] = monomial_basis(self.table, n)
        return self._bases[n]

    def element(self, degree, max_terms=3, max_coeff=4):
        basis = self.basis(degree)
        if not basis:
            return Element.zero(self.table)
        terms = {}
        for m in self.rng.sample(basis, self.rng.randint(1, min(max_terms, len(basis)))):
            num = self.rng.randint(-max_coeff, max_coeff) or 1
            den = self.rng.randint(1, 3)
            terms[m] = Fraction(num, den)
        return Element(self.table, terms)

    def any_element(self, max_degree=7):
        return self.element(self.rng.randint(1, max_degree))

    def derivation(self):
        return Derivation(self.table, {s.name: self.element(s.degree + 1) for s in self.table})

    def generator_map(self):
        return GeneratorMap(self.table, {s.name: self.element(s.degree) for s in self.table})


@dataclass
class LawReport:
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def graded_commutator(a: Element, b: Element) -> Element:
    """``ab - (-1)^{|a||b|} ba``; zero for homogeneous a, b."""
    sign = -1 if (a.degree() * b.degree()) % 2 else 1
    return a * b - sign * (b * a)


def leibniz_defect(d: Derivation, a: Element, b: Element) -> Element:
    sign = -1 if a.degree() % 2 else 1
    return apply(d, a * b) - (apply(d, a) * b + sign * (a * apply(d, b)))


def check_laws(samples: int, seed: int, table: GeneratorTable = LAW_TABLE) -> LawReport:
    """Run ``samples`` checks of each law with a seeded generator."""
    s = Sampler(table, random.Random(seed))
    rep = LawReport()
    for name in ("graded_commutativity", "associativity", "leibniz", "substitute_homomorphism"):
        rep.counts[name] = 0
    for k in range(samples):
        a, b, c = s.any_element(), s.any_element(), s.any_element()
        if graded_commutator(a, b):
            rep.failures.append(("graded_commutativity", k, str(a), str(b)))
        rep.counts["graded_commutativity"] += 1
        if (a * b) * c != a * (b * c):
            rep.failures.append(("associativity", k, str(a), str(b), str(c)))
        rep.counts["associativity"] += 1
        d = s.derivation()
        if leibniz_defect(d, a, b):
            rep.failures.append(("leibniz", k, str(a), str(b)))
        rep.counts["leibniz"] += 1
        f = s.generator_map()
        if substitute(f, a * b) != substitute(f, a) * substitute(f, b) or \
                substitute(f, a + b) != substitute(f, a) + substitute(f, b):
            rep.failures.append(("substitute_homomorphism", k, str(a), str(b)))
        rep.counts["substitute_homomorphism"] += 1
    return rep
