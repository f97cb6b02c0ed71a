from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dgagroups.algebra import (DEFAULT_BASIS_CAP, Element, ExactRational, GeneratorMap, GeneratorTable,
                               add, format_element, monomial_basis, multiply, normalize_product, scale,
                               substitute)
from dgagroups.encoder import encode_graph
from dgagroups.errors import DegreeError, ResourceCapError, TableMismatchError
from dgagroups.formats import parse_element
from dgagroups.graph import Graph
from dgagroups.laws import LAW_TABLE, graded_commutator

T = GeneratorTable([("x1", 8), ("x2", 10), ("y1", 33), ("y2", 35), ("y3", 37),
                    ("xv:a", 40), ("xv:b", 40), ("z", 119)])


def g(name, table=T):
    return Element.generator(table, name)


def mono(*factors, table=T):
    return Element.from_factors(table, factors)


# -- coefficients --------------------------------------------------------------

def test_exact_rational_is_normalized():
    q = ExactRational(6, -4)
    assert (q.numerator, q.denominator) == (-3, 2)
    assert ExactRational(0, 7) == 0 and ExactRational(0, 7).denominator == 1


def test_zero_coefficients_are_dropped():
    e = Element(T, {((0, 1),): 0, ((1, 1),): Fraction(1, 2)})
    assert len(e) == 1
    assert g("x1") - g("x1") == 0
    assert not (g("x1") - g("x1"))


# -- normalize_product ---------------------------------------------------------

def test_normalize_odd_swap():
    assert normalize_product(T, [("y2", 1), ("y1", 1)]) == (-1, ((T.index("y1"), 1), (T.index("y2"), 1)))


def test_normalize_odd_square_vanishes():
    assert normalize_product(T, [("y1", 1), ("y1", 1)]) == (0, ())
    assert normalize_product(T, [("y1", 2)]) == (0, ())


def test_normalize_even_commute():
    assert normalize_product(T, [("x2", 2), ("x1", 3)]) == (1, ((0, 3), (1, 2)))


def test_normalize_three_odd_cycle():
    # y3 y1 y2 -> y1 y2 y3 needs two transpositions
    s, m = normalize_product(T, [("y3", 1), ("y1", 1), ("y2", 1)])
    assert s == 1 and m == ((2, 1), (3, 1), (4, 1))


def test_normalize_rejects_nonpositive_exponent():
    with pytest.raises(ValueError):
        normalize_product(T, [("x1", 0)])


def _permutation_sign(seq):
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


@given(st.lists(st.sampled_from(["x1", "x2", "y1", "y2", "y3", "xv:a", "z"]), min_size=1, max_size=6))
def test_normalize_matches_permutation_sign(names):
    s, m = normalize_product(T, [(n, 1) for n in names])
    odd = [T.index(n) for n in names if T.odd[T.index(n)]]
    if len(set(odd)) != len(odd):
        assert s == 0
    else:
        assert s == _permutation_sign(odd)
        assert T.degree_of(m) == sum(T.degrees[T.index(n)] for n in names)


# -- products, sums --------------------------------------------------------------

def test_multiply_examples():
    assert multiply(g("y1"), g("y2")) == -multiply(g("y2"), g("y1"))
    assert multiply(g("x1") + g("x2"), g("x1")) == mono(("x1", 2)) + mono(("x1", 1), ("x2", 1))
    xa = g("xv:a")
    assert multiply(xa, xa * xa) == mono(("xv:a", 3))


def test_add_scale_examples():
    z = g("z")
    assert add(z, scale(-1, z)) == 0
    m = mono(("x1", 3), ("x2", 1))
    assert add(m, m) == 2 * m
    assert scale(Fraction(1, 2), 2 * mono(("x2", 12))) == mono(("x2", 12))


def test_table_mismatch():
    other = GeneratorTable([("x1", 8)])
    with pytest.raises(TableMismatchError):
        g("x1") + Element.generator(other, "x1")
    with pytest.raises(TableMismatchError):
        multiply(g("x1"), Element.generator(other, "x1"))


def test_unit_is_identity_for_product():
    m = mono(("x1", 2), ("y1", 1), ("z", 1))
    assert m * Element.one(T) == m and Element.one(T) * m == m


def test_element_degree_queries():
    e = mono(("x1", 5)) + mono(("x2", 4)) + g("xv:a")
    assert e.is_homogeneous(40) and e.degree() == 40
    assert not (g("x1") + g("x2")).is_homogeneous()


def test_format_is_canonical():
    e = Fraction(-3, 2) * g("x2") + mono(("x1", 2), ("y1", 1))
    assert format_element(e) == "x1^2 y1 - 3/2 * x2"
    assert format_element(Element.zero(T)) == "0"


# -- random elements via hypothesis ---------------------------------------------------

_bases = {n: monomial_basis(LAW_TABLE, n) for n in range(1, 8)}


@st.composite
def elements(draw, max_degree=7):
    n = draw(st.integers(1, max_degree))
    basis = _bases[n]
    ms = draw(st.lists(st.sampled_from(basis), min_size=1, max_size=3, unique=True))
    cs = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4)
                       .filter(lambda c: c != 0), min_size=len(ms), max_size=len(ms)))
    return Element(LAW_TABLE, dict(zip(ms, cs)))


@settings(max_examples=200)
@given(elements(), elements())
def test_graded_commutativity(a, b):
    assert graded_commutator(a, b) == 0


@settings(max_examples=200)
@given(elements(), elements(), elements())
def test_associativity_and_distributivity(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@given(elements())
def test_multiply_by_one_keeps_canonical_form(a):
    assert a * Element.one(LAW_TABLE) == a
    for m in a.monomials():
        assert multiply(Element.monomial(LAW_TABLE, m), Element.one(LAW_TABLE)).monomials() == {m: 1}.keys()


@given(elements())
def test_text_round_trip(a):
    assert parse_element(LAW_TABLE, format_element(a)) == a


# -- monomial bases -----------------------------------------------------------------

def _basis_count(degrees, odd, n):
    # coefficient of t^n in prod_even 1/(1-t^d) * prod_odd (1+t^d)
    poly = [1] + [0] * n
    for d, o in zip(degrees, odd):
        new = list(poly)
        if o:
            for k in range(n, d - 1, -1):
                new[k] += poly[k - d]
        else:
            for k in range(d, n + 1):
                new[k] += new[k - d]
        poly = new
    return poly[n]


def test_basis_small_degrees():
    assert monomial_basis(T, 0) == [()]
    p = encode_graph(Graph(["a", "b", "c"], [("a", "b"), ("b", "c")]))
    assert monomial_basis(p.table, 8) == [((0, 1),)]
    b40 = monomial_basis(p.table, 40)
    names = sorted(format_element(Element.monomial(p.table, m)) for m in b40)
    assert names == sorted(["x1^5", "x2^4", "xv:a", "xv:b", "xv:c"])


@pytest.mark.parametrize("n", [0, 8, 40, 80, 118, 119, 120])
def test_basis_count_matches_generating_function(n):
    p = encode_graph(Graph(["a", "b"], [("a", "b")]))
    t = p.table
    basis = monomial_basis(t, n)
    assert len(basis) == len(set(basis))
    assert all(t.degree_of(m) == n for m in basis)
    assert len(basis) == _basis_count(t.degrees, t.odd, n)


@given(st.lists(st.sampled_from(range(len(LAW_TABLE))), min_size=1, max_size=5))
def test_basis_completeness(gens):
    s, m = normalize_product(LAW_TABLE, [(i, 1) for i in gens])
    if s:
        assert m in monomial_basis(LAW_TABLE, LAW_TABLE.degree_of(m))


def test_basis_cap():
    assert DEFAULT_BASIS_CAP == 10 ** 6
    with pytest.raises(ResourceCapError):
        monomial_basis(LAW_TABLE, 30, cap=10)


# -- substitute ---------------------------------------------------------------------

def test_substitute_examples():
    assert substitute(GeneratorMap.identity(T), g("z")) == g("z")
    swap = GeneratorMap(T, {"xv:a": g("xv:b"), "xv:b": g("xv:a")})
    ab = g("xv:a") * g("xv:b")
    assert substitute(swap, ab) == ab


def test_substitute_twice_adds_boundary_twice():
    p = encode_graph(Graph(["a"], []))
    m = Element.from_factors(p.table, [("y1", 1), ("y2", 1), ("x1", 5), ("x2", 1)])
    dm = p.d(m)
    f = GeneratorMap(p.table, {"z": p.gen("z") + dm})
    assert substitute(f, substitute(f, p.gen("z"))) == p.gen("z") + 2 * dm


def test_generator_map_degree_errors():
    with pytest.raises(DegreeError):
        GeneratorMap(T, {"x1": g("x2")})
    with pytest.raises(DegreeError):
        GeneratorMap(T, {"xv:a": g("xv:b") + g("x1")})


@st.composite
def law_maps(draw):
    images = {}
    for s in LAW_TABLE:
        if draw(st.booleans()):
            images[s.name] = _image_of_degree(draw, s.degree)
    return GeneratorMap(LAW_TABLE, images)


def _image_of_degree(draw, n):
    ms = draw(st.lists(st.sampled_from(_bases[n]), min_size=1, max_size=2, unique=True))
    cs = draw(st.lists(st.integers(-3, 3), min_size=len(ms), max_size=len(ms)))
    return Element(LAW_TABLE, dict(zip(ms, cs)))


@settings(max_examples=150)
@given(law_maps(), elements(), elements())
def test_substitute_is_homomorphism(f, a, b):
    assert substitute(f, a * b) == substitute(f, a) * substitute(f, b)
    assert substitute(f, a + b) == substitute(f, a) + substitute(f, b)
    assert substitute(f, Element.one(LAW_TABLE)) == Element.one(LAW_TABLE)
