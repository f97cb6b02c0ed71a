import random

import pytest

from dgagroups.algebra import Element, GeneratorMap
from dgagroups.encoder import encode_graph
from dgagroups.errors import DegreeError, LiftError, TableMismatchError
from dgagroups.graph import Permutation, automorphisms, complete_graph, path_graph
from dgagroups.maps import (KERNEL_M_DEGREE, check_kernel_properties, commutation_residuals, compose,
                            is_kernel_shaped, kernel_element, lift, power, random_kernel_element, verify)


def mono(p, *factors):
    return Element.from_factors(p.table, factors)


def test_identity_lift(enc_k3):
    f = lift(enc_k3, Permutation.identity(3))
    assert f.is_identity() and f.verified


def test_three_cycle_lift(enc_k3):
    f = lift(enc_k3, {"a": "b", "b": "c", "c": "a"})
    assert f.verified
    assert f.image("xv:a") == enc_k3.gen("xv:b") and f.image("zv:c") == enc_k3.gen("zv:a")
    assert all(r == 0 for r in commutation_residuals(enc_k3, f).values())


def test_non_automorphism_lift_fails(p3):
    p = encode_graph(p3)
    with pytest.raises(LiftError) as exc:
        lift(p, {"a": "b", "b": "a"})
    assert exc.value.generator == "zv:a"
    assert exc.value.residual != 0


def test_lift_rejects_non_bijection(enc_k3):
    with pytest.raises(ValueError):
        lift(enc_k3, {"a": "b"})


def test_lift_homomorphism_and_injective(small_graphs):
    for name, g in small_graphs.items():
        p = encode_graph(g)
        auts = automorphisms(g)
        lifts = {s.images: lift(p, s) for s in auts}
        for s in auts:
            if not s.is_identity():
                assert any(n.startswith("xv:") for n in lifts[s.images].moved_generators())
            for t in auts:
                assert lifts[(s * t).images] == compose(lifts[s.images], lifts[t.images]), name


def test_kernel_examples():
    p = encode_graph(complete_graph(3))
    assert kernel_element(p, Element.zero(p.table)).is_identity()
    m = mono(p, ("y1", 1), ("y2", 1), ("x1", 5), ("x2", 1))
    assert m.degree() == KERNEL_M_DEGREE
    f = kernel_element(p, m)
    want = p.gen("z") + mono(p, ("y2", 1), ("x1", 8), ("x2", 2)) - mono(p, ("y1", 1), ("x1", 7), ("x2", 3))
    assert f.image("z") == want
    assert power(f, 3).image("z") == p.gen("z") + 3 * p.d(m)
    assert kernel_element(p, mono(p, ("x1", 1), ("x2", 11))).is_identity()


def test_kernel_degree_error():
    p = encode_graph(path_graph(2))
    # y1 y3 x1^4 x2^2 has degree 122, not 118
    with pytest.raises(DegreeError):
        kernel_element(p, mono(p, ("y1", 1), ("y3", 1), ("x1", 4), ("x2", 2)))


def test_kernel_commutator_and_powers():
    p = encode_graph(complete_graph(3))
    f = kernel_element(p, mono(p, ("y1", 1), ("y2", 1), ("x1", 5), ("x2", 1)))
    g = kernel_element(p, mono(p, ("y1", 1), ("y3", 1), ("x1", 1), ("x2", 4)))
    rep = check_kernel_properties(p, f, g, nmax=5)
    assert rep.ok
    assert all(rep.nontrivial_powers[n] for n in range(1, 6))
    ident = GeneratorMap.identity(p.table)
    rep = check_kernel_properties(p, ident, ident)
    assert rep.ok and not any(rep.nontrivial_powers.values())


def test_power_zero(enc_k3):
    f = lift(enc_k3, {"a": "b", "b": "a"})
    assert power(f, 0).is_identity()
    with pytest.raises(ValueError):
        power(f, -1)


def test_random_kernel_laws(small_graphs):
    rng = random.Random(99)
    for name, g in small_graphs.items():
        p = encode_graph(g)
        f, m_z, _ = random_kernel_element(p, rng)
        h, _, _ = random_kernel_element(p, rng)
        rep = check_kernel_properties(p, f, h, nmax=3)
        assert rep.ok, (name, rep)
        assert is_kernel_shaped(p, f)


def test_lifts_meet_kernel_trivially(small_graphs):
    for name, g in small_graphs.items():
        p = encode_graph(g)
        for s in automorphisms(g):
            f = lift(p, s)
            assert is_kernel_shaped(p, f) == s.is_identity(), name


def test_kernel_shape_detects_non_kernel(enc_k3):
    assert not is_kernel_shaped(enc_k3, lift(enc_k3, {"a": "b", "b": "a"}))


def test_verify_table_mismatch(enc_k3):
    other = encode_graph(path_graph(2))
    with pytest.raises(TableMismatchError):
        verify(enc_k3, GeneratorMap.identity(other.table))
