import random

import pytest
from hypothesis import given, strategies as st

from q8mjd.cyclic_ring import CyclicRingElt, bass_unit, invert_unit
from q8mjd.errors import NotAUnit, NotInV, SemisimpleInput, WrongPrime
from q8mjd.g_ring import GRingElt, abelian_parts, g_invert, is_nilpotent, make_nilpotent
from q8mjd.harness import generate_units, split_pairs
from q8mjd.jordan import (
    congruence_suite,
    frobenius_holds,
    in_V,
    is_non_semisimple,
    jordan_decompose,
    mjd_certificate,
    non_unit_example,
    non_unit_example_parts,
    normalize_to_V,
    p5_relations,
    remark_counterexample,
    remark_triple,
    side_conditions,
    verify_jordan_pair,
)

G = GRingElt.group_element
C = CyclicRingElt


def unipotent(p):
    nu = make_nilpotent(p)
    return GRingElt.one(p) + nu, nu


def test_non_semisimple_examples():
    u, _ = unipotent(5)
    assert is_non_semisimple(u)
    assert not is_non_semisimple(G(5, "a") * G(5, "z"), check_unit=False)
    assert not is_non_semisimple(GRingElt.central(bass_unit(5, 2, 4)))


def test_non_semisimple_needs_a_unit():
    with pytest.raises(NotAUnit):
        is_non_semisimple(GRingElt.one(3) * 2 - G(3, "a"))


def test_decompose_unipotent():
    u, nu = unipotent(5)
    pair = jordan_decompose(u)
    assert pair.u_s == GRingElt.one(5, "Q")
    assert pair.u_n == nu.coerce("Q")


def test_decompose_is_equivariant_under_bass_units():
    u, nu = unipotent(5)
    w = GRingElt.central(bass_unit(5, 2, 4))
    pair = jordan_decompose(w * u)
    assert pair.u_s == w.coerce("Q")
    assert pair.u_n == (w * nu).coerce("Q")


def test_decompose_conjugate():
    p = 5
    u, nu = unipotent(p)
    mu = G(p, "a") * make_nilpotent(p) * G(p, "az")
    v = G(p, "b", 2) * (GRingElt.one(p) + mu)
    v_inv = g_invert(v)
    pair = jordan_decompose(v * u * v_inv)
    assert pair.u_s == GRingElt.one(p, "Q")
    assert pair.u_n == (v * nu * v_inv).coerce("Q")


def test_decompose_rejects_semisimple():
    with pytest.raises(SemisimpleInput):
        jordan_decompose(GRingElt.one(5))


def test_normalize_examples():
    p = 5
    u, nu = unipotent(p)
    assert normalize_to_V(u) == (u, GRingElt.one(p))
    w0 = bass_unit(p, 2, 4)
    v, w = normalize_to_V(GRingElt.central(w0) * u)
    assert v == u and w == GRingElt.central(invert_unit(w0))
    v, w = normalize_to_V(G(p, "z") * u)
    assert v == u and w == G(p, "z")
    assert in_V(v)


def test_in_V_rejects():
    p = 5
    u, _ = unipotent(p)
    assert not in_V(G(p, "z") * u)
    assert not in_V(GRingElt.one(p))


def test_certificate_examples():
    u, _ = unipotent(11)
    cert = mjd_certificate(u)
    assert cert.passed
    assert all(F.is_zero() for F in (cert.F_a, cert.F_b, cert.F_c))


def test_certificate_with_nonzero_F_a():
    p = 5
    x, _ = split_pairs(p)[0]
    u, _ = unipotent(p)
    assert not abelian_parts(x)[1].is_zero()
    cert = mjd_certificate(x * u)
    assert not cert.F_a.is_zero()
    assert cert.passed == jordan_decompose(x * u).semisimple_is_integral()


def test_remark_triple():
    alpha, beta, gamma = remark_triple(5)
    t = C.t_power
    assert alpha == t(5, 1) + t(5, 4)
    assert beta == t(5, 2) + t(5, 3)
    # oracle: alpha^2 + beta^2 + gamma^2 computed over Z, then reduced
    total = alpha * alpha + beta * beta + gamma * gamma
    assert total.divisible_by(4)
    assert not any(x.divisible_by(2) for x in (alpha, beta, gamma))
    assert remark_counterexample(5).passed


@given(coeffs=st.lists(st.integers(0, 1), min_size=11, max_size=11), k=st.integers(0, 10))
def test_frobenius_on_random_elements(coeffs, k):
    assert frobenius_holds(C.from_list(11, coeffs), k)


def test_congruence_suite_needs_V():
    u, _ = unipotent(5)
    with pytest.raises(NotInV):
        congruence_suite(G(5, "z") * u)


def test_p5_relations_examples():
    u, _ = unipotent(5)
    assert p5_relations(u).passed
    w0 = GRingElt.central(bass_unit(5, 2, 4))
    v, _ = normalize_to_V(w0 * u)
    assert p5_relations(v).passed
    with pytest.raises(WrongPrime):
        p5_relations(unipotent(3)[0])


def test_non_unit_example():
    p = 5
    u = non_unit_example(p)
    assert u.augmentation() == 15
    with pytest.raises(NotAUnit):
        g_invert(u)
    parts = non_unit_example_parts(p)
    assert parts.u_s + parts.u_n == u.coerce("Q")
    assert is_nilpotent(parts.u_n) and not parts.u_n.is_zero()
    assert not parts.u_s.is_central()


@pytest.fixture(scope="module", params=[3, 5, 11])
def units(request):
    p = request.param
    return p, generate_units(p, 30, seed=7)


def test_generated_units_satisfy_every_property(units):
    p, batch = units
    for gu in batch:
        u = gu.u
        assert u.augmentation() == 1 and u * gu.inverse == GRingElt.one(p)
        pair = jordan_decompose(u)
        assert all(verify_jordan_pair(u, pair).values()), gu.recipe
        assert all(side_conditions(u).values()), gu.recipe
        v, w = normalize_to_V(u)
        assert in_V(v) and w.is_central() and w.augmentation() == 1
        cert = mjd_certificate(u)
        assert cert.passed == pair.semisimple_is_integral()
        assert congruence_suite(v).passed
        if p in (3, 11):
            assert cert.passed
        if p == 5:
            assert p5_relations(v).passed


def test_equivariance_and_inverse_identity(units):
    p, batch = units
    rng = random.Random(p)
    pool = [GRingElt.central(bass_unit(p, k, m)) for k, m in [(2, 2 * (p - 1))] if pow(k, m, p) == 1]
    pool += [GRingElt.central(C.t_power(p, 1)), G(p, "z")]
    for gu in batch[:10]:
        pair = jordan_decompose(gu.u)
        w = rng.choice(pool)
        moved = jordan_decompose(gu.u * w)
        wq = w.coerce("Q")
        assert moved.u_s == pair.u_s * wq and moved.u_n == pair.u_n * wq
        v, _ = normalize_to_V(gu.u)
        vp = jordan_decompose(v)
        # u^-1 = u_s^-1 - u_n, checked as u_s (u^-1 + u_n) = 1
        assert vp.u_s * (g_invert(v).coerce("Q") + vp.u_n) == GRingElt.one(p, "Q")


def test_split_units_are_central_with_nonzero_F_a():
    for p in (5, 11, 13):
        pairs = split_pairs(p)
        assert pairs
        for x, x_inv in pairs:
            assert x.is_central() and x * x_inv == GRingElt.one(p)
            assert not abelian_parts(x)[1].is_zero()


def test_p13_outcomes_are_recorded_only():
    outcomes = [mjd_certificate(gu.u).passed for gu in generate_units(13, 10, seed=3)]
    assert len(outcomes) == 10
