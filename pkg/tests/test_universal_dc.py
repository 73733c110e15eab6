import random

import pytest
from hypothesis import given, strategies as st

from conftest import KEYS, algebra, h4, zn
from homcalc import exact as X
from homcalc.errors import DegreeCapExceeded, DimensionMismatch
from homcalc.homstruct import AxiomReport, mutate
from homcalc.universal_dc import (
    DEFAULT_CAP,
    GradedElement,
    UniversalCalculus,
    check_bimodule,
    check_d_squared,
    check_derivative_of_monomials,
    check_leibniz,
    check_omega1_kernel,
    check_right_action,
    d0,
    d_graded,
    default_cap,
    left_mult,
    product,
    random_element,
    random_scalar,
    right_mult,
    verify_calculus,
)


def calc(key, cap=4):
    return UniversalCalculus(algebra(key), cap)


def elem(degree, *entries):
    return GradedElement(degree, {tuple(k): X.Fraction(c) for k, c in entries})


# -- the differential ------------------------------------------------------

def test_d_of_unit_is_zero():
    for key in KEYS:
        c = calc(key)
        assert d0(c, c.alg.unit).is_zero()


def test_d_of_g_untwisted():
    c = calc(("zn", 2))
    assert d0(c, c.e(1)) == elem(1, ((0, 0), 1))


def test_d_of_g_twisted_uses_inverse_alpha():
    # Ā basis of kZ3 is (g~, g^2~); α⁻¹(g) = g²
    c = calc(("zn", 3, 2))
    assert c.abar.labels(c.alg.basis) == ["g~", "g^2~"]
    assert d0(c, c.e(1)) == elem(1, ((0, 1), 1))


def test_d_graded_on_scalars_matches_d0():
    for key in KEYS:
        c = calc(key)
        for i in range(c.n):
            assert d_graded(c, c.scalar(c.e(i))) == d0(c, c.e(i))


def test_d_squared_of_dg():
    c = calc(("zn", 2))
    assert d_graded(c, d0(c, c.e(1))).is_zero()


def test_d_of_g_dg():
    c = calc(("zn", 2))
    g = c.e(1)
    assert d_graded(c, c.word(g, [g])) == elem(2, ((0, 0, 0), 1))


@pytest.mark.parametrize("key", KEYS)
def test_d_squared_vanishes_on_bases(key):
    rep = AxiomReport("t")
    check_d_squared(calc(key), rep)
    assert rep.passed


@pytest.mark.parametrize("key", KEYS)
def test_d_commutes_with_gamma(key):
    c = calc(key, 3)
    for n in range(3):
        for w in c.basis(n):
            assert c.d(c.gamma(w)) == c.gamma(c.d(w))


# -- bimodule structure ----------------------------------------------------

def test_left_mult_by_unit_is_gamma():
    for key in KEYS:
        c = calc(key)
        rng = random.Random(3)
        for n in range(4):
            w = random_element(c, n, rng)
            assert left_mult(c, c.alg.unit, w) == c.gamma(w)
            assert right_mult(c, w, c.alg.unit) == c.gamma(w)


def test_left_mult_untwisted():
    c = calc(("zn", 2))
    g = c.e(1)
    assert left_mult(c, g, c.word(c.alg.unit, [g])) == elem(1, ((1, 0), 1))


def test_left_mult_twisted():
    # g·(1⊗ḡ) = (α⁻¹(g)·1)⊗α(g)‾ and the Hom-unit gives α⁻¹(g)·1 = g
    c = calc(("zn", 3, 2))
    g = c.e(1)
    assert left_mult(c, g, c.word(c.alg.unit, [g])) == elem(1, ((1, 1), 1))


def test_right_mult_degree_zero_is_product():
    for key in KEYS:
        c = calc(key)
        for i in range(c.n):
            for j in range(c.n):
                assert right_mult(c, c.scalar(c.e(i)), c.e(j)) == c.scalar(c.alg.mul(c.e(i), c.e(j)))


def test_right_mult_dg_times_g():
    c = calc(("zn", 2))
    g = c.e(1)
    assert right_mult(c, d0(c, g), g) == elem(1, ((1, 0), -1))


@pytest.mark.parametrize("key", KEYS)
def test_right_action_closed_forms_match_induction(key):
    rep = AxiomReport("t")
    check_right_action(calc(key), rep, samples=20)
    assert rep.passed
    assert [r.name for r in rep.results] == [f"right_action_closed_form_deg{n}" for n in range(1, 5)]


@pytest.mark.parametrize("key", KEYS)
def test_bimodule_laws(key):
    rep = AxiomReport("t")
    check_bimodule(calc(key), rep, samples=5)
    assert rep.passed


def test_hom_bimodule_compatibility_sampled():
    c = calc(("h4", 2))
    rng = random.Random(11)
    for _ in range(10):
        for n in range(4):
            w, a, b = random_element(c, n, rng), random_scalar(c, rng), random_scalar(c, rng)
            lhs = left_mult(c, c.a(a), right_mult(c, w, b))
            rhs = right_mult(c, left_mult(c, a, w), c.a(b))
            assert lhs == rhs


# -- product ---------------------------------------------------------------

def test_product_degree_zero():
    c = calc(("h4", -1))
    for i in range(c.n):
        for j in range(c.n):
            assert product(c, c.scalar(c.e(i)), c.scalar(c.e(j))) == c.scalar(c.alg.mul(c.e(i), c.e(j)))


def test_product_dg_dg():
    c = calc(("zn", 2))
    dg = d0(c, c.e(1))
    assert product(c, dg, dg) == elem(2, ((0, 0, 0), 1))


def test_product_with_unit_is_gamma():
    for key in KEYS:
        c = calc(key)
        rng = random.Random(5)
        one = c.scalar(c.alg.unit)
        for n in range(4):
            w = random_element(c, n, rng)
            assert product(c, w, one) == c.gamma(w)


def test_product_degree_is_additive():
    c = calc(("h4", 1))
    rng = random.Random(2)
    for n in range(3):
        for k in range(3 - n):
            w, v = random_element(c, n, rng), random_element(c, k, rng)
            assert product(c, w, v).degree == n + k


@pytest.mark.parametrize("key", KEYS)
def test_graded_leibniz(key):
    rep = AxiomReport("t")
    check_leibniz(calc(key, 3), rep)
    assert rep.passed


@pytest.mark.parametrize("key", KEYS)
def test_derivative_of_monomials(key):
    rep = AxiomReport("t")
    check_derivative_of_monomials(calc(key), rep)
    assert rep.passed


@pytest.mark.parametrize("key", KEYS)
def test_first_forms_are_kernel_of_multiplication(key):
    rep = AxiomReport("t")
    check_omega1_kernel(calc(key), rep)
    assert rep.passed


# -- failure detection -----------------------------------------------------

def test_corrupted_algebra_breaks_the_calculus():
    # a broken product no longer satisfies the bimodule laws
    bad = mutate(h4(-1), "mult", (2, 2, 0), 1)
    rep = verify_calculus(bad.algebra(), 3, samples=8)
    assert not rep.passed
    failed = rep.failures()[0]
    assert failed.witness is not None


def test_verify_calculus_passes():
    rep = verify_calculus(zn(3, 2).algebra(), 3, samples=8)
    assert rep.passed


# -- cap and validation ----------------------------------------------------

def test_degree_cap_enforced():
    c = calc(("zn", 2), 2)
    dg = d0(c, c.e(1))
    ddg = product(c, dg, dg)
    with pytest.raises(DegreeCapExceeded):
        d_graded(c, ddg)
    with pytest.raises(DegreeCapExceeded):
        product(c, ddg, dg)
    with pytest.raises(DegreeCapExceeded):
        c.basis(3)


def test_cap_below_two_rejected():
    with pytest.raises(DegreeCapExceeded):
        verify_calculus(zn(2).algebra(), 1)


def test_cap_from_environment(monkeypatch):
    monkeypatch.delenv("HOMCALC_MAX_DEGREE", raising=False)
    assert default_cap() == DEFAULT_CAP == 4
    monkeypatch.setenv("HOMCALC_MAX_DEGREE", "6")
    assert default_cap() == 6
    assert UniversalCalculus(zn(2).algebra()).cap == 6
    monkeypatch.setenv("HOMCALC_MAX_DEGREE", "junk")
    assert default_cap() == DEFAULT_CAP


def test_degree_and_key_length_must_agree():
    with pytest.raises(DimensionMismatch):
        GradedElement(2, {(0, 0): X.ONE})


def test_from_coords_round_trip():
    c = calc(("zn", 3, 2))
    rng = random.Random(7)
    for n in range(3):
        w = random_element(c, n, rng)
        assert c.from_coords(n, w.coords(c.n, c.m)) == w
    with pytest.raises(DimensionMismatch):
        c.from_coords(1, [0] * 5)


# -- properties ------------------------------------------------------------

@given(st.sampled_from(KEYS), st.integers(0, 2), st.integers(0, 10_000))
def test_d_squared_on_random_forms(key, n, seed):
    c = calc(key)
    w = random_element(c, n, random.Random(seed))
    assert c.d(c.d(w)).is_zero()


@given(st.sampled_from(KEYS), st.integers(0, 10_000))
def test_d_is_linear(key, seed):
    c = calc(key)
    rng = random.Random(seed)
    w, v = random_element(c, 1, rng), random_element(c, 1, rng)
    assert c.d(w + v) == c.d(w) + c.d(v)
    assert c.d(w.scaled(3)) == c.d(w).scaled(3)


@given(st.sampled_from(KEYS), st.integers(0, 1), st.integers(0, 1), st.integers(0, 10_000))
def test_leibniz_on_random_forms(key, n, k, seed):
    c = calc(key)
    rng = random.Random(seed)
    w, v = random_element(c, n, rng), random_element(c, k, rng)
    second = product(c, w, c.d(v))
    rhs = product(c, c.d(w), v) + (second if n % 2 == 0 else -second)
    assert c.d(product(c, w, v)) == rhs
