import math

import pytest
from hypothesis import given, strategies as st

from conftest import algebra, h4, zn
from homcalc import exact as X
from homcalc.errors import AxiomFailure, BadParams, DimensionMismatch, NotAutomorphism, UnknownName
from homcalc.homstruct import (
    LEVELS,
    HomHopfAlgebra,
    builtin,
    check_axioms,
    check_comodule_algebra,
    classical_group_algebra,
    classical_sweedler,
    mutate,
    regular_comodule,
    yau_twist,
)

TWISTS = [(n, k) for n in range(2, 7) for k in range(1, n) if math.gcd(n, k) == 1]

# (algebra key, field, index, value, first failing law); laws found by running the checker once
MUTATIONS = [
    (("h4", -1), "antipode", (3, 2), 1, "antipode_left"),
    (("zn", 2), "mult", (1, 1, 0), 2, "delta_multiplicative"),
    (("zn", 2), "unit", (1,), 1, "hom_unit_left"),
    (("zn", 2), "counit", (1,), 2, "hom_counit_left"),
    (("zn", 2), "comult", (1, 1, 1), 2, "hom_counit_left"),
    (("zn", 3, 2), "alpha", (0, 0), 2, "alpha_multiplicative"),
    (("zn", 3, 2), "mult", (1, 2, 0), 0, "alpha_multiplicative"),
    (("h4", -1), "mult", (2, 2, 0), 1, "hom_associativity"),
    (("h4", -1), "comult", (2, 2, 2), 1, "alpha_comultiplicative"),
    (("h4", -1), "alpha", (2, 2), 2, "alpha_multiplicative"),
    (("h4", -1), "counit", (2,), 1, "counit_alpha"),
    (("h4", -1), "unit", (1,), 1, "hom_unit_left"),
    (("zn", 4, 3), "antipode", (1, 1), 1, "antipode_left"),
    (("zn", 5, 2), "comult", (0, 0, 0), 0, "hom_counit_left"),
    (("h4", 2), "antipode", (2, 2), 1, "antipode_left"),
]


@pytest.mark.parametrize("n,k", TWISTS)
def test_group_algebra_twists_are_hom_hopf(n, k):
    assert check_axioms(zn(n, k), "hopf").passed


@pytest.mark.parametrize("lam", [-1, 1, 2, 3, "1/2"])
def test_sweedler_twists_are_hom_hopf(lam):
    assert check_axioms(h4(lam), "hopf").passed


def test_classical_inputs_pass():
    assert check_axioms(classical_group_algebra(3)).passed
    assert check_axioms(classical_sweedler()).passed


@pytest.mark.parametrize("key,field,index,value,law", MUTATIONS)
def test_mutation_fails_with_witness(key, field, index, value, law):
    rep = check_axioms(mutate(algebra(key), field, index, value))
    assert not rep.passed
    first = rep.failures()[0]
    assert first.name == law
    assert first.witness and "at" in first.witness


def test_mutation_witness_values():
    # S(x) replaced by gx: S(x₁)x₂ picks up 2gx where ε(x)1 = 0
    rep = check_axioms(mutate(h4(-1), "antipode", (3, 2), 1))
    w = rep.result("antipode_left").witness
    assert w == {"at": {"indices": [2]}, "lhs": ["0", "0", "0", "2"], "rhs": ["0", "0", "0", "0"]}


def test_report_lists_every_axiom_in_order():
    names = [r.name for r in check_axioms(h4(-1), "hopf").results]
    assert names == [
        "alpha_invertible", "alpha_multiplicative", "alpha_unit", "hom_associativity",
        "hom_unit_left", "hom_unit_right", "alpha_comultiplicative", "counit_alpha",
        "hom_coassociativity", "hom_counit_left", "hom_counit_right", "delta_multiplicative",
        "delta_unit", "counit_multiplicative", "counit_unit", "antipode_invertible",
        "antipode_left", "antipode_right", "antipode_alpha",
    ]


def test_levels_are_nested():
    counts = [len(check_axioms(h4(-1), lvl).results) for lvl in LEVELS]
    assert counts == sorted(counts)


def test_singular_alpha_reported_not_raised():
    h = zn(2)
    bad = HomHopfAlgebra(h.name, h.basis, h.mult, h.unit, h.comult, h.counit, h.antipode, X.zero_matrix(2, 2))
    rep = check_axioms(bad)
    assert rep.result("alpha_invertible").passed is False
    assert "SingularMatrix" in rep.result("alpha_invertible").witness
    assert rep.result("hom_counit_left").to_dict()["status"] == "skip"


def test_twisted_products():
    # H4 with α(x) = −x: x·g = α(xg) = α(−gx) = gx
    h = h4(-1)
    assert h.mul(h.e(2), h.e(1)) == h.e(3)
    # kZ3 with α(g) = g²: g·g = α(g²) = g⁴ = g
    k = zn(3, 2)
    assert k.mul(k.e(1), k.e(1)) == k.e(1)


def test_hom_unit_gives_alpha():
    for key in [("zn", 4, 3), ("h4", 2)]:
        h = algebra(key)
        for i in range(h.dim):
            assert h.mul(h.unit, h.e(i)) == h.a(h.e(i))


def test_yau_twist_round_trip():
    base = classical_sweedler()
    a = h4(3).alpha
    assert yau_twist(base, a).mult == h4(3).mult
    with pytest.raises(BadParams):
        yau_twist(h4(3), a)


def test_yau_twist_rejects_non_automorphism():
    base = classical_group_algebra(3)
    with pytest.raises(NotAutomorphism):
        yau_twist(base, X.mat([[1, 0, 0], [0, 1, 0], [0, 1, 1]]))


def test_yau_twist_rejects_non_hopf_input():
    broken = mutate(classical_group_algebra(2), "counit", (1,), 2)
    with pytest.raises(AxiomFailure):
        yau_twist(broken, X.identity(2))


def test_builtin_catalog():
    assert builtin("group_algebra_Zn", n="4", k="3").name == "kZ4[g->g^3]"
    assert builtin("sweedler_h4", λ="-1").name == "H4[x->-1x]"
    with pytest.raises(UnknownName):
        builtin("quantum_sl2")
    with pytest.raises(BadParams):
        builtin("group_algebra_Zn", n=4, k=2)
    with pytest.raises(BadParams):
        builtin("group_algebra_Zn", q=3)


def test_dimension_validation():
    h = zn(2)
    with pytest.raises(DimensionMismatch):
        HomHopfAlgebra(h.name, h.basis, h.mult, (1,), h.comult, h.counit, h.antipode, h.alpha)


def test_regular_comodule_algebra():
    for key in [("zn", 3, 2), ("h4", -1)]:
        assert check_comodule_algebra(regular_comodule(algebra(key))).passed


@given(st.sampled_from([("zn", 4, 3), ("h4", -1), ("h4", 2)]), st.data())
def test_alpha_is_bialgebra_map_on_random_vectors(key, data):
    h = algebra(key)
    coeffs = st.lists(st.integers(-3, 3), min_size=h.dim, max_size=h.dim).map(X.vec)
    u, v = data.draw(coeffs), data.draw(coeffs)
    assert h.a(h.mul(u, v)) == h.mul(h.a(u), h.a(v))
    assert h.delta(h.a(u)) == h.map2(h.a, h.a, h.delta(u))
    assert h.eps(h.a(u)) == h.eps(u)
    assert h.S(h.a(u)) == h.a(h.S(u))


@given(st.sampled_from([("zn", 3, 2), ("h4", -1)]), st.data())
def test_hom_associativity_on_random_vectors(key, data):
    h = algebra(key)
    coeffs = st.lists(st.integers(-2, 2), min_size=h.dim, max_size=h.dim).map(X.vec)
    a, b, c = (data.draw(coeffs) for _ in range(3))
    assert h.mul(h.a(a), h.mul(b, c)) == h.mul(h.mul(a, b), h.a(c))
