import pytest
from hypothesis import given, strategies as st

from conftest import KEYS, algebra, h4, quotient, universal, zn
from homcalc import exact as X
from homcalc.errors import NotInTangentSpace
from homcalc.fodc import ker_eps_basis, quotient_fodc
from homcalc.homstruct import check_axioms
from homcalc.tangent import (
    alpha_bar,
    bullet,
    convolve,
    counit_functional,
    dual_hopf,
    evaluate,
    gram_matrix,
    pair,
    tangent_space,
    verify_tangent_identities,
)
from test_fodc import FIXTURES, calculus


def v(*xs):
    return tuple(X.Fraction(x) for x in xs)


def ts(key, ideal=()):
    return tangent_space(calculus(key, ideal))


# -- functionals -----------------------------------------------------------

def test_kz2_convolution_square():
    h = zn(2)
    x = v(0, 1)
    xx = convolve(h, x, x)
    assert evaluate(xx, h.e(1)) == 1
    assert evaluate(xx, h.unit) == 0


@pytest.mark.parametrize("key", KEYS)
def test_counit_is_hom_unit_for_convolution(key):
    h = algebra(key)
    eps = counit_functional(h)
    for i in range(h.dim):
        x = X.unit_vector(h.dim, i)
        assert convolve(h, eps, x) == alpha_bar(h, x) == convolve(h, x, eps)


def test_alpha_bar_is_precomposition_with_inverse():
    h = zn(3, 2)
    x = v(0, 1, 0)
    # α⁻¹(g²) = g, so ᾱX picks out g²
    assert alpha_bar(h, x) == v(0, 0, 1)
    assert alpha_bar(h, alpha_bar(h, x), -1) == x


def test_bullet_examples():
    h = zn(2)
    x = v(0, 1)
    assert bullet(h, x, h.e(1)) == h.e(1)
    assert X.is_zero(bullet(h, x, h.unit))


@pytest.mark.parametrize("key", KEYS)
def test_counit_bullet_is_alpha(key):
    h = algebra(key)
    eps = counit_functional(h)
    for i in range(h.dim):
        assert bullet(h, eps, h.e(i)) == h.a(h.e(i))


@given(st.sampled_from(KEYS), st.lists(st.integers(-3, 3), min_size=6, max_size=6), st.integers(0, 5))
def test_counit_of_bullet_is_evaluation(key, coeffs, i):
    h = algebra(key)
    x = tuple(X.Fraction(c) for c in coeffs[: h.dim])
    e = h.e(i % h.dim)
    assert h.eps(bullet(h, x, e)) == evaluate(x, e)


# -- the dual Hom-Hopf algebra --------------------------------------------

@pytest.mark.parametrize("key", KEYS)
def test_dual_passes_axioms(key):
    assert check_axioms(dual_hopf(algebra(key)), "hopf").passed


def test_dual_of_kz2():
    d = dual_hopf(zn(2))
    assert d.dim == 2
    dg = d.e(1)
    # Δ(δ_g) = δ_1⊗δ_g + δ_g⊗δ_1
    assert d.delta(dg) == v(0, 1, 1, 0)
    assert d.S(dg) == dg


@pytest.mark.parametrize("key", KEYS)
def test_double_dual_is_original(key):
    h = algebra(key)
    dd = dual_hopf(dual_hopf(h))
    for field in ("mult", "unit", "comult", "counit", "antipode", "alpha"):
        assert getattr(dd, field) == getattr(h, field)


# -- tangent spaces --------------------------------------------------------

def test_kz2_tangent_space():
    t = ts(("zn", 2))
    assert t.basis == (v(0, 1),)
    assert t.tau == ((1,),)


def test_h4_tangent_dimension():
    assert ts(("h4", -1)).dim == 3


def test_full_kernel_gives_zero_tangent_space():
    for h in (zn(3, 2), h4(1)):
        t = tangent_space(h, ker_eps_basis(h))
        assert t.dim == 0


@pytest.mark.parametrize("key,ideal", FIXTURES)
def test_tangent_kills_unit_and_ideal(key, ideal):
    t = ts(key, ideal)
    h = t.base
    assert t.dim == h.dim - 1 - len(ideal)
    for x in t.basis:
        assert evaluate(x, h.unit) == 0
        for r in ideal:
            assert evaluate(x, r) == 0
        assert t.contains(alpha_bar(h, x))


@pytest.mark.parametrize("key,ideal", FIXTURES)
def test_dual_bases(key, ideal):
    t = ts(key, ideal)
    assert gram_matrix(t) == X.identity(t.dim)
    assert X.rank(t.gram) == t.dim


# -- pairing ---------------------------------------------------------------

def test_kz2_pairing_values():
    f, h = universal(("zn", 2)), zn(2)
    g, x = h.e(1), v(0, 1)
    assert pair(x, f.lmul(h.unit, f.diff(g)), f) == 1
    assert pair(x, f.omega(g), f) == 1
    assert pair(x, f.omega(h.unit), f) == 0


@pytest.mark.parametrize("key,ideal", FIXTURES)
def test_pairing_formula(key, ideal):
    t = ts(key, ideal)
    f, h = t.fodc, t.base
    for x in t.basis:
        for a in range(h.dim):
            for b in range(h.dim):
                rho = f.lmul(h.e(a), f.diff(h.e(b)))
                assert pair(x, rho, f) == h.eps(h.e(a)) * evaluate(x, h.e(b))
            assert pair(x, f.omega(h.e(a)), f) == evaluate(x, h.a(h.e(a), -1))


@pytest.mark.parametrize("key,ideal", FIXTURES)
def test_pairing_equivariant(key, ideal):
    t = ts(key, ideal)
    f, h = t.fodc, t.base
    for x in t.basis:
        for j in range(f.dim):
            rho = f.basis_vec(j)
            assert pair(alpha_bar(h, x), f.g(rho), f) == pair(x, rho, f)


def test_pairing_rejects_non_tangent():
    f, h = universal(("zn", 2)), zn(2)
    with pytest.raises(NotInTangentSpace):
        pair(v(1, 0), f.omega(h.e(1)), f)
    with pytest.raises(NotInTangentSpace):
        pair(v(0, 1, 0), f.omega(h.e(1)), f)
    # x ↦ 1 does not vanish on R = span{x − gx}
    q = quotient(("h4", -1), (v(0, 0, 1, -1),))
    with pytest.raises(NotInTangentSpace):
        pair(v(0, 0, 1, 0), q.omega(h4(-1).e(2)), q)


def test_coords_rejects_non_tangent():
    t = ts(("zn", 2))
    with pytest.raises(NotInTangentSpace):
        t.coords(v(1, 1))
    assert t.coords(v(0, 3)) == v(3)


# -- the full identity sweep -----------------------------------------------

@pytest.mark.parametrize("key,ideal", FIXTURES)
def test_tangent_identities(key, ideal):
    rep = verify_tangent_identities(ts(key, ideal))
    assert rep.passed, [(r.name, r.witness) for r in rep.failures()]


def test_identity_report_names_and_reading():
    rep = verify_tangent_identities(ts(("h4", -1)))
    names = [r.name for r in rep.results]
    for expected in ("dual_hopf_axioms", "pairing_nondegenerate", "d_from_tangent_basis",
                     "x_product_expansion", "coproduct_of_f", "coproduct_of_x"):
        assert expected in names
    notes = " ".join(r.note or "" for r in rep.results)
    assert "reading A" in notes


def test_kz2_d_expansion():
    # dg = (X•g)·ω = g·ω(g)
    t = ts(("zn", 2))
    f, h = t.fodc, t.base
    g = h.e(1)
    (x,), (w,) = t.basis, t.omega_basis
    assert f.lmul(bullet(h, x, h.a(g, -2)), w) == f.diff(g) == f.lmul(g, f.omega(g))


def test_quotient_via_algebra_and_ideal():
    h = h4(-1)
    r = [v(1, -1, 0, 0), v(0, 0, 1, -1)]
    assert tangent_space(h, r).basis == tangent_space(quotient_fodc(h, r)).basis
