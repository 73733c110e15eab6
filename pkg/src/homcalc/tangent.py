"""Functionals on H, the dual Hom-Hopf algebra and quantum Hom-tangent spaces.

A functional is stored as its value vector ``(X(e_0), ..., X(e_{n-1}))``,
which are also its coordinates in the dual basis.  ``ᾱ(X) = X∘α⁻¹`` acts
on value vectors by the matrix ``(α⁻¹)^T``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as iproduct
from typing import Sequence

from . import exact as X
from .errors import AxiomFailure, NotInTangentSpace, SingularMatrix
from .exact import Fraction, Matrix, Vector
from .fodc import (
    FODC,
    FODCPresentation,
    F_of,
    ker_eps_basis,
    quotient_fodc,
    recover_ideal,
    structure_functionals,
)
from .homstruct import AxiomReport, HomHopfAlgebra, check_axioms, sweep, witness

Functional = Vector


def evaluate(x: Functional, h: Vector) -> Fraction:
    return X.dot(x, h)


def alpha_bar(h: HomHopfAlgebra, x: Functional, power: int = 1) -> Functional:
    """``ᾱ^power(X) = X∘α^(-power)``."""
    return tuple(evaluate(x, h.a(h.e(k), -power)) for k in range(h.dim))


def convolve(h: HomHopfAlgebra, x: Functional, y: Functional) -> Functional:
    """``(XY)(e_c) = X(c₁)Y(c₂)``."""
    return dual_hopf(h).mul(x, y)


def counit_functional(h: HomHopfAlgebra) -> Functional:
    return tuple(h.counit)


def bullet(h: HomHopfAlgebra, x: Functional, v: Vector) -> Vector:
    """``X•h = α²(h₁) X(α(h₂))``."""
    n = h.dim
    acc = [X.ZERO] * n
    for p, c in enumerate(h.delta(v)):
        if not c:
            continue
        a, b = divmod(p, n)
        s = c * evaluate(x, h.a(h.e(b)))
        if s:
            for k, y in enumerate(h.a(h.e(a), 2)):
                if y:
                    acc[k] += s * y
    return tuple(acc)


_DUAL_CACHE: dict = {}


def dual_hopf(h: HomHopfAlgebra) -> HomHopfAlgebra:
    """``H′`` with convolution, ``Δ(f)(a⊗b) = f(ab)``, ``ε(f) = f(1)``, ``S(f) = f∘S``, ``α°(f) = f∘α⁻¹``."""
    key = id(h)
    hit = _DUAL_CACHE.get(key)
    if hit is not None and hit[0] is h:
        return hit[1]
    n = h.dim
    mult = tuple(tuple(tuple(h.comult[c][a][b] for c in range(n)) for b in range(n)) for a in range(n))
    comult = tuple(tuple(tuple(h.mult[i][j][k] for j in range(n)) for i in range(n)) for k in range(n))
    d = HomHopfAlgebra(
        name=f"dual({h.name})",
        basis=tuple(f"d[{b}]" for b in h.basis),
        mult=mult,
        unit=tuple(h.counit),
        comult=comult,
        counit=tuple(h.unit),
        antipode=X.transpose(h.antipode),
        alpha=X.transpose(h.alpha_inv),
    )
    _DUAL_CACHE[key] = (h, d)
    return d


def coproduct(h: HomHopfAlgebra, x: Functional) -> Vector:
    """``Δ(X)`` as the value table ``(a, b) ↦ X(e_a e_b)`` on flat ``H⊗H``."""
    return dual_hopf(h).delta(x)


@dataclass(frozen=True)
class TangentSpace:
    """``T = {X : X(1) = 0, X(R) = 0}`` with dual bases of ``T`` and the coinvariants."""

    fodc: FODC
    ideal: tuple
    basis: tuple  # X_i as value vectors
    preimages: tuple  # h_k with ω(h_k) independent
    gram: Matrix  # gram[i][k] = <X_i, ω(h_k)>
    omega_basis: tuple  # ω_j with <X_i, ω_j> = δ_ij
    tau: Matrix  # column i = coordinates of ᾱ(X_i)
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def base(self) -> HomHopfAlgebra:
        return self.fodc.base

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, x: Functional) -> Vector:
        c = X.coordinates_in(x, list(self.basis))
        if c is None:
            raise NotInTangentSpace("functional is not in the tangent space", {"values": X.fmt_vector(x)})
        return c

    def contains(self, x: Functional) -> bool:
        return X.in_span(x, list(self.basis)) if self.basis else X.is_zero(x)

    def from_coords(self, c: Sequence) -> Functional:
        return X.lincomb(zip(c, self.basis), self.base.dim)

    def tau_apply(self, x: Functional, power: int = 1) -> Functional:
        return alpha_bar(self.base, x, power)

    @cached_property
    def functionals(self) -> dict:
        return structure_functionals(self.fodc, list(self.omega_basis))


def tangent_space(h: HomHopfAlgebra | FODC, r: FODCPresentation | Sequence | None = None) -> TangentSpace:
    """Tangent space of the calculus ``Ω¹(H)/H·ω(R)`` (or of a given calculus)."""
    if isinstance(h, FODC):
        f = h
        ideal = list(recover_ideal(f).ideal_basis)
    else:
        r = r if r is not None else FODCPresentation(())
        f = quotient_fodc(h, r)
        ideal = list(recover_ideal(f).ideal_basis)
    H = f.base
    n = H.dim
    constraints = [tuple(H.unit)] + ideal
    basis = X.kernel_basis(tuple(constraints))
    if len(basis) != len(ker_eps_basis(H)) - len(ideal):
        raise AxiomFailure("tangent space has the wrong dimension", {"dim": len(basis)})
    pre = list(f.coinv_preimages)
    gram = tuple(tuple(evaluate(x, H.a(u, -1)) for u in pre) for x in basis)
    t = len(basis)
    if len(pre) != t:
        raise SingularMatrix("pairing is degenerate", {"tangent_dim": t, "coinvariant_dim": len(pre)})
    ginv = X.invert(gram) if t else ()
    omegas = [f.omega(u) for u in pre]
    omega_basis = tuple(X.lincomb(((ginv[k][j], omegas[k]) for k in range(t)), f.dim) for j in range(t))
    tau_cols = []
    for x in basis:
        c = X.coordinates_in(alpha_bar(H, x), basis)
        if c is None:
            raise AxiomFailure("tangent space is not τ-stable", {"values": X.fmt_vector(x)})
        tau_cols.append(c)
    tau = X.from_columns(tau_cols, t) if t else ()
    return TangentSpace(f, tuple(ideal), tuple(basis), tuple(pre), gram, omega_basis, tau)


def pair(x: Functional, rho: Vector, f: FODC) -> Fraction:
    """``⟨X, Σ hᵢ·dgᵢ⟩ = Σ ε(hᵢ) X(gᵢ)``."""
    H, n = f.base, f.base.dim
    _require_tangent(f, x)
    if f.dim == 0:
        return X.ZERO
    m1 = f.m1_matrix()
    ell = tuple(H.eps(H.e(a)) * x[b] for a in range(n) for b in range(n))
    for v in X.kernel_basis(m1):
        if X.dot(ell, v):
            raise NotInTangentSpace("pairing is not well defined for this functional", {"kernel_vector": X.fmt_vector(v)})
    c = X.solve(m1, tuple(rho))
    if c is None:
        raise AxiomFailure("element not in H·dH", {"rho": X.fmt_vector(rho)})
    return X.dot(ell, c)


def _require_tangent(f: FODC, x: Functional) -> None:
    H = f.base
    if len(x) != H.dim:
        raise NotInTangentSpace(f"functional of length {len(x)}, expected {H.dim}")
    if evaluate(x, H.unit):
        raise NotInTangentSpace("X(1) != 0", {"X(1)": X.format_scalar(evaluate(x, H.unit))})
    for r in recover_ideal(f).ideal_basis:
        if evaluate(x, r):
            raise NotInTangentSpace("X does not vanish on R", {"r": X.fmt_vector(r)})


def gram_matrix(t: TangentSpace) -> Matrix:
    """``⟨X_i, ω_j⟩`` computed through the pairing, for the dual bases."""
    return tuple(tuple(pair(x, w, t.fodc) for w in t.omega_basis) for x in t.basis)


# -- identity sweeps ----------------------------------------------------------

def _readings(sf: dict) -> dict:
    """Both index placements: ``A`` as in the derivation, ``B`` with γ and f̄ transposed."""
    G, Gb = sf["gamma"], sf["gamma_bar"]

    def fbar(mats_h):
        return X.mat_mul(Gb, mats_h)

    return {
        "A": (G, lambda m: fbar(m)),
        "B": (X.transpose(G), lambda m: X.transpose(fbar(m))),
    }


def _first_failure(cases, lhs, rhs):
    for case in cases:
        left, right = lhs(*case), rhs(*case)
        if left != right:
            return witness({"indices": list(case)}, left, right)
    return None


def _record_readings(rep: AxiomReport, name: str, outcomes: dict) -> None:
    held = [k for k, w in outcomes.items() if w is None]
    wit = {f"reading_{k}": w for k, w in outcomes.items() if w is not None}
    if held:
        rep.add(name, True, wit or None, note=f"holds under reading {'+'.join(held)}")
    else:
        rep.add(name, False, wit, note="fails under every reading")


def verify_tangent_identities(f: FODC | TangentSpace, report: AxiomReport | None = None) -> AxiomReport:
    t = f if isinstance(f, TangentSpace) else tangent_space(f)
    f = t.fodc
    H, n, k = f.base, f.base.dim, t.dim
    rep = report or AxiomReport(f"{f.name} tangent identities")
    E = [H.e(i) for i in range(n)]
    D = dual_hopf(H)
    drep = check_axioms(D, "hopf")
    rep.add("dual_hopf_axioms", drep.passed, None if drep.passed else {"failures": [r.name for r in drep.failures()]})
    rep.add("tangent_dimension", k == len(ker_eps_basis(H)) - len(t.ideal), {"dim": k})
    sweep(rep, "tangent_kills_unit_and_ideal", [(i,) for i in range(k)],
          lambda i: tuple(evaluate(t.basis[i], v) for v in [tuple(H.unit)] + list(t.ideal)),
          lambda i: X.zeros(1 + len(t.ideal)))
    ok = k == 0 or X.rank(t.gram) == k
    rep.add("pairing_nondegenerate", ok, {"rank": X.rank(t.gram) if k else 0, "dim": k})
    sweep(rep, "dual_bases", [()], lambda: gram_matrix(t), lambda: X.identity(k))
    cases = list(iproduct(range(k), range(n)))
    sweep(rep, "pairing_omega", cases,
          lambda i, a: pair(t.basis[i], f.omega(E[a]), f),
          lambda i, a: evaluate(t.basis[i], H.a(E[a], -1)))
    sweep(rep, "pairing_h_dg", list(iproduct(range(k), range(n), range(n))),
          lambda i, a, b: pair(t.basis[i], f.lmul(E[a], f.diff(E[b])), f),
          lambda i, a, b: H.eps(E[a]) * t.basis[i][b])
    sweep(rep, "pairing_equivariant", list(iproduct(range(k), range(f.dim))),
          lambda i, w: pair(alpha_bar(H, t.basis[i]), f.g(f.basis_vec(w)), f),
          lambda i, w: pair(t.basis[i], f.basis_vec(w), f))
    sweep(rep, "counit_of_bullet", cases,
          lambda i, a: H.eps(bullet(H, t.basis[i], E[a])), lambda i, a: evaluate(t.basis[i], E[a]))
    sweep(rep, "d_from_tangent_basis", [(a,) for a in range(n)],
          lambda a: f.diff(E[a]),
          lambda a: X.lincomb(((X.ONE, f.lmul(bullet(H, t.basis[i], H.a(E[a], -2)), t.omega_basis[i]))
                               for i in range(k)), f.dim))
    if k == 0:
        for name in ("structure_functional_unit", "x_product_expansion", "coproduct_of_f", "coproduct_of_x"):
            rep.add(name, True, note="zero tangent space")
        return rep
    sf = t.functionals
    G = sf["gamma"]
    sweep(rep, "structure_functional_unit", [()], lambda: F_of(sf, H.unit), lambda: G)
    sweep(rep, "structure_functional_product", list(iproduct(range(n), repeat=2)),
          lambda a, b: F_of(sf, H.mul(E[a], E[b])),
          lambda a, b: X.mat_mul(X.mat_mul(sf["gamma_bar"], sf["F"][a]), F_of(sf, H.a(E[b]))))
    readings = _readings(sf)
    xs = t.basis
    fbar_tables = {name: [fb(sf["F"][c]) for c in range(n)] for name, (_, fb) in readings.items()}

    def x_expansion(name):
        Gm = readings[name][0]
        tab = fbar_tables[name]

        def rhs(a, b, l):
            s = H.eps(E[a]) * sum((Gm[i][l] * xs[i][b] for i in range(k)), X.ZERO)
            s += sum((xs[j][a] * Gm[kk][l] * tab[b][j][kk] for j in range(k) for kk in range(k)), X.ZERO)
            return s

        return _first_failure(list(iproduct(range(n), range(n), range(k))),
                              lambda a, b, l: evaluate(xs[l], H.mul(E[a], E[b])), rhs)

    _record_readings(rep, "x_product_expansion", {name: x_expansion(name) for name in readings})

    def f_values(i, j):
        return tuple(sf["F"][c][i][j] for c in range(n))

    def f_alpha_values(i, j):
        return tuple(F_of(sf, H.a(E[c]))[i][j] for c in range(n))

    def coproduct_f(name):
        tab = fbar_tables[name]
        transposed = name == "B"

        def rhs(i, j):
            acc = X.zeros(n * n)
            for l in range(k):
                left = tuple(tab[c][i][l] for c in range(n))
                right = f_alpha_values(j, l) if transposed else f_alpha_values(l, j)
                if transposed:
                    left = tuple(tab[c][l][i] for c in range(n))
                acc = X.add(acc, X.tensor(left, right))
            return acc

        return _first_failure(list(iproduct(range(k), repeat=2)),
                              lambda i, j: coproduct(H, f_values(i, j)), rhs)

    _record_readings(rep, "coproduct_of_f", {name: coproduct_f(name) for name in readings})

    eps = counit_functional(H)

    def coproduct_x(name):
        Gm = readings[name][0]
        tab = fbar_tables[name]

        def rhs(l):
            acc = X.zeros(n * n)
            for j in range(k):
                second = tuple(sum((Gm[kk][l] * tab[c][j][kk] for kk in range(k)), X.ZERO) for c in range(n))
                acc = X.add(acc, X.tensor(xs[j], second))
            second = X.lincomb(((Gm[i][l], xs[i]) for i in range(k)), n)
            return X.add(acc, X.tensor(eps, second))

        return _first_failure([(l,) for l in range(k)], lambda l: coproduct(H, xs[l]), rhs)

    _record_readings(rep, "coproduct_of_x", {name: coproduct_x(name) for name in readings})
    return rep
