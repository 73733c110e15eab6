"""First-order differential calculi over a monoidal Hom-Hopf algebra.

A calculus ``Γ`` is stored by its action matrices: ``left[i]`` is left
multiplication by ``e_i`` on ``Γ``, ``right[i]`` right multiplication by
``e_i``, ``d`` the differential ``H → Γ`` and ``gamma`` the automorphism.
All matrices use the column convention of :mod:`homcalc.exact`.

The universal calculus is ``H ⊗ ker ε``: the basis vector ``i*m + j`` is
``e_i ⊗ k_j`` where ``k_j`` runs over the echelon basis of ``ker ε``; the
element ``g ⊗ u`` is ``g·ω(u)``.  Quotients by a right Hom-ideal ``R`` are
computed with the complement of ``N = H ⊗ R`` spanned by non-pivot
coordinates, so every derived matrix is deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as iproduct
from typing import Sequence

from . import exact as X
from .errors import (
    AxiomFailure,
    DimensionMismatch,
    NotAlphaStable,
    NotInKerEps,
    NotLeftCovariant,
    NotRightCovariant,
    NotRightHomIdeal,
)
from .exact import Fraction, Matrix, Vector
from .homstruct import AxiomReport, HomHopfAlgebra, check_axioms, sweep, witness


@dataclass(frozen=True)
class FODCPresentation:
    """A right Hom-ideal ``R ⊆ ker ε`` given by spanning vectors."""

    ideal_basis: tuple = ()

    def basis(self, n: int) -> list[Vector]:
        for v in self.ideal_basis:
            if len(v) != n:
                raise DimensionMismatch(f"ideal vector of length {len(v)}, expected {n}")
        return X.echelon_basis([X.vec(v) for v in self.ideal_basis], n)


def ker_eps_basis(h: HomHopfAlgebra) -> list[Vector]:
    return X.kernel_basis((h.counit,))


def validate_ideal(h: HomHopfAlgebra, r: FODCPresentation) -> list[Vector]:
    """Echelon basis of ``R`` after checking it is an α-stable right Hom-ideal in ``ker ε``."""
    n = h.dim
    basis = r.basis(n)
    for v in basis:
        if h.eps(v):
            raise NotInKerEps("ideal vector outside ker ε", {"vector": X.fmt_vector(v), "eps": X.format_scalar(h.eps(v))})
    for v in basis:
        for power in (1, -1):
            img = h.a(v, power)
            if not X.in_span(img, basis):
                raise NotAlphaStable(
                    "ideal is not stable under alpha", {"vector": X.fmt_vector(v), "power": power, "image": X.fmt_vector(img)}
                )
    for v in basis:
        for j in range(n):
            prod = h.mul(v, h.e(j))
            if not X.in_span(prod, basis):
                raise NotRightHomIdeal(
                    "R·H is not contained in R",
                    {"vector": X.fmt_vector(v), "by": h.basis[j], "product": X.fmt_vector(prod)},
                )
    return basis


@dataclass(frozen=True)
class FODC:
    base: HomHopfAlgebra
    dim: int
    gamma: Matrix
    left: tuple  # left[i]: dim×dim matrix of e_i·(−)
    right: tuple  # right[i]: dim×dim matrix of (−)·e_i
    d: Matrix  # dim × base.dim
    name: str = "calculus"
    labels: tuple = ()
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        n = self.base.dim
        if len(self.left) != n or len(self.right) != n:
            raise DimensionMismatch(f"need {n} action matrices per side")
        for m in list(self.left) + list(self.right) + [self.gamma]:
            if self.dim and X.shape(m) != (self.dim, self.dim):
                raise DimensionMismatch(f"action matrices must be {self.dim}x{self.dim}")
        if X.shape(self.d) != (self.dim, n) and self.dim:
            raise DimensionMismatch(f"d must be {self.dim}x{n}")

    # -- elementary operations -------------------------------------------

    def zero(self) -> Vector:
        return X.zeros(self.dim)

    def basis_vec(self, j: int) -> Vector:
        return X.unit_vector(self.dim, j)

    def lmul(self, h: Vector, w: Vector) -> Vector:
        return X.lincomb(((c, X.mat_vec(self.left[i], w)) for i, c in enumerate(h) if c), self.dim)

    def rmul(self, w: Vector, h: Vector) -> Vector:
        return X.lincomb(((c, X.mat_vec(self.right[i], w)) for i, c in enumerate(h) if c), self.dim)

    def diff(self, h: Vector) -> Vector:
        if not self.dim:
            return ()
        return X.mat_vec(self.d, h)

    def g(self, w: Vector, power: int = 1) -> Vector:
        m = self.gamma if power >= 0 else self.gamma_inv
        for _ in range(abs(power)):
            w = X.mat_vec(m, w)
        return w

    @cached_property
    def gamma_inv(self) -> Matrix:
        return X.invert(self.gamma) if self.dim else ()

    def omega(self, h: Vector) -> Vector:
        """``ω(h) = S(h₁)·dh₂``."""
        H, n = self.base, self.base.dim
        acc = [X.ZERO] * self.dim
        for p, c in enumerate(H.delta(h)):
            if not c:
                continue
            a, b = divmod(p, n)
            v = self.lmul(H.S(H.e(a)), self.diff(H.e(b)))
            for k, x in enumerate(v):
                if x:
                    acc[k] += c * x
        return tuple(acc)

    @cached_property
    def omega_matrix(self) -> Matrix:
        n = self.base.dim
        return X.from_columns([self.omega(self.base.e(i)) for i in range(n)], self.dim)

    @cached_property
    def coinv_preimages(self) -> list[Vector]:
        """Vectors ``u`` of the echelon ``ker ε`` basis whose ``ω(u)`` are independent."""
        chosen, images = [], []
        for u in ker_eps_basis(self.base):
            w = self.omega(u)
            if X.rank(images + [w]) > len(images):
                chosen.append(u)
                images.append(w)
        return chosen

    @cached_property
    def coinv_basis(self) -> list[Vector]:
        return [self.omega(u) for u in self.coinv_preimages]

    # -- covariance data -------------------------------------------------

    def m1_matrix(self) -> Matrix:
        """``(a, b) ↦ a·db`` on flat ``H⊗H``."""
        n = self.base.dim
        cols = [self.lmul(self.base.e(a), self.diff(self.base.e(b))) for a in range(n) for b in range(n)]
        return X.from_columns(cols, self.dim)

    def m2_left_matrix(self) -> Matrix:
        """``(a, b) ↦ Σ a₁b₁ ⊗ a₂·db₂`` into flat ``H⊗Γ``."""
        H, n = self.base, self.base.dim
        cols = []
        for a in range(n):
            da = H.delta(H.e(a))
            for b in range(n):
                db = H.delta(H.e(b))
                acc = [X.ZERO] * (n * self.dim)
                for p, x in enumerate(da):
                    if not x:
                        continue
                    a1, a2 = divmod(p, n)
                    for q, y in enumerate(db):
                        if not y:
                            continue
                        b1, b2 = divmod(q, n)
                        left = H.mul(H.e(a1), H.e(b1))
                        right = self.lmul(H.e(a2), self.diff(H.e(b2)))
                        _add_tensor(acc, x * y, left, right)
                cols.append(tuple(acc))
        return X.from_columns(cols, n * self.dim)

    def m2_right_matrix(self) -> Matrix:
        """``(a, b) ↦ Σ a₁·db₁ ⊗ a₂b₂`` into flat ``Γ⊗H``."""
        H, n = self.base, self.base.dim
        cols = []
        for a in range(n):
            da = H.delta(H.e(a))
            for b in range(n):
                db = H.delta(H.e(b))
                acc = [X.ZERO] * (n * self.dim)
                for p, x in enumerate(da):
                    if not x:
                        continue
                    a1, a2 = divmod(p, n)
                    for q, y in enumerate(db):
                        if not y:
                            continue
                        b1, b2 = divmod(q, n)
                        left = self.lmul(H.e(a1), self.diff(H.e(b1)))
                        right = H.mul(H.e(a2), H.e(b2))
                        _add_tensor(acc, x * y, left, right)
                cols.append(tuple(acc))
        return X.from_columns(cols, n * self.dim)

    def _coaction(self, m2: Matrix, side: str) -> Matrix | None:
        """``m2 ∘ m1⁻¹`` on a basis of ``Γ`` drawn from the columns of ``m1``; None if ill-defined."""
        m1 = self.m1_matrix()
        if self.dim == 0:
            return ()
        kernel = X.kernel_basis(m1)
        for v in kernel:
            if not X.is_zero(X.mat_vec(m2, v)):
                return None
        cols, chosen = [], []
        for c in range(len(m1[0])):
            col = X.column(m1, c)
            if X.rank(chosen + [col]) > len(chosen):
                chosen.append(col)
                cols.append(c)
            if len(chosen) == self.dim:
                break
        if len(chosen) < self.dim:
            return None
        inv = X.invert(X.from_columns(chosen, self.dim))
        sel = tuple(tuple(row[c] for c in cols) for row in m2)
        return X.mat_mul(sel, inv)

    @cached_property
    def phi_left(self) -> Matrix | None:
        return self._coaction(self.m2_left_matrix(), "left")

    @cached_property
    def phi_right(self) -> Matrix | None:
        return self._coaction(self.m2_right_matrix(), "right")

    def phi(self, w: Vector) -> Vector:
        if self.phi_left is None:
            raise NotLeftCovariant("calculus is not left-covariant")
        return X.mat_vec(self.phi_left, w) if self.dim else ()

    def phi_r(self, w: Vector) -> Vector:
        if self.phi_right is None:
            raise NotRightCovariant("calculus is not right-covariant")
        return X.mat_vec(self.phi_right, w) if self.dim else ()

    def pl_project(self, rho: Vector) -> Vector:
        """``P_L(ρ) = S(ρ₍₋₁₎)ρ₍₀₎``."""
        H, n = self.base, self.base.dim
        acc = [X.ZERO] * self.dim
        for p, c in enumerate(self.phi(rho)):
            if c:
                i, j = divmod(p, self.dim)
                for k, x in enumerate(self.lmul(H.S(H.e(i)), self.basis_vec(j))):
                    if x:
                        acc[k] += c * x
        return tuple(acc)

    def pr_project(self, rho: Vector) -> Vector:
        """``P_R(ρ) = ρ₍₀₎·S(ρ₍₁₎)``."""
        H, n = self.base, self.base.dim
        acc = [X.ZERO] * self.dim
        for p, c in enumerate(self.phi_r(rho)):
            if c:
                j, i = divmod(p, n)
                for k, x in enumerate(self.rmul(self.basis_vec(j), H.S(H.e(i)))):
                    if x:
                        acc[k] += c * x
        return tuple(acc)

    def eta(self, h: Vector) -> Vector:
        """``η(h) = dh₁·S(h₂)``."""
        if self.phi_right is None:
            raise NotRightCovariant("calculus is not right-covariant")
        H, n = self.base, self.base.dim
        acc = [X.ZERO] * self.dim
        for p, c in enumerate(H.delta(h)):
            if c:
                a, b = divmod(p, n)
                for k, x in enumerate(self.rmul(self.diff(H.e(a)), H.S(H.e(b)))):
                    if x:
                        acc[k] += c * x
        return tuple(acc)

    def triangle(self, w: Vector, h: Vector) -> Vector:
        """Right action on coinvariants: ``w ⊲ h = P_L(w·h)``."""
        return self.pl_project(self.rmul(w, h))

    def summary(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "coinvariant_dim": len(self.coinv_basis),
        }


def _add_tensor(acc: list, c: Fraction, left: Sequence, right: Sequence) -> None:
    m = len(right)
    for i, x in enumerate(left):
        if x:
            for j, y in enumerate(right):
                if y:
                    acc[i * m + j] += c * x * y


# -- construction -----------------------------------------------------------

def universal_fodc(h: HomHopfAlgebra, check: bool = True) -> FODC:
    """``Ω¹(H) = H ⊗ ker ε`` with ``d(h) = h₁ ⊗ (h₂ − ε(h₂)1)``."""
    if check:
        rep = check_axioms(h, "hopf")
        if not rep.passed:
            raise AxiomFailure(f"{h.name} is not a Hom-Hopf algebra", rep.to_dict())
    n = h.dim
    kb = ker_eps_basis(h)
    m = len(kb)
    pivots = [next(i for i, c in enumerate(k) if c) for k in kb]

    def kcoords(u: Vector) -> list:
        # echelon basis: coordinate r is the value at pivot r
        return [u[p] for p in pivots]

    def pack(g: Vector, u: Vector) -> Vector:
        return X.tensor(g, tuple(kcoords(u)))

    def bar(u: Vector) -> Vector:
        return X.sub(u, X.scale(h.eps(u), h.unit))

    dim = n * m
    basis = [(i, j) for i in range(n) for j in range(m)]
    gamma_cols = [pack(h.a(h.e(i)), h.a(kb[j])) for i, j in basis]
    left, right = [], []
    for t in range(n):
        et = h.e(t)
        left.append(X.from_columns([pack(h.mul(h.a(et, -1), h.e(i)), h.a(kb[j])) for i, j in basis], dim))
        dt = h.delta(et)
        cols = []
        for i, j in basis:
            acc = [X.ZERO] * dim
            for p, c in enumerate(dt):
                if c:
                    t1, t2 = divmod(p, n)
                    v = pack(h.mul(h.e(i), h.e(t1)), h.mul(kb[j], h.e(t2)))
                    for q, x in enumerate(v):
                        if x:
                            acc[q] += c * x
            cols.append(tuple(acc))
        right.append(X.from_columns(cols, dim))
    dcols = []
    for s in range(n):
        acc = [X.ZERO] * dim
        for p, c in enumerate(h.delta(h.e(s))):
            if c:
                s1, s2 = divmod(p, n)
                for q, x in enumerate(pack(h.e(s1), bar(h.e(s2)))):
                    if x:
                        acc[q] += c * x
        dcols.append(tuple(acc))
    labels = tuple(f"{h.basis[i]}*w({_vec_label(h, kb[j])})" for i, j in basis)
    return FODC(
        base=h,
        dim=dim,
        gamma=X.from_columns(gamma_cols, dim),
        left=tuple(left),
        right=tuple(right),
        d=X.from_columns(dcols, dim),
        name=f"universal({h.name})",
        labels=labels,
        meta={"ker_eps": kb, "ideal": []},
    )


def _vec_label(h: HomHopfAlgebra, v: Vector) -> str:
    parts = []
    for i, c in enumerate(v):
        if not c:
            continue
        s = X.format_scalar(c)
        if c == 1:
            term = h.basis[i]
        elif c == -1:
            term = f"-{h.basis[i]}"
        else:
            term = f"{s}{h.basis[i]}"
        parts.append(term)
    return "+".join(parts).replace("+-", "-") if parts else "0"


def quotient_by(f: FODC, sub: Sequence[Vector], name: str | None = None, meta: dict | None = None) -> FODC:
    """``Γ / N`` for a subbimodule ``N`` given by spanning vectors (complement by echelon order)."""
    rows, pivots = X.rref(list(sub), f.dim)
    keep = [c for c in range(f.dim) if c not in set(pivots)]
    q = len(keep)

    def proj(v: Vector) -> Vector:
        w = list(v)
        for r, p in enumerate(pivots):
            c = w[p]
            if c:
                w = [x - c * y for x, y in zip(w, rows[r])]
        return tuple(w[c] for c in keep)

    def induced(m: Matrix) -> Matrix:
        return X.from_columns([proj(X.column(m, c)) for c in keep], q) if q else ()

    n = f.base.dim
    d = X.from_columns([proj(X.column(f.d, s)) for s in range(n)], q) if q else ()
    return FODC(
        base=f.base,
        dim=q,
        gamma=induced(f.gamma),
        left=tuple(induced(m) for m in f.left),
        right=tuple(induced(m) for m in f.right),
        d=d,
        name=name or f"{f.name}/N",
        labels=tuple(f.labels[c] for c in keep) if f.labels else (),
        meta=dict(meta or {}, parent=f.name, kept=keep),
    )


def quotient_fodc(h: HomHopfAlgebra, r: FODCPresentation | Sequence, check: bool = True) -> FODC:
    """``Ω¹(H)/N`` with ``N = H·ω(R) = H ⊗ R``."""
    if not isinstance(r, FODCPresentation):
        r = FODCPresentation(tuple(tuple(v) for v in r))
    basis = validate_ideal(h, r)
    u = universal_fodc(h, check=check)
    if not basis:
        return u
    sub = [u.lmul(h.e(i), u.omega(v)) for i in range(h.dim) for v in basis]
    return quotient_by(u, sub, name=f"quotient({h.name}, dim R={len(basis)})", meta={"ideal": basis})


def omega(f: FODC, h: Vector) -> Vector:
    return f.omega(h)


def pl_project(f: FODC, rho: Vector) -> Vector:
    return f.pl_project(rho)


def recover_ideal(f: FODC) -> FODCPresentation:
    """``R_Γ = {h ∈ ker ε : ω(h) = 0}`` as an echelon basis."""
    if f.phi_left is None:
        raise NotLeftCovariant("calculus is not left-covariant")
    kb = ker_eps_basis(f.base)
    if not kb:
        return FODCPresentation(())
    if f.dim == 0:
        return FODCPresentation(tuple(kb))
    images = X.from_columns([f.omega(u) for u in kb], f.dim)
    combos = X.kernel_basis(images)
    vecs = [X.lincomb(zip(c, kb), f.base.dim) for c in combos]
    return FODCPresentation(tuple(X.echelon_basis(vecs, f.base.dim)))


def structure_functionals(f: FODC, basis: Sequence[Vector] | None = None) -> dict:
    """Matrices of ``ω_i ⊲ e_k`` and of ``γ`` in a coinvariant basis.

    Returns ``{"F": [F(e_0), ...], "gamma": Γ, "gamma_bar": Γ⁻¹}`` with the
    row convention ``ω_i ⊲ h = Σ_j F(h)[i][j] ω_j`` and ``γ(ω_i) = Σ_j Γ[i][j] ω_j``.
    """
    basis = list(f.coinv_basis if basis is None else basis)
    t = len(basis)
    n = f.base.dim

    def coords(w: Vector) -> Vector:
        c = X.coordinates_in(w, basis)
        if c is None:
            raise AxiomFailure("image left the coinvariant subspace", {"vector": X.fmt_vector(w)})
        return c

    if t == 0:
        return {"F": [() for _ in range(n)], "gamma": (), "gamma_bar": ()}
    F = [tuple(coords(f.triangle(w, f.base.e(k))) for w in basis) for k in range(n)]
    G = tuple(coords(f.g(w)) for w in basis)
    return {"F": F, "gamma": G, "gamma_bar": X.invert(G)}


def F_of(sf: dict, h: Vector) -> Matrix:
    """``F(h)`` for an arbitrary ``h`` by linearity."""
    mats = sf["F"]
    t = len(sf["gamma"])
    out = [[X.ZERO] * t for _ in range(t)]
    for k, c in enumerate(h):
        if c:
            for i in range(t):
                for j in range(t):
                    out[i][j] += c * mats[k][i][j]
    return tuple(tuple(r) for r in out)


# -- checks -----------------------------------------------------------------

def _vw(v) -> list:
    return X.fmt_vector(v)


def check_fodc_axioms(f: FODC, report: AxiomReport | None = None) -> AxiomReport:
    """Leibniz, ``dα = γd``, spanning and the Hom-bimodule laws."""
    rep = report or AxiomReport(f"{f.name} calculus axioms")
    H, n = f.base, f.base.dim
    E = [H.e(i) for i in range(n)]
    G = [f.basis_vec(j) for j in range(f.dim)]
    pairs = list(iproduct(range(n), repeat=2))
    sweep(rep, "leibniz", pairs,
          lambda a, b: f.diff(H.mul(E[a], E[b])),
          lambda a, b: X.add(f.lmul(E[a], f.diff(E[b])), f.rmul(f.diff(E[a]), E[b])))
    sweep(rep, "d_alpha_equals_gamma_d", [(i,) for i in range(n)],
          lambda i: f.diff(H.a(E[i])), lambda i: f.g(f.diff(E[i])))
    sweep(rep, "d_unit_zero", [()], lambda: f.diff(H.unit), lambda: f.zero())
    m1 = f.m1_matrix()
    spans = f.dim == 0 or X.rank(X.transpose(m1)) == f.dim
    rep.add("spanned_by_h_dh", spans, None if spans else {"rank": X.rank(X.transpose(m1)), "dim": f.dim})
    right_span = [f.rmul(f.diff(E[a]), E[b]) for a in range(n) for b in range(n)]
    ok = f.dim == 0 or X.rank(right_span) == f.dim
    rep.add("spanned_by_dh_h", ok, None if ok else {"rank": X.rank(right_span), "dim": f.dim})
    triples = list(iproduct(range(n), range(n), range(f.dim)))
    sweep(rep, "bimodule_left_hom_module", triples,
          lambda a, b, w: f.lmul(H.a(E[a]), f.lmul(E[b], G[w])),
          lambda a, b, w: f.lmul(H.mul(E[a], E[b]), f.g(G[w])))
    sweep(rep, "bimodule_right_hom_module", triples,
          lambda a, b, w: f.rmul(f.rmul(G[w], E[a]), H.a(E[b])),
          lambda a, b, w: f.rmul(f.g(G[w]), H.mul(E[a], E[b])))
    sweep(rep, "bimodule_compatibility", triples,
          lambda a, b, w: f.lmul(H.a(E[a]), f.rmul(G[w], E[b])),
          lambda a, b, w: f.rmul(f.lmul(E[a], G[w]), H.a(E[b])))
    singles = [(w,) for w in range(f.dim)]
    sweep(rep, "bimodule_unit_left", singles, lambda w: f.lmul(H.unit, G[w]), lambda w: f.g(G[w]))
    sweep(rep, "bimodule_unit_right", singles, lambda w: f.rmul(G[w], H.unit), lambda w: f.g(G[w]))
    sweep(rep, "gamma_left_equivariant", [(a, w) for a in range(n) for w in range(f.dim)],
          lambda a, w: f.g(f.lmul(E[a], G[w])), lambda a, w: f.lmul(H.a(E[a]), f.g(G[w])))
    sweep(rep, "gamma_right_equivariant", [(a, w) for a in range(n) for w in range(f.dim)],
          lambda a, w: f.g(f.rmul(G[w], E[a])), lambda a, w: f.rmul(f.g(G[w]), H.a(E[a])))
    return rep


def _hg_left_mul(f: FODC, s: Vector, t: Vector) -> Vector:
    """``(h⊗a)(h'⊗ω) = hh' ⊗ a·ω`` with ``s ∈ H⊗H`` and ``t ∈ H⊗Γ``."""
    H, n, m = f.base, f.base.dim, f.dim
    acc = [X.ZERO] * (n * m)
    for p, x in enumerate(s):
        if not x:
            continue
        hh, a = divmod(p, n)
        for q, y in enumerate(t):
            if not y:
                continue
            h2, w = divmod(q, m)
            _add_tensor(acc, x * y, H.mul(H.e(hh), H.e(h2)), f.lmul(H.e(a), f.basis_vec(w)))
    return tuple(acc)


def _hg_right_mul(f: FODC, t: Vector, s: Vector) -> Vector:
    """``(h'⊗ω)(h⊗a) = h'h ⊗ ω·a``."""
    H, n, m = f.base, f.base.dim, f.dim
    acc = [X.ZERO] * (n * m)
    for q, y in enumerate(t):
        if not y:
            continue
        h2, w = divmod(q, m)
        for p, x in enumerate(s):
            if not x:
                continue
            hh, a = divmod(p, n)
            _add_tensor(acc, x * y, H.mul(H.e(h2), H.e(hh)), f.rmul(f.basis_vec(w), H.e(a)))
    return tuple(acc)


def _gh_left_mul(f: FODC, s: Vector, t: Vector) -> Vector:
    """``(a⊗h)(ω⊗h') = a·ω ⊗ hh'`` with ``s ∈ H⊗H`` and ``t ∈ Γ⊗H``."""
    H, n, m = f.base, f.base.dim, f.dim
    acc = [X.ZERO] * (m * n)
    for p, x in enumerate(s):
        if not x:
            continue
        a, hh = divmod(p, n)
        for q, y in enumerate(t):
            if not y:
                continue
            w, h2 = divmod(q, n)
            _add_tensor(acc, x * y, f.lmul(H.e(a), f.basis_vec(w)), H.mul(H.e(hh), H.e(h2)))
    return tuple(acc)


def _gh_right_mul(f: FODC, t: Vector, s: Vector) -> Vector:
    """``(ω⊗h')(a⊗h) = ω·a ⊗ h'h``."""
    H, n, m = f.base, f.base.dim, f.dim
    acc = [X.ZERO] * (m * n)
    for q, y in enumerate(t):
        if not y:
            continue
        w, h2 = divmod(q, n)
        for p, x in enumerate(s):
            if not x:
                continue
            a, hh = divmod(p, n)
            _add_tensor(acc, x * y, f.rmul(f.basis_vec(w), H.e(a)), H.mul(H.e(h2), H.e(hh)))
    return tuple(acc)


def map_h_gamma(f: FODC, t: Vector, fh, fg, gamma_first: bool = False) -> Vector:
    """Apply ``fh ⊗ fg`` to a flat tensor in ``H⊗Γ`` (or ``Γ⊗H`` when ``gamma_first``)."""
    H, n, m = f.base, f.base.dim, f.dim
    first_n, second_n = (m, n) if gamma_first else (n, m)
    first_basis = (lambda i: f.basis_vec(i)) if gamma_first else H.e
    second_basis = H.e if gamma_first else (lambda i: f.basis_vec(i))
    firsts = [fh(first_basis(i)) for i in range(first_n)]
    seconds = [fg(second_basis(j)) for j in range(second_n)]
    if not firsts or not seconds:
        return ()
    size = len(firsts[0]) * len(seconds[0])
    acc = [X.ZERO] * size
    for p, c in enumerate(t):
        if c:
            i, j = divmod(p, second_n)
            _add_tensor(acc, c, firsts[i], seconds[j])
    return tuple(acc)


def check_left_covariance(f: FODC, report: AxiomReport | None = None) -> AxiomReport:
    """Kernel-inclusion test, then the coaction and covariance laws of the induced φ."""
    rep = report or AxiomReport(f"{f.name} left covariance")
    H, n = f.base, f.base.dim
    m1, m2 = f.m1_matrix(), f.m2_left_matrix()
    if f.dim == 0:
        rep.add("kernel_inclusion", True, note="zero calculus")
        return rep
    bad = None
    for v in X.kernel_basis(m1):
        img = X.mat_vec(m2, v)
        if not X.is_zero(img):
            bad = {"kernel_vector": _vw(v), "image": _vw(img)}
            break
    rep.add("kernel_inclusion", bad is None, bad)
    if bad is not None or f.phi_left is None:
        if bad is None:
            rep.add("phi_defined", False, {"reason": "H·dH does not span"})
        return rep
    _coaction_laws_left(f, rep)
    return rep


def _coaction_laws_left(f: FODC, rep: AxiomReport) -> None:
    H, n, m = f.base, f.base.dim, f.dim
    E = [H.e(i) for i in range(n)]
    G = [f.basis_vec(j) for j in range(m)]
    singles = [(w,) for w in range(m)]
    ainv = lambda v: H.a(v, -1)
    # (α⁻¹⊗φ)φ = (Δ⊗γ⁻¹)φ, both in H⊗H⊗Γ
    sweep(rep, "coaction_coassociative", singles,
          lambda w: map_h_gamma(f, f.phi(G[w]), ainv, f.phi),
          lambda w: map_h_gamma(f, f.phi(G[w]), H.delta, lambda v: f.g(v, -1)))
    sweep(rep, "coaction_counit", singles,
          lambda w: X.lincomb(((c * H.eps(E[p // m]), G[p % m]) for p, c in enumerate(f.phi(G[w])) if c), m),
          lambda w: f.g(G[w], -1))
    sweep(rep, "coaction_natural", singles,
          lambda w: f.phi(f.g(G[w])), lambda w: map_h_gamma(f, f.phi(G[w]), H.a, f.g))
    triples = list(iproduct(range(n), range(m), range(n)))
    sweep(rep, "coaction_bimodule", triples,
          lambda a, w, b: f.phi(f.lmul(H.a(E[a]), f.rmul(G[w], E[b]))),
          lambda a, w, b: _hg_left_mul(f, H.delta(H.a(E[a])), _hg_right_mul(f, f.phi(G[w]), H.delta(E[b]))))
    sweep(rep, "d_left_colinear", [(i,) for i in range(n)],
          lambda i: f.phi(f.diff(E[i])),
          lambda i: _id_d(f, H.delta(E[i])))


def _id_d(f: FODC, t: Vector) -> Vector:
    """``(id⊗d)`` on a flat ``H⊗H`` tensor, into ``H⊗Γ``."""
    n, m = f.base.dim, f.dim
    acc = [X.ZERO] * (n * m)
    for p, c in enumerate(t):
        if c:
            a, b = divmod(p, n)
            _add_tensor(acc, c, f.base.e(a), f.diff(f.base.e(b)))
    return tuple(acc)


def _d_id(f: FODC, t: Vector) -> Vector:
    """``(d⊗id)`` on a flat ``H⊗H`` tensor, into ``Γ⊗H``."""
    n, m = f.base.dim, f.dim
    acc = [X.ZERO] * (m * n)
    for p, c in enumerate(t):
        if c:
            a, b = divmod(p, n)
            _add_tensor(acc, c, f.diff(f.base.e(a)), f.base.e(b))
    return tuple(acc)


def check_right_covariance(f: FODC, report: AxiomReport | None = None) -> AxiomReport:
    """Mirror of the left test with ``(a, b) ↦ Σ a₁·db₁ ⊗ a₂b₂``."""
    rep = report or AxiomReport(f"{f.name} right covariance")
    H, n, m = f.base, f.base.dim, f.dim
    if m == 0:
        rep.add("right_kernel_inclusion", True, note="zero calculus")
        return rep
    m1, m2 = f.m1_matrix(), f.m2_right_matrix()
    bad = None
    for v in X.kernel_basis(m1):
        img = X.mat_vec(m2, v)
        if not X.is_zero(img):
            bad = {"kernel_vector": _vw(v), "image": _vw(img)}
            break
    rep.add("right_kernel_inclusion", bad is None, bad)
    if bad is not None or f.phi_right is None:
        return rep
    E = [H.e(i) for i in range(n)]
    G = [f.basis_vec(j) for j in range(m)]
    singles = [(w,) for w in range(m)]
    ainv = lambda v: H.a(v, -1)
    sweep(rep, "right_coaction_coassociative", singles,
          lambda w: map_h_gamma(f, f.phi_r(G[w]), lambda v: f.g(v, -1), H.delta, gamma_first=True),
          lambda w: map_h_gamma(f, f.phi_r(G[w]), f.phi_r, ainv, gamma_first=True))
    sweep(rep, "right_coaction_counit", singles,
          lambda w: X.lincomb(((c * H.eps(E[p % n]), G[p // n]) for p, c in enumerate(f.phi_r(G[w])) if c), m),
          lambda w: f.g(G[w], -1))
    sweep(rep, "right_coaction_natural", singles,
          lambda w: f.phi_r(f.g(G[w])), lambda w: map_h_gamma(f, f.phi_r(G[w]), f.g, H.a, gamma_first=True))
    triples = list(iproduct(range(n), range(m), range(n)))
    sweep(rep, "right_coaction_bimodule", triples,
          lambda a, w, b: f.phi_r(f.lmul(H.a(E[a]), f.rmul(G[w], E[b]))),
          lambda a, w, b: _gh_left_mul(f, H.delta(H.a(E[a])), _gh_right_mul(f, f.phi_r(G[w]), H.delta(E[b]))))
    sweep(rep, "d_right_colinear", [(i,) for i in range(n)],
          lambda i: f.phi_r(f.diff(E[i])), lambda i: _d_id(f, H.delta(E[i])))
    return rep


def check_coinvariants(f: FODC, report: AxiomReport | None = None) -> AxiomReport:
    """Identities tying ``ω``, ``P_L`` and the coinvariant subspace together."""
    rep = report or AxiomReport(f"{f.name} coinvariants")
    H, n, m = f.base, f.base.dim, f.dim
    E = [H.e(i) for i in range(n)]
    G = [f.basis_vec(j) for j in range(m)]
    if f.phi_left is None:
        rep.add("left_covariant", False)
        return rep
    singles = [(i,) for i in range(n)]
    sweep(rep, "omega_unit_zero", [()], lambda: f.omega(H.unit), lambda: f.zero())
    sweep(rep, "omega_alpha_equivariant", singles, lambda i: f.omega(H.a(E[i])), lambda i: f.g(f.omega(E[i])))
    sweep(rep, "omega_is_pl_of_d", singles, lambda i: f.pl_project(f.diff(E[i])), lambda i: f.omega(E[i]))
    sweep(rep, "d_from_omega", singles,
          lambda i: f.diff(E[i]),
          lambda i: X.lincomb(((c, f.lmul(E[p // n], f.omega(E[p % n]))) for p, c in enumerate(H.delta(E[i])) if c), m))
    sweep(rep, "omega_coinvariant", singles,
          lambda i: f.phi(f.omega(E[i])), lambda i: X.tensor(H.unit, f.g(f.omega(E[i]), -1)))
    # the coinvariant subspace: kernel of φ − 1⊗γ⁻¹
    if m:
        diff_cols = [X.sub(f.phi(G[w]), X.tensor(H.unit, f.g(G[w], -1))) for w in range(m)]
        coinv = [X.lincomb(zip(c, G), m) for c in X.kernel_basis(X.from_columns(diff_cols, n * m))]
    else:
        coinv = []
    ok = X.same_span(coinv, [f.omega(E[i]) for i in range(n)], m)
    rep.add("omega_image_is_coinvariants", ok, None if ok else {"coinv_dim": len(coinv), "omega_rank": X.rank([f.omega(e) for e in E]) if m else 0})
    gen = [f.lmul(E[i], f.omega(E[j])) for i in range(n) for j in range(n)]
    ok = m == 0 or X.rank(gen) == m
    rep.add("generated_by_omega", ok)
    sweep(rep, "triangle_formula", list(iproduct(range(n), repeat=2)),
          lambda i, j: f.triangle(f.omega(E[i]), E[j]),
          lambda i, j: f.omega(H.mul(X.sub(E[i], X.scale(H.eps(E[i]), H.unit)), E[j])))
    pairs = list(iproduct(range(n), range(m)))
    sweep(rep, "pl_left_linear", pairs,
          lambda i, w: f.pl_project(f.lmul(E[i], G[w])),
          lambda i, w: X.scale(H.eps(E[i]), f.g(f.pl_project(G[w]))))
    sweep(rep, "pl_reconstruction", [(w,) for w in range(m)],
          lambda w: G[w],
          lambda w: X.lincomb(
              ((c, f.lmul(E[p // m], f.pl_project(G[p % m]))) for p, c in enumerate(f.phi(G[w])) if c), m))
    if m:
        sweep(rep, "pl_fixes_coinvariants", singles,
              lambda i: f.pl_project(f.omega(E[i])), lambda i: f.omega(E[i]))
    _check_structure_law(f, rep)
    _check_universal_map(f, rep)
    return rep


def _check_structure_law(f: FODC, rep: AxiomReport) -> None:
    H, n = f.base, f.base.dim
    sf = structure_functionals(f)
    if not sf["gamma"]:
        rep.add("structure_functional_product", True, note="no coinvariants")
        rep.add("structure_functional_unit", True, note="no coinvariants")
        return
    Gb = sf["gamma_bar"]
    sweep(rep, "structure_functional_product", list(iproduct(range(n), repeat=2)),
          lambda a, b: F_of(sf, H.mul(H.e(a), H.e(b))),
          lambda a, b: X.mat_mul(X.mat_mul(Gb, sf["F"][a]), F_of(sf, H.a(H.e(b)))))
    sweep(rep, "structure_functional_unit", [()], lambda: F_of(sf, H.unit), lambda: sf["gamma"])


def _check_universal_map(f: FODC, rep: AxiomReport) -> None:
    """``a·db ↦ a·dΓ b`` from ``ker m ⊆ H⊗H`` to ``Γ`` is well defined."""
    from .universal_dc import UniversalCalculus, omega1_tensor_square

    calc = UniversalCalculus(f.base.algebra(), cap=1)
    src = X.from_columns(omega1_tensor_square(calc), f.base.dim ** 2)
    m1 = f.m1_matrix()
    bad = None
    for v in X.kernel_basis(src):
        if f.dim and not X.is_zero(X.mat_vec(m1, v)):
            bad = {"kernel_vector": _vw(v)}
            break
    rep.add("universal_map_well_defined", bad is None, bad)


# -- ideal search -------------------------------------------------------------

def right_ideal_closure(h: HomHopfAlgebra, seeds: Sequence[Vector]) -> list[Vector]:
    """Smallest α-stable right Hom-ideal containing ``seeds`` (echelon basis)."""
    n = h.dim
    basis = X.echelon_basis(list(seeds), n)
    while True:
        new = list(basis)
        for v in basis:
            new.append(h.a(v))
            new.append(h.a(v, -1))
            for j in range(n):
                new.append(h.mul(v, h.e(j)))
        nb = X.echelon_basis(new, n)
        if len(nb) == len(basis):
            return nb
        basis = nb


def search_right_ideals(h: HomHopfAlgebra, seed: int = 0, tries: int = 200, size: int = 2) -> list[list[Vector]]:
    """Distinct proper nonzero α-stable right Hom-ideals found from random seeds in ``ker ε``."""
    rng = random.Random(seed)
    kb = ker_eps_basis(h)
    found: list[list[Vector]] = []
    for _ in range(tries):
        seeds = []
        for _ in range(rng.randint(1, size)):
            coeffs = [rng.randint(-2, 2) for _ in kb]
            seeds.append(X.lincomb(zip((Fraction(c) for c in coeffs), kb), h.dim))
        if all(X.is_zero(s) for s in seeds):
            continue
        ideal = right_ideal_closure(h, seeds)
        if 0 < len(ideal) < len(kb) and ideal not in found:
            found.append(ideal)
    found.sort(key=lambda b: (len(b), [X.fmt_vector(v) for v in b]))
    return found
