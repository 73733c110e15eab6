"""Monoidal Hom-Hopf algebras in structure constants.

Axiom conventions (checked exhaustively on basis tuples by
:func:`check_axioms`):

* Hom-associativity ``α(a)(bc) = (ab)α(c)`` and Hom-unit ``1a = α(a) = a1``;
* Hom-coassociativity ``(α⁻¹⊗Δ)Δ = (Δ⊗α⁻¹)Δ`` and Hom-counit
  ``ε(h₁)h₂ = α⁻¹(h) = h₁ε(h₂)``;
* ``α`` is an algebra and coalgebra automorphism;
* ``Δ(hg) = Δ(h)Δ(g)``, ``Δ(1) = 1⊗1``, ``ε(hg) = ε(h)ε(g)``;
* ``S(h₁)h₂ = ε(h)1 = h₁S(h₂)`` and ``Sα = αS``.

Tensors in ``H⊗H`` are flat vectors indexed ``i*dim + j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as iproduct
from typing import Callable, Sequence

from . import exact as X
from .errors import BadParams, DimensionMismatch, NotAutomorphism, SingularMatrix, UnknownName
from .exact import Fraction, Matrix, Tensor3, Vector

LEVELS = ("algebra", "coalgebra", "bialgebra", "hopf")


@dataclass(frozen=True)
class HomHopfAlgebra:
    """Structure constants of ``(H, α, m, 1, Δ, ε, S)``.

    ``mult[i][j][k]`` is the coefficient of ``e_k`` in ``e_i e_j``;
    ``comult[k][i][j]`` is the coefficient of ``e_i⊗e_j`` in ``Δ(e_k)``.
    ``antipode`` and ``alpha`` use the column convention of :mod:`exact`.
    """

    name: str
    basis: tuple
    mult: Tensor3
    unit: Vector
    comult: Tensor3
    counit: Vector
    antipode: Matrix
    alpha: Matrix

    def __post_init__(self):
        n = len(self.basis)
        if n == 0:
            raise DimensionMismatch("algebra of dimension 0")

        def cube(t, what):
            if len(t) != n or any(len(r) != n or any(len(c) != n for c in r) for r in t):
                raise DimensionMismatch(f"{what} must be {n}x{n}x{n}")

        cube(self.mult, "mult")
        cube(self.comult, "comult")
        for what, v in (("unit", self.unit), ("counit", self.counit)):
            if len(v) != n:
                raise DimensionMismatch(f"{what} must have length {n}")
        for what, m in (("antipode", self.antipode), ("alpha", self.alpha)):
            if X.shape(m) != (n, n):
                raise DimensionMismatch(f"{what} must be {n}x{n}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def e(self, i: int) -> Vector:
        return X.unit_vector(self.dim, i)

    @cached_property
    def alpha_inv(self) -> Matrix:
        return X.invert(self.alpha)

    @cached_property
    def antipode_inv(self) -> Matrix:
        return X.invert(self.antipode)

    def mul(self, u: Vector, v: Vector) -> Vector:
        return X.contract(self.mult, u, v)

    def a(self, v: Vector, power: int = 1) -> Vector:
        """``α^power`` applied to ``v``."""
        m = self.alpha if power >= 0 else self.alpha_inv
        for _ in range(abs(power)):
            v = X.mat_vec(m, v)
        return v

    def S(self, v: Vector) -> Vector:
        return X.mat_vec(self.antipode, v)

    def eps(self, v: Vector) -> Fraction:
        return X.dot(self.counit, v)

    def delta(self, v: Vector) -> Vector:
        n = self.dim
        out = [X.ZERO] * (n * n)
        for k, c in enumerate(v):
            if not c:
                continue
            for i in range(n):
                row = self.comult[k][i]
                for j in range(n):
                    if row[j]:
                        out[i * n + j] += c * row[j]
        return tuple(out)

    def delta2_left(self, v: Vector) -> dict:
        """``(Δ⊗id)Δ(v)`` as a sparse map ``(i, j, k) -> coeff`` (h₁₁⊗h₁₂⊗h₂)."""
        n = self.dim
        out: dict = {}
        d = self.delta(v)
        for p, c in enumerate(d):
            if not c:
                continue
            a, b = divmod(p, n)
            for q, x in enumerate(self.delta(self.e(a))):
                if x:
                    i, j = divmod(q, n)
                    out[(i, j, b)] = out.get((i, j, b), X.ZERO) + c * x
        return {k: v for k, v in out.items() if v}

    def delta2_right(self, v: Vector) -> dict:
        """``(id⊗Δ)Δ(v)`` as a sparse map ``(i, j, k) -> coeff`` (h₁⊗h₂₁⊗h₂₂)."""
        n = self.dim
        out: dict = {}
        d = self.delta(v)
        for p, c in enumerate(d):
            if not c:
                continue
            a, b = divmod(p, n)
            for q, x in enumerate(self.delta(self.e(b))):
                if x:
                    j, k = divmod(q, n)
                    out[(a, j, k)] = out.get((a, j, k), X.ZERO) + c * x
        return {k: v for k, v in out.items() if v}

    def tensor_mul(self, s: Vector, t: Vector) -> Vector:
        """Product in ``H⊗H``: ``(a⊗b)(c⊗d) = ac⊗bd``."""
        n = self.dim
        out = [X.ZERO] * (n * n)
        for p, x in enumerate(s):
            if not x:
                continue
            a, b = divmod(p, n)
            for q, y in enumerate(t):
                if not y:
                    continue
                c, d = divmod(q, n)
                left = self.mult[a][c]
                right = self.mult[b][d]
                xy = x * y
                for i, li in enumerate(left):
                    if li:
                        for j, rj in enumerate(right):
                            if rj:
                                out[i * n + j] += xy * li * rj
        return tuple(out)

    def map2(self, f: Callable[[Vector], Vector], g: Callable[[Vector], Vector], t: Vector,
             nf: int | None = None, ng: int | None = None) -> Vector:
        """``(f⊗g)`` applied to a flat tensor in ``H⊗H``."""
        n = self.dim
        fs = [f(self.e(i)) for i in range(n)]
        gs = [g(self.e(i)) for i in range(n)]
        nf = nf or len(fs[0])
        ng = ng or len(gs[0])
        out = [X.ZERO] * (nf * ng)
        for p, c in enumerate(t):
            if not c:
                continue
            a, b = divmod(p, n)
            for i, x in enumerate(fs[a]):
                if x:
                    for j, y in enumerate(gs[b]):
                        if y:
                            out[i * ng + j] += c * x * y
        return tuple(out)

    def mult_matrix(self) -> Matrix:
        """``m_H`` as a ``dim × dim²`` matrix on flat ``H⊗H``."""
        n = self.dim
        cols = [self.mul(self.e(i), self.e(j)) for i in range(n) for j in range(n)]
        return X.from_columns(cols, n)

    def algebra(self) -> "HomAlgebra":
        return HomAlgebra(self.basis, self.mult, self.unit, self.alpha)


@dataclass(frozen=True)
class HomAlgebra:
    basis: tuple
    mult: Tensor3
    unit: Vector
    alpha: Matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def alpha_inv(self) -> Matrix:
        return X.invert(self.alpha)

    def mul(self, u, v):
        return X.contract(self.mult, u, v)

    def a(self, v, power=1):
        m = self.alpha if power >= 0 else self.alpha_inv
        for _ in range(abs(power)):
            v = X.mat_vec(m, v)
        return v


@dataclass(frozen=True)
class HomComoduleAlgebra:
    """A Hom-algebra ``carrier`` with a Hom-coaction of ``base``.

    ``coaction`` is a matrix from the carrier to ``carrier⊗base`` (``side="right"``)
    or ``base⊗carrier`` (``side="left"``), flat-indexed like everything else.
    """

    base: HomHopfAlgebra
    carrier: HomAlgebra
    coaction: Matrix
    side: str = "left"


@dataclass
class AxiomResult:
    name: str
    passed: bool | None  # None = not evaluated
    witness: dict | None = None
    note: str | None = None
    info: bool = False  # a finding, not a check

    def to_dict(self) -> dict:
        if self.info:
            status = "info"
        else:
            status = "skip" if self.passed is None else ("pass" if self.passed else "fail")
        d = {"name": self.name, "status": status}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class AxiomReport:
    subject: str
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed is not False for r in self.results)

    def failures(self) -> list:
        return [r for r in self.results if r.passed is False]

    def result(self, name: str) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def add(self, name: str, passed: bool | None, witness: dict | None = None, note: str | None = None):
        self.results.append(AxiomResult(name, passed, witness, note))

    def note(self, name: str, note: str, witness: dict | None = None):
        """Record an informational finding that never fails the report."""
        self.results.append(AxiomResult(name, None, witness, note, info=True))

    def extend(self, other: "AxiomReport", prefix: str | None = None):
        for r in other.results:
            name = f"{prefix}.{r.name}" if prefix else r.name
            self.results.append(AxiomResult(name, r.passed, r.witness, r.note, r.info))

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [r.to_dict() for r in self.results],
        }


def witness(labels: dict, lhs, rhs) -> dict:
    """Serializable counterexample: basis indices plus both sides' coordinates."""
    return {
        "at": labels,
        "lhs": X.fmt_vector(lhs) if isinstance(lhs, tuple) else X.format_scalar(lhs),
        "rhs": X.fmt_vector(rhs) if isinstance(rhs, tuple) else X.format_scalar(rhs),
    }


def sweep(report: AxiomReport, name: str, cases, lhs, rhs) -> bool:
    """Record ``name`` as passed iff ``lhs(*c) == rhs(*c)`` for every case."""
    for case in cases:
        left, right = lhs(*case), rhs(*case)
        if left != right:
            report.add(name, False, witness({"indices": list(case)}, left, right))
            return False
    report.add(name, True)
    return True


def _three(h: HomHopfAlgebra, f, g, k, t: Vector) -> Vector:
    """``(f⊗g⊗k)`` on a flat rank-3 tensor over ``H``."""
    n = h.dim
    fs = [f(h.e(i)) for i in range(n)]
    gs = [g(h.e(i)) for i in range(n)]
    ks = [k(h.e(i)) for i in range(n)]
    out = [X.ZERO] * (n ** 3)
    for p, c in enumerate(t):
        if not c:
            continue
        a, rest = divmod(p, n * n)
        b, d = divmod(rest, n)
        for i, x in enumerate(fs[a]):
            if not x:
                continue
            for j, y in enumerate(gs[b]):
                if not y:
                    continue
                for l, z in enumerate(ks[d]):
                    if z:
                        out[(i * n + j) * n + l] += c * x * y * z
    return tuple(out)


def _id_delta(h: HomHopfAlgebra, t: Vector, left_map, right_delta: bool) -> Vector:
    """``(f⊗Δ)`` (right_delta) or ``(Δ⊗f)`` on a flat tensor in ``H⊗H``."""
    n = h.dim
    out = [X.ZERO] * (n ** 3)
    for p, c in enumerate(t):
        if not c:
            continue
        a, b = divmod(p, n)
        if right_delta:
            fa = left_map(h.e(a))
            db = h.delta(h.e(b))
            for i, x in enumerate(fa):
                if x:
                    for q, y in enumerate(db):
                        if y:
                            out[i * n * n + q] += c * x * y
        else:
            da = h.delta(h.e(a))
            fb = left_map(h.e(b))
            for q, x in enumerate(da):
                if x:
                    for l, y in enumerate(fb):
                        if y:
                            out[q * n + l] += c * x * y
    return tuple(out)


def check_axioms(h: HomHopfAlgebra, level: str = "hopf") -> AxiomReport:
    """Evaluate every Hom-axiom up to ``level`` on all basis tuples."""
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    depth = LEVELS.index(level)
    rep = AxiomReport(f"{h.name} [{level}]")
    n = h.dim
    E = [h.e(i) for i in range(n)]
    singles = [(i,) for i in range(n)]
    pairs = list(iproduct(range(n), repeat=2))

    try:
        h.alpha_inv
        rep.add("alpha_invertible", True)
        alpha_ok = True
    except SingularMatrix as exc:
        rep.add("alpha_invertible", False, {"SingularMatrix": exc.witness})
        alpha_ok = False

    sweep(rep, "alpha_multiplicative", pairs,
          lambda i, j: h.a(h.mul(E[i], E[j])), lambda i, j: h.mul(h.a(E[i]), h.a(E[j])))
    sweep(rep, "alpha_unit", [()], lambda: h.a(h.unit), lambda: h.unit)
    sweep(rep, "hom_associativity", list(iproduct(range(n), repeat=3)),
          lambda i, j, k: h.mul(h.a(E[i]), h.mul(E[j], E[k])),
          lambda i, j, k: h.mul(h.mul(E[i], E[j]), h.a(E[k])))
    sweep(rep, "hom_unit_left", singles, lambda i: h.mul(h.unit, E[i]), lambda i: h.a(E[i]))
    sweep(rep, "hom_unit_right", singles, lambda i: h.mul(E[i], h.unit), lambda i: h.a(E[i]))

    if depth >= 1:
        sweep(rep, "alpha_comultiplicative", singles,
              lambda i: h.delta(h.a(E[i])), lambda i: h.map2(h.a, h.a, h.delta(E[i])))
        sweep(rep, "counit_alpha", singles, lambda i: h.eps(h.a(E[i])), lambda i: h.eps(E[i]))
        if alpha_ok:
            ainv = lambda v: h.a(v, -1)
            sweep(rep, "hom_coassociativity", singles,
                  lambda i: _id_delta(h, h.delta(E[i]), ainv, True),
                  lambda i: _id_delta(h, h.delta(E[i]), ainv, False))
            eps_left = lambda i: X.lincomb(
                ((c * h.eps(E[p // n]), E[p % n]) for p, c in enumerate(h.delta(E[i])) if c), n)
            eps_right = lambda i: X.lincomb(
                ((c * h.eps(E[p % n]), E[p // n]) for p, c in enumerate(h.delta(E[i])) if c), n)
            sweep(rep, "hom_counit_left", singles, eps_left, lambda i: h.a(E[i], -1))
            sweep(rep, "hom_counit_right", singles, eps_right, lambda i: h.a(E[i], -1))
        else:
            for name in ("hom_coassociativity", "hom_counit_left", "hom_counit_right"):
                rep.add(name, None, note="alpha not invertible")

    if depth >= 2:
        sweep(rep, "delta_multiplicative", pairs,
              lambda i, j: h.delta(h.mul(E[i], E[j])),
              lambda i, j: h.tensor_mul(h.delta(E[i]), h.delta(E[j])))
        sweep(rep, "delta_unit", [()], lambda: h.delta(h.unit), lambda: X.tensor(h.unit, h.unit))
        sweep(rep, "counit_multiplicative", pairs,
              lambda i, j: h.eps(h.mul(E[i], E[j])), lambda i, j: h.eps(E[i]) * h.eps(E[j]))
        sweep(rep, "counit_unit", [()], lambda: h.eps(h.unit), lambda: X.ONE)

    if depth >= 3:
        try:
            h.antipode_inv
            rep.add("antipode_invertible", True)
        except SingularMatrix as exc:
            rep.add("antipode_invertible", False, {"SingularMatrix": exc.witness})

        def s_left(i):
            return X.lincomb(((c, h.mul(h.S(E[p // n]), E[p % n])) for p, c in enumerate(h.delta(E[i])) if c), n)

        def s_right(i):
            return X.lincomb(((c, h.mul(E[p // n], h.S(E[p % n]))) for p, c in enumerate(h.delta(E[i])) if c), n)

        target = lambda i: X.scale(h.eps(E[i]), h.unit)
        sweep(rep, "antipode_left", singles, s_left, target)
        sweep(rep, "antipode_right", singles, s_right, target)
        sweep(rep, "antipode_alpha", singles, lambda i: h.S(h.a(E[i])), lambda i: h.a(h.S(E[i])))
    return rep


# -- twisting and the fixture catalog ---------------------------------------

def _check_automorphism(h: HomHopfAlgebra, a: Matrix) -> None:
    n = h.dim
    if X.shape(a) != (n, n):
        raise DimensionMismatch(f"automorphism must be {n}x{n}")
    try:
        ainv = X.invert(a)
    except SingularMatrix as exc:
        raise NotAutomorphism("not invertible", {"law": "invertible", **exc.witness}) from None
    E = [h.e(i) for i in range(n)]
    ap = lambda v: X.mat_vec(a, v)
    for i, j in iproduct(range(n), repeat=2):
        lhs, rhs = ap(h.mul(E[i], E[j])), h.mul(ap(E[i]), ap(E[j]))
        if lhs != rhs:
            raise NotAutomorphism("not multiplicative", {"law": "multiplicative", **witness({"indices": [i, j]}, lhs, rhs)})
    if ap(h.unit) != h.unit:
        raise NotAutomorphism("does not fix the unit", {"law": "unit", **witness({}, ap(h.unit), h.unit)})
    for i in range(n):
        lhs, rhs = h.delta(ap(E[i])), h.map2(ap, ap, h.delta(E[i]))
        if lhs != rhs:
            raise NotAutomorphism("not comultiplicative", {"law": "comultiplicative", **witness({"indices": [i]}, lhs, rhs)})
        if h.eps(ap(E[i])) != h.eps(E[i]):
            raise NotAutomorphism("does not fix the counit", {"law": "counit", "indices": [i]})
        lhs, rhs = h.S(ap(E[i])), ap(h.S(E[i]))
        if lhs != rhs:
            raise NotAutomorphism("does not commute with S", {"law": "antipode", **witness({"indices": [i]}, lhs, rhs)})
    del ainv


def yau_twist(classical: HomHopfAlgebra, a: Matrix, name: str | None = None) -> HomHopfAlgebra:
    """Twist a classical Hopf algebra by a Hopf automorphism ``a``.

    Returns ``m_α = a∘m``, ``Δ_α = Δ∘a⁻¹``, same unit/counit/antipode, ``α = a``.
    """
    n = classical.dim
    if classical.alpha != X.identity(n):
        raise BadParams("yau_twist needs a classical input (alpha = id)")
    base_report = check_axioms(classical, "hopf")
    if not base_report.passed:
        from .errors import AxiomFailure
        raise AxiomFailure("input is not a Hopf algebra", base_report.to_dict())
    a = X.mat(a)
    _check_automorphism(classical, a)
    ainv = X.invert(a)
    mult = tuple(
        tuple(X.mat_vec(a, classical.mult[i][j]) for j in range(n)) for i in range(n)
    )
    comult = []
    for k in range(n):
        pre = X.mat_vec(ainv, classical.e(k))
        flat = classical.delta(pre)
        comult.append(tuple(tuple(flat[i * n: (i + 1) * n]) for i in range(n)))
    return HomHopfAlgebra(
        name=name or f"{classical.name}~twist",
        basis=classical.basis,
        mult=mult,
        unit=classical.unit,
        comult=tuple(comult),
        counit=classical.counit,
        antipode=classical.antipode,
        alpha=a,
    )


def _tensor3(n: int, entries: dict) -> Tensor3:
    t = [[[X.ZERO] * n for _ in range(n)] for _ in range(n)]
    for (i, j, k), c in entries.items():
        t[i][j][k] += Fraction(c)
    return tuple(tuple(tuple(r) for r in plane) for plane in t)


def classical_group_algebra(n: int) -> HomHopfAlgebra:
    labels = tuple("1" if i == 0 else ("g" if i == 1 else f"g^{i}") for i in range(n))
    mult = _tensor3(n, {(i, j, (i + j) % n): 1 for i in range(n) for j in range(n)})
    comult = _tensor3(n, {(k, k, k): 1 for k in range(n)})
    antipode = X.from_columns([X.unit_vector(n, (-j) % n) for j in range(n)], n)
    return HomHopfAlgebra(
        f"kZ{n}", labels, mult, X.unit_vector(n, 0), comult, (X.ONE,) * n, antipode, X.identity(n)
    )


def classical_sweedler() -> HomHopfAlgebra:
    # basis 1, g, x, gx with g^2 = 1, x^2 = 0, xg = -gx
    one, g, x, gx = range(4)
    mult = {}
    for b in range(4):
        mult[(one, b, b)] = 1
        mult[(b, one, b)] = 1
    mult.update({
        (g, g, one): 1, (g, x, gx): 1, (g, gx, x): 1,
        (x, g, gx): -1, (gx, g, x): -1,
    })
    comult = {
        (one, one, one): 1,
        (g, g, g): 1,
        (x, x, one): 1, (x, g, x): 1,
        (gx, gx, g): 1, (gx, one, gx): 1,
    }
    antipode = X.mat([
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
        [0, 0, -1, 0],
    ])
    return HomHopfAlgebra(
        "H4", ("1", "g", "x", "gx"), _tensor3(4, mult), X.unit_vector(4, 0),
        _tensor3(4, comult), X.vec([1, 1, 0, 0]), antipode, X.identity(4),
    )


def group_algebra_Zn(n: int, k: int = 1) -> HomHopfAlgebra:
    if not isinstance(n, int) or n < 1:
        raise BadParams(f"n must be a positive integer, got {n!r}")
    if not isinstance(k, int) or math.gcd(k, n) != 1:
        raise BadParams(f"exponent {k!r} is not a unit mod {n}")
    a = X.from_columns([X.unit_vector(n, (j * k) % n) for j in range(n)], n)
    return yau_twist(classical_group_algebra(n), a, name=f"kZ{n}[g->g^{k % n}]")


def sweedler_h4(lam=-1) -> HomHopfAlgebra:
    lam = X.parse_scalar(lam) if not isinstance(lam, Fraction) else lam
    if lam == 0:
        raise BadParams("lambda must be nonzero")
    a = X.mat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, lam, 0], [0, 0, 0, lam]])
    return yau_twist(classical_sweedler(), a, name=f"H4[x->{X.format_scalar(lam)}x]")


BUILTINS = {
    "group_algebra_Zn": (group_algebra_Zn, {"n": int, "k": int}),
    "sweedler_h4": (sweedler_h4, {"lambda": str}),
}


def builtin(name: str, **params) -> HomHopfAlgebra:
    """Catalog entry ``name``: ``group_algebra_Zn(n, k)`` or ``sweedler_h4(lambda)``."""
    if name not in BUILTINS:
        raise UnknownName(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}")
    fn, schema = BUILTINS[name]
    if "λ" in params:
        params["lambda"] = params.pop("λ")
    if "lam" in params:
        params["lambda"] = params.pop("lam")
    unknown = set(params) - set(schema)
    if unknown:
        raise BadParams(f"unknown parameter(s) {sorted(unknown)} for {name}")
    try:
        kwargs = {}
        for key, val in params.items():
            kwargs[key] = schema[key](val) if schema[key] is int else val
    except (TypeError, ValueError):
        raise BadParams(f"bad parameter values {params!r}") from None
    if name == "sweedler_h4":
        return sweedler_h4(kwargs.get("lambda", -1))
    if "n" not in kwargs:
        raise BadParams("group_algebra_Zn needs n")
    return group_algebra_Zn(kwargs["n"], kwargs.get("k", 1))


# -- comodule algebras ------------------------------------------------------

def regular_comodule(h: HomHopfAlgebra) -> HomComoduleAlgebra:
    """``(H, α)`` as a left Hom-quantum space over itself via ``Δ``."""
    cols = [h.delta(h.e(i)) for i in range(h.dim)]
    return HomComoduleAlgebra(h, h.algebra(), X.from_columns(cols, h.dim ** 2), "left")


def check_comodule_algebra(c: HomComoduleAlgebra) -> AxiomReport:
    b, A = c.base, c.carrier
    nb, na = b.dim, A.dim
    if X.shape(c.coaction) != (na * nb, na):
        raise DimensionMismatch(f"coaction must be {na * nb}x{na}")
    rep = AxiomReport(f"comodule algebra over {b.name} ({c.side})")
    left = c.side == "left"
    rho = lambda v: X.mat_vec(c.coaction, v)
    EA = [X.unit_vector(na, i) for i in range(na)]

    def pair_map(t, f_first, f_second, n1, n2):
        """Apply ``f_first⊗f_second`` to a flat tensor with factor sizes n1, n2."""
        firsts = [f_first(X.unit_vector(n1, i)) for i in range(n1)]
        seconds = [f_second(X.unit_vector(n2, i)) for i in range(n2)]
        m1, m2 = len(firsts[0]), len(seconds[0])
        out = [X.ZERO] * (m1 * m2)
        for p, x in enumerate(t):
            if x:
                i, j = divmod(p, n2)
                for q, y in enumerate(firsts[i]):
                    if y:
                        for r, z in enumerate(seconds[j]):
                            if z:
                                out[q * m2 + r] += x * y * z
        return tuple(out)

    if left:
        # (Δ⊗α⁻¹)ρ = (β⁻¹⊗ρ)ρ
        lhs = lambda i: pair_map(rho(EA[i]), b.delta, lambda v: A.a(v, -1), nb, na)
        rhs = lambda i: pair_map(rho(EA[i]), lambda v: b.a(v, -1), rho, nb, na)
        counit = lambda i: X.lincomb(
            ((x * b.eps(b.e(p // na)), EA[p % na]) for p, x in enumerate(rho(EA[i])) if x), na)
        natural = lambda i: pair_map(rho(EA[i]), b.a, A.a, nb, na)
        mult = lambda u, v: _tensor_product_mul(b.mul, A.mul, u, v, nb, na)
        unit_image = X.tensor(b.unit, A.unit)
    else:
        lhs = lambda i: pair_map(rho(EA[i]), lambda v: A.a(v, -1), b.delta, na, nb)
        rhs = lambda i: pair_map(rho(EA[i]), rho, lambda v: b.a(v, -1), na, nb)
        counit = lambda i: X.lincomb(
            ((x * b.eps(b.e(p % nb)), EA[p // nb]) for p, x in enumerate(rho(EA[i])) if x), na)
        natural = lambda i: pair_map(rho(EA[i]), A.a, b.a, na, nb)
        mult = lambda u, v: _tensor_product_mul(A.mul, b.mul, u, v, na, nb)
        unit_image = X.tensor(A.unit, b.unit)

    singles = [(i,) for i in range(na)]
    sweep(rep, "coaction_coassociative", singles, lhs, rhs)
    sweep(rep, "coaction_counit", singles, counit, lambda i: A.a(EA[i], -1))
    sweep(rep, "coaction_natural", singles, natural, lambda i: rho(A.a(EA[i])))
    sweep(rep, "coaction_multiplicative", list(iproduct(range(na), repeat=2)),
          lambda i, j: rho(A.mul(EA[i], EA[j])), lambda i, j: mult(rho(EA[i]), rho(EA[j])))
    sweep(rep, "coaction_unit", [()], lambda: rho(A.unit), lambda: unit_image)
    return rep


def _tensor_product_mul(mul1, mul2, s, t, n1, n2):
    out = [X.ZERO] * (n1 * n2)
    for p, x in enumerate(s):
        if not x:
            continue
        a, b = divmod(p, n2)
        for q, y in enumerate(t):
            if not y:
                continue
            c, d = divmod(q, n2)
            left = mul1(X.unit_vector(n1, a), X.unit_vector(n1, c))
            right = mul2(X.unit_vector(n2, b), X.unit_vector(n2, d))
            for i, li in enumerate(left):
                if li:
                    for j, rj in enumerate(right):
                        if rj:
                            out[i * n2 + j] += x * y * li * rj
    return tuple(out)


def mutate(h: HomHopfAlgebra, field_name: str, index: Sequence[int], value) -> HomHopfAlgebra:
    """Copy of ``h`` with one entry of one structure tensor replaced."""
    data = getattr(h, field_name)

    def setin(obj, idx, val):
        if not idx:
            return Fraction(val)
        lst = list(obj)
        lst[idx[0]] = setin(obj[idx[0]], idx[1:], val)
        return tuple(lst)

    kwargs = {f: getattr(h, f) for f in ("name", "basis", "mult", "unit", "comult", "counit", "antipode", "alpha")}
    kwargs[field_name] = setin(data, list(index), value)
    kwargs["name"] = f"{h.name}~{field_name}{list(index)}={value}"
    return HomHopfAlgebra(**kwargs)
