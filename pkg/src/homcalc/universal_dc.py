"""The graded universal differential calculus of a monoidal Hom-algebra.

Degree ``n`` forms live in ``A ⊗ Ā^{⊗n}`` where ``Ā = A / k·1``.  A basis
word ``(i0, j1, ..., jn)`` stands for ``e_{i0} (d e_{j1} (d e_{j2} (...)))``
with the tensor factors nested to the right.  Because the representation is
over the quotient ``Ā``, ``d1 = 0`` holds automatically.

Elements are sparse dictionaries from index tuples to rationals.  Everything
above degree ``cap`` raises :class:`DegreeCapExceeded`.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Iterable, Sequence

from . import exact as X
from .errors import DegreeCapExceeded, DimensionMismatch
from .exact import Fraction, Vector
from .homstruct import AxiomReport, HomAlgebra, HomHopfAlgebra

DEFAULT_CAP = 4


def default_cap() -> int:
    raw = os.environ.get("HOMCALC_MAX_DEGREE")
    if raw is None:
        return DEFAULT_CAP
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_CAP
    return value if value >= 1 else DEFAULT_CAP


class AbarBasis:
    """Complement of the unit line: the quotient ``Ā`` in coordinates.

    The unit's first nonzero coordinate ``p`` is the pivot; the remaining
    standard basis vectors ``e_j`` (``j != p``) project to a basis of ``Ā``.
    """

    def __init__(self, alg: HomAlgebra):
        unit = alg.unit
        nz = [i for i, c in enumerate(unit) if c]
        if not nz:
            raise DimensionMismatch("unit is the zero vector")
        self.dim = alg.dim
        self.unit = unit
        self.pivot = nz[0]
        self.lift_index = tuple(j for j in range(self.dim) if j != self.pivot)
        self.size = len(self.lift_index)
        abar = []
        for j in self.lift_index:
            abar.append(self.project(alg.a(X.unit_vector(self.dim, j))))
        # column convention, like every other matrix in the package
        self.alpha_bar = X.from_columns(abar, self.size) if abar else ()

    def project(self, v: Vector) -> Vector:
        """Image of ``v`` in ``Ā``; kills exactly the multiples of 1."""
        c = v[self.pivot]
        if c:
            f = c / self.unit[self.pivot]
            return tuple(v[j] - f * self.unit[j] for j in self.lift_index)
        return tuple(v[j] for j in self.lift_index)

    def lift(self, j: int) -> Vector:
        return X.unit_vector(self.dim, self.lift_index[j])

    def labels(self, basis: Sequence[str]) -> list[str]:
        return [f"{basis[j]}~" for j in self.lift_index]


@dataclass(frozen=True)
class GradedElement:
    """An element of ``Ω^n(A)`` as a sparse map from basis words to rationals."""

    degree: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        for key in self.terms:
            if len(key) != self.degree + 1:
                raise DimensionMismatch(f"word {key} has wrong length for degree {self.degree}")

    def __eq__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.terms.items()))))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "GradedElement") -> "GradedElement":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise DimensionMismatch(f"cannot add degrees {self.degree} and {other.degree}")
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, X.ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return GradedElement(self.degree, out)

    def __neg__(self):
        return GradedElement(self.degree, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c) -> "GradedElement":
        c = Fraction(c)
        if not c:
            return GradedElement(self.degree, {})
        return GradedElement(self.degree, {k: c * v for k, v in self.terms.items()})

    def coords(self, dim: int, abar: int) -> Vector:
        """Dense coordinates; word ``(i0, j1..jn)`` sits at its mixed-radix index."""
        out = [X.ZERO] * (dim * abar ** self.degree)
        for key, c in self.terms.items():
            idx = key[0]
            for j in key[1:]:
                idx = idx * abar + j
            out[idx] = c
        return tuple(out)

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [[list(k), X.format_scalar(c)] for k, c in sorted(self.terms.items())],
        }


def _accumulate(acc: dict, key: tuple, c: Fraction) -> None:
    s = acc.get(key, X.ZERO) + c
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


class UniversalCalculus:
    """Graded universal calculus ``Ω(A)`` up to degree ``cap``."""

    def __init__(self, alg, cap: int | None = None):
        if isinstance(alg, HomHopfAlgebra):
            alg = alg.algebra()
        self.alg: HomAlgebra = alg
        self.cap = default_cap() if cap is None else cap
        self.abar = AbarBasis(alg)
        self.n = alg.dim
        self.m = self.abar.size
        self._apow: dict = {}
        self._products: dict = {}

    # -- scalars in A ------------------------------------------------------

    def e(self, i: int) -> Vector:
        return X.unit_vector(self.n, i)

    def a(self, v: Vector, k: int = 1) -> Vector:
        if k == 0:
            return v
        key = (v, k)
        hit = self._apow.get(key)
        if hit is None:
            hit = self.alg.a(v, k)
            self._apow[key] = hit
        return hit

    def mul(self, u: Vector, v: Vector) -> Vector:
        key = (u, v)
        hit = self._products.get(key)
        if hit is None:
            hit = self.alg.mul(u, v)
            self._products[key] = hit
        return hit

    # -- construction ------------------------------------------------------

    def _check_degree(self, n: int) -> None:
        if n > self.cap:
            raise DegreeCapExceeded(f"degree {n} exceeds cap {self.cap}", {"degree": n, "cap": self.cap})

    def zero(self, degree: int) -> GradedElement:
        return GradedElement(degree, {})

    def scalar(self, a: Vector) -> GradedElement:
        if len(a) != self.n:
            raise DimensionMismatch(f"expected an element of length {self.n}")
        return GradedElement(0, {(i,): c for i, c in enumerate(a) if c})

    def word(self, a0: Vector, xs: Sequence[Vector]) -> GradedElement:
        """``a0 ⊗ x̄1 ⊗ ... ⊗ x̄n`` for elements ``a0, xi`` of ``A``."""
        self._check_degree(len(xs))
        acc = {(i,): c for i, c in enumerate(a0) if c}
        for x in xs:
            px = [(j, c) for j, c in enumerate(self.abar.project(x)) if c]
            if not px or not acc:
                return self.zero(len(xs))
            acc = {k + (j,): c * d for k, c in acc.items() for j, d in px}
        return GradedElement(len(xs), {k: c for k, c in acc.items() if c})

    def basis_word(self, key: tuple) -> GradedElement:
        return GradedElement(len(key) - 1, {tuple(key): X.ONE})

    def basis(self, degree: int) -> list[GradedElement]:
        self._check_degree(degree)
        keys = iproduct(range(self.n), *([range(self.m)] * degree))
        return [self.basis_word(k) for k in keys]

    def unpack(self, key: tuple) -> tuple[Vector, list[Vector]]:
        return self.e(key[0]), [self.abar.lift(j) for j in key[1:]]

    def _linear(self, w: GradedElement, fn, degree: int) -> GradedElement:
        """Extend ``fn(a0, xs) -> GradedElement`` linearly over the words of ``w``."""
        acc: dict = {}
        for key, c in w.terms.items():
            a0, xs = self.unpack(key)
            for k, v in fn(a0, xs).terms.items():
                _accumulate(acc, k, c * v)
        return GradedElement(degree, acc)

    def from_coords(self, degree: int, coords: Sequence) -> GradedElement:
        size = self.n * self.m ** degree
        if len(coords) != size:
            raise DimensionMismatch(f"degree-{degree} forms need {size} coordinates")
        terms = {}
        for idx, c in enumerate(coords):
            c = Fraction(c)
            if not c:
                continue
            key = []
            for _ in range(degree):
                idx, r = divmod(idx, self.m)
                key.append(r)
            key.append(idx)
            terms[tuple(reversed(key))] = c
        return GradedElement(degree, terms)

    # -- the automorphism and the differential ----------------------------

    def gamma(self, w: GradedElement, k: int = 1) -> GradedElement:
        """``α ⊗ ᾱ^{⊗n}`` applied ``k`` times (negative ``k`` for the inverse)."""
        return self._linear(w, lambda a0, xs: self.word(self.a(a0, k), [self.a(x, k) for x in xs]), w.degree)

    def d0(self, a: Vector) -> GradedElement:
        """``da = 1⊗α⁻¹(a) − α⁻¹(a)⊗1``, i.e. ``1 ⊗ (α⁻¹a)‾``."""
        self._check_degree(1)
        return self.word(self.alg.unit, [self.a(a, -1)])

    def d(self, w: GradedElement) -> GradedElement:
        """``a0⊗x̄1⊗...⊗x̄n ↦ 1⊗(α⁻¹a0)‾⊗(α⁻¹x1)‾⊗...⊗(α⁻¹xn)‾``."""
        self._check_degree(w.degree + 1)
        unit = self.alg.unit
        return self._linear(
            w, lambda a0, xs: self.word(unit, [self.a(a0, -1)] + [self.a(x, -1) for x in xs]), w.degree + 1
        )

    # -- bimodule structure ------------------------------------------------

    def left_mult(self, b: Vector, w: GradedElement) -> GradedElement:
        """``b·(a0 da1 ...) = (α⁻¹(b)a0)(d α(a1) ...)``; the product in degree 0."""
        if w.degree == 0:
            return self._linear(w, lambda a0, xs: self.scalar(self.mul(b, a0)), 0)
        bb = self.a(b, -1)
        return self._linear(w, lambda a0, xs: self.word(self.mul(bb, a0), [self.a(x) for x in xs]), w.degree)

    def right_mult(self, w: GradedElement, b: Vector) -> GradedElement:
        """Right action by ``b``: closed formulas per degree (general one from 4 on)."""
        n = w.degree
        if n == 0:
            return self._linear(w, lambda a0, xs: self.scalar(self.mul(a0, b)), 0)
        return self._linear(w, lambda a0, xs: self._right_word(a0, xs, b), n)

    def _right_word(self, a0: Vector, xs: list[Vector], b: Vector) -> GradedElement:
        A, M, W = self.a, self.mul, self.word
        n = len(xs)
        if n == 1:
            (a1,) = xs
            return W(A(a0), [M(a1, A(b, -1))]) - W(M(a0, a1), [b])
        if n == 2:
            a1, a2 = xs
            bi = A(b, -1)
            return (
                W(A(a0), [A(a1), M(a2, A(b, -2))])
                - W(A(a0), [M(a1, a2), bi])
                + W(M(a0, A(a1)), [A(a2), bi])
            )
        if n == 3:
            a1, a2, a3 = xs
            b2 = A(b, -2)
            return (
                W(A(a0), [A(a1), A(a2), M(a3, A(b, -3))])
                - W(A(a0), [A(a1), M(a2, a3), b2])
                + W(A(a0), [M(a1, A(a2)), A(a3), b2])
                - W(M(a0, A(a1)), [A(a2, 2), A(a3), b2])
            )
        return self._right_general(a0, xs, b)

    def _right_general(self, a0: Vector, xs: list[Vector], b: Vector) -> GradedElement:
        A, M, W = self.a, self.mul, self.word
        n = len(xs)
        a = [a0] + list(xs)
        tail = A(b, -(n - 1))
        sign = 1 if n % 2 == 0 else -1
        total = W(M(a[0], A(a[1])), [A(a[k], 2) for k in range(2, n)] + [A(a[n]), tail]).scaled(sign)
        for i in range(1, n - 2):
            s = 1 if (n - i) % 2 == 0 else -1
            slots = [A(a[k]) for k in range(1, i)] + [M(a[i], A(a[i + 1]))]
            slots += [A(a[k], 2) for k in range(i + 2, n)] + [A(a[n]), tail]
            total = total + W(A(a[0]), slots).scaled(s)
        slots = [A(a[k]) for k in range(1, n - 2)] + [M(a[n - 2], A(a[n - 1])), A(a[n]), tail]
        total = total + W(A(a[0]), slots)
        slots = [A(a[k]) for k in range(1, n - 1)] + [M(a[n - 1], a[n]), tail]
        total = total - W(A(a[0]), slots)
        slots = [A(a[k]) for k in range(1, n)] + [M(a[n], A(b, -n))]
        return total + W(A(a[0]), slots)

    def right_mult_inductive(self, w: GradedElement, b: Vector) -> GradedElement:
        """Right action derived only from the bimodule and balancing laws.

        Moving ``c`` leftwards through ``dy`` uses ``dy·c = d(yc) − y·dc``;
        pulling a scalar out of a tensor slot uses the Hom-associator.  Used
        as an independent cross-check of the closed formulas.
        """
        if w.degree == 0:
            return self.right_mult(w, b)
        return self._linear(w, lambda a0, xs: self._inductive_word(a0, xs, b), w.degree)

    def _inductive_word(self, a0, xs, b) -> GradedElement:
        n = len(xs)
        total = self.zero(n)
        for coeff_vec, ys in self._push(list(xs), self.a(b, -1)):
            if coeff_vec is None:
                total = total + self.word(self.a(a0), ys)
            else:
                total = total + self.word(self.mul(a0, coeff_vec), [self.a(y) for y in ys])
        return total

    def _push(self, ys: list[Vector], c: Vector) -> list:
        """Terms ``(a, zs)`` meaning ``a·(dz1(...))``; ``a is None`` means no prefactor."""
        if len(ys) == 1:
            (y,) = ys
            return [(None, [self.mul(y, c)]), (X.scale(-1, y), [c])]
        head = self.a(ys[0])
        out = []
        for coeff_vec, zs in self._push(ys[1:], self.a(c, -1)):
            if coeff_vec is None:
                out.append((None, [head] + zs))
            else:
                out.append((None, [self.mul(self.a(head, -1), coeff_vec)] + [self.a(z) for z in zs]))
                out.append((X.scale(-1, head), [coeff_vec] + zs))
        return out

    # -- product ----------------------------------------------------------

    def product(self, w: GradedElement, v: GradedElement) -> GradedElement:
        """Graded product of two forms; degrees add."""
        n, k = w.degree, v.degree
        self._check_degree(n + k)
        if n == 0:
            acc = self.zero(k)
            for (i0,), c in w.terms.items():
                acc = acc + self.left_mult(self.e(i0), v).scaled(c)
            return acc
        if k == 0:
            acc = self.zero(n)
            for (i0,), c in v.terms.items():
                acc = acc + self.right_mult(w, self.e(i0)).scaled(c)
            return acc
        pre = self.gamma(w, -1)
        acc: dict = {}
        shift = 1 - n
        for key, c in v.terms.items():
            a_next, rest = self.unpack(key)
            tail = [self.a(x, shift) for x in rest]
            q = self.right_mult(pre, a_next)
            for qkey, qc in q.terms.items():
                c0, cs = self.unpack(qkey)
                slots = [self.a(x) for x in cs[:-1]] + [cs[-1]] + tail
                for wk, wc in self.word(self.a(c0), slots).terms.items():
                    _accumulate(acc, wk, c * qc * wc)
        return GradedElement(n + k, acc)


# -- module-level conveniences ---------------------------------------------

def d0(calc: UniversalCalculus, a: Vector) -> GradedElement:
    return calc.d0(a)


def d_graded(calc: UniversalCalculus, w: GradedElement) -> GradedElement:
    return calc.d(w)


def left_mult(calc: UniversalCalculus, b: Vector, w: GradedElement) -> GradedElement:
    return calc.left_mult(b, w)


def right_mult(calc: UniversalCalculus, w: GradedElement, b: Vector) -> GradedElement:
    return calc.right_mult(w, b)


def product(calc: UniversalCalculus, w: GradedElement, v: GradedElement) -> GradedElement:
    return calc.product(w, v)


# -- checks ----------------------------------------------------------------

def _first_failure(report: AxiomReport, name: str, cases: Iterable, test) -> None:
    for case in cases:
        bad = test(*case)
        if bad is not None:
            report.add(name, False, bad)
            return
    report.add(name, True)


def _elem_witness(at, lhs: GradedElement, rhs: GradedElement) -> dict:
    return {"at": at, "lhs": lhs.to_dict(), "rhs": rhs.to_dict()}


def check_d_squared(calc: UniversalCalculus, report: AxiomReport) -> None:
    def test(w):
        dd = calc.d(calc.d(w))
        return None if dd.is_zero() else _elem_witness(sorted(w.terms), dd, calc.zero(dd.degree))

    cases = [(w,) for n in range(calc.cap - 1) for w in calc.basis(n)]
    _first_failure(report, "d_squared_zero", cases, test)


def check_d_gamma(calc: UniversalCalculus, report: AxiomReport) -> None:
    def test(w):
        lhs, rhs = calc.d(calc.gamma(w)), calc.gamma(calc.d(w))
        return None if lhs == rhs else _elem_witness(sorted(w.terms), lhs, rhs)

    cases = [(w,) for n in range(calc.cap) for w in calc.basis(n)]
    _first_failure(report, "d_commutes_with_gamma", cases, test)


def check_leibniz(calc: UniversalCalculus, report: AxiomReport, max_total: int | None = None) -> None:
    """``d(ww') = (dw)w' + (−1)^n w(dw')`` for basis pairs with ``n + k ≤ max_total``."""
    if max_total is None:
        max_total = calc.cap - 1

    def test(w, v):
        n = w.degree
        lhs = calc.d(calc.product(w, v))
        rhs = calc.product(calc.d(w), v)
        second = calc.product(w, calc.d(v))
        rhs = rhs + (second if n % 2 == 0 else -second)
        return None if lhs == rhs else _elem_witness([sorted(w.terms), sorted(v.terms)], lhs, rhs)

    def cases():
        for total in range(max_total + 1):
            for n in range(total + 1):
                for w in calc.basis(n):
                    for v in calc.basis(total - n):
                        yield w, v

    _first_failure(report, "graded_leibniz", cases(), test)


def check_derivative_of_monomials(calc: UniversalCalculus, report: AxiomReport) -> None:
    """``d(a0 da1 ... dan) = da0 (da1 (... dan))`` on basis words."""

    def nested(vecs):
        acc = calc.d0(vecs[-1])
        for x in reversed(vecs[:-1]):
            acc = calc.product(calc.d0(x), acc)
        return acc

    def test(w):
        (key,) = w.terms
        a0, xs = calc.unpack(key)
        lhs = calc.d(w)
        rhs = nested([a0] + xs)
        return None if lhs == rhs else _elem_witness(list(key), lhs, rhs)

    cases = [(w,) for n in range(calc.cap) for w in calc.basis(n)]
    _first_failure(report, "derivative_of_monomials", cases, test)


def omega1_tensor_square(calc: UniversalCalculus) -> list[Vector]:
    """Span of ``a·db`` inside ``A⊗A`` with ``a·(x⊗y) = α⁻¹(a)x ⊗ α(y)``."""
    alg, n = calc.alg, calc.n
    out = []
    for i in range(n):
        ai = calc.a(calc.e(i), -1)
        for j in range(n):
            bj = calc.a(calc.e(j), -1)
            db = X.sub(X.tensor(alg.unit, bj), X.tensor(bj, alg.unit))
            acc = [X.ZERO] * (n * n)
            for p, c in enumerate(db):
                if not c:
                    continue
                x, y = divmod(p, n)
                left = calc.mul(ai, calc.e(x))
                right = calc.a(calc.e(y))
                for q, t in enumerate(X.tensor(left, right)):
                    if t:
                        acc[q] += c * t
            out.append(tuple(acc))
    return out


def check_omega1_kernel(calc: UniversalCalculus, report: AxiomReport) -> None:
    alg, n = calc.alg, calc.n
    cols = [alg.mul(calc.e(i), calc.e(j)) for i in range(n) for j in range(n)]
    kernel = X.kernel_basis(X.from_columns(cols, n))
    span = X.echelon_basis(omega1_tensor_square(calc), n * n)
    ok = X.same_span(span, kernel, n * n) and len(kernel) == n * calc.m
    wit = None if ok else {"kernel_dim": len(kernel), "span_dim": len(span)}
    report.add("omega1_equals_ker_m", ok, wit)


def random_element(calc: UniversalCalculus, degree: int, rng: random.Random, density: float = 0.3) -> GradedElement:
    """Pseudo-random form with small integer coefficients."""
    terms = {}
    for key in iproduct(range(calc.n), *([range(calc.m)] * degree)):
        if rng.random() < density:
            c = rng.randint(-3, 3)
            if c:
                terms[key] = Fraction(c)
    return GradedElement(degree, terms)


def random_scalar(calc: UniversalCalculus, rng: random.Random) -> Vector:
    return tuple(Fraction(rng.randint(-3, 3)) for _ in range(calc.n))


def check_right_action(calc: UniversalCalculus, report: AxiomReport, samples: int = 20, seed: int = 0) -> None:
    """Closed-form right action against the inductive one, on every degree up to the cap."""
    rng = random.Random(seed)
    for n in range(1, calc.cap + 1):
        name = f"right_action_closed_form_deg{n}"

        def cases():
            for _ in range(samples):
                yield random_element(calc, n, rng), random_scalar(calc, rng)

        def test(w, b):
            lhs, rhs = calc.right_mult(w, b), calc.right_mult_inductive(w, b)
            return None if lhs == rhs else _elem_witness({"w": w.to_dict(), "b": X.fmt_vector(b)}, lhs, rhs)

        _first_failure(report, name, cases(), test)


def check_bimodule(calc: UniversalCalculus, report: AxiomReport, samples: int = 20, seed: int = 1) -> None:
    """Hom-bimodule laws on sampled forms in every degree up to the cap."""
    rng = random.Random(seed)
    alg = calc.alg
    unit = alg.unit
    trials = []
    for _ in range(samples):
        for n in range(calc.cap + 1):
            trials.append((random_element(calc, n, rng), random_scalar(calc, rng), random_scalar(calc, rng)))

    def left_law(w, b, c):
        lhs = calc.left_mult(calc.a(b), calc.left_mult(c, w))
        rhs = calc.left_mult(calc.mul(b, c), calc.gamma(w))
        return None if lhs == rhs else _elem_witness(w.degree, lhs, rhs)

    def right_law(w, b, c):
        lhs = calc.right_mult(calc.right_mult(w, b), calc.a(c))
        rhs = calc.right_mult(calc.gamma(w), calc.mul(b, c))
        return None if lhs == rhs else _elem_witness(w.degree, lhs, rhs)

    def mixed(w, b, c):
        lhs = calc.left_mult(calc.a(b), calc.right_mult(w, c))
        rhs = calc.right_mult(calc.left_mult(b, w), calc.a(c))
        return None if lhs == rhs else _elem_witness(w.degree, lhs, rhs)

    def units(w, b, c):
        g = calc.gamma(w)
        lhs, rhs = calc.left_mult(unit, w), calc.right_mult(w, unit)
        if lhs != g:
            return _elem_witness(w.degree, lhs, g)
        return None if rhs == g else _elem_witness(w.degree, rhs, g)

    _first_failure(report, "bimodule_left_hom_module", trials, left_law)
    _first_failure(report, "bimodule_right_hom_module", trials, right_law)
    _first_failure(report, "bimodule_compatibility", trials, mixed)
    _first_failure(report, "bimodule_unit", trials, units)


def verify_calculus(alg, cap: int | None = None, samples: int = 20, leibniz_total: int | None = None) -> AxiomReport:
    """Every structural identity of the graded calculus, up to the degree cap."""
    calc = alg if isinstance(alg, UniversalCalculus) else UniversalCalculus(alg, cap)
    name = getattr(alg, "name", "algebra")
    rep = AxiomReport(f"universal calculus of {name} (cap {calc.cap})")
    if calc.cap < 2:
        raise DegreeCapExceeded("the graded checks need a degree cap of at least 2", {"cap": calc.cap})
    check_d_squared(calc, rep)
    check_d_gamma(calc, rep)
    check_omega1_kernel(calc, rep)
    check_right_action(calc, rep, samples)
    check_bimodule(calc, rep, samples=max(4, samples // 4))
    check_leibniz(calc, rep, leibniz_total)
    check_derivative_of_monomials(calc, rep)
    return rep
