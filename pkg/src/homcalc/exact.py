"""Dense exact linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`, matrices are tuples of
rows, and rank-3 tensors are nested tuples ``t[i][j][k]``.  A matrix ``m``
represents the linear map whose image of the j-th basis vector is column
``j``, so ``mat_vec(m, v)[i] = sum_j m[i][j] * v[j]``.

Nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InputError, SingularMatrix

Scalar = Fraction
Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...]
Tensor3 = tuple

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_scalar(value) -> Fraction:
    """Parse the wire form ``"p/q"`` / ``"p"`` (ints are accepted too)."""
    if isinstance(value, bool):
        raise InputError(f"not a rational scalar: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            if "." in text or "e" in text.lower():
                raise ValueError
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a rational scalar: {value!r}") from None
    raise InputError(f"not a rational scalar: {value!r}")


def format_scalar(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vec(values: Iterable) -> Vector:
    return tuple(Fraction(x) for x in values)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vec(r) for r in rows)


def zeros(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def identity(n: int) -> Matrix:
    return tuple(unit_vector(n, i) for i in range(n))


def zero_matrix(rows: int, cols: int) -> Matrix:
    return tuple(zeros(cols) for _ in range(rows))


def is_zero(v: Sequence) -> bool:
    return not any(v)


def _check_len(u: Sequence, v: Sequence, what: str = "vectors") -> None:
    if len(u) != len(v):
        raise DimensionMismatch(f"{what} of length {len(u)} and {len(v)}")


def add(u: Vector, v: Vector) -> Vector:
    _check_len(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    _check_len(u, v)
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Vector) -> Vector:
    c = Fraction(c)
    if not c:
        return zeros(len(v))
    return tuple(c * a for a in v)


def lincomb(terms: Iterable[tuple], n: int) -> Vector:
    """``sum c * v`` over ``(c, v)`` pairs, all of length ``n``."""
    acc = [ZERO] * n
    for c, v in terms:
        if not c:
            continue
        if len(v) != n:
            raise DimensionMismatch(f"expected length {n}, got {len(v)}")
        for i, a in enumerate(v):
            if a:
                acc[i] += c * a
    return tuple(acc)


def dot(u: Sequence, v: Sequence) -> Fraction:
    _check_len(u, v)
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def shape(m: Matrix) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    for r in m:
        if len(r) != cols:
            raise DimensionMismatch("ragged matrix")
    return rows, cols


def transpose(m: Matrix, cols: int | None = None) -> Matrix:
    if not m:
        return tuple(() for _ in range(cols or 0))
    return tuple(zip(*m))


def mat_vec(m: Matrix, v: Vector) -> Vector:
    rows, cols = shape(m)
    if cols != len(v) and rows:
        raise DimensionMismatch(f"{rows}x{cols} matrix applied to length-{len(v)} vector")
    nz = [(j, x) for j, x in enumerate(v) if x]
    return tuple(sum((row[j] * x for j, x in nz if row[j]), ZERO) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise DimensionMismatch(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    bt = transpose(b) if b else ()
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def from_columns(columns: Sequence[Vector], rows: int) -> Matrix:
    """Matrix whose j-th column is ``columns[j]``."""
    for c in columns:
        if len(c) != rows:
            raise DimensionMismatch(f"column of length {len(c)}, expected {rows}")
    if not columns:
        return tuple(() for _ in range(rows))
    return tuple(zip(*columns))


def column(m: Matrix, j: int) -> Vector:
    return tuple(row[j] for row in m)


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; pivots are taken in column order."""
    work = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(work[0]) if work else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(work)) if work[i][c]), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        p = work[r][c]
        if p != 1:
            work[r] = [x / p for x in work[r]]
        prow = work[r]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [x - f * y if y else x for x, y in zip(work[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def kernel_basis(m: Matrix) -> list[Vector]:
    """Exact null-space basis of ``m``, returned in reduced row echelon form.

    Empty iff ``m`` is injective.  The basis rows are themselves reduced, so
    the output depends only on the kernel, never on how it was reached.
    """
    rows, cols = shape(m)
    if cols == 0:
        return []
    red, pivots = rref(m, cols)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    raw = []
    for f in free:
        v = [ZERO] * cols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        raw.append(v)
    return echelon_basis(raw, cols)


def echelon_basis(vectors: Sequence[Sequence], n: int) -> list[Vector]:
    """Canonical (reduced echelon) basis of the span of ``vectors``."""
    red, _ = rref(list(vectors), n)
    return [tuple(r) for r in red]


def invert(m: Matrix) -> Matrix:
    rows, cols = shape(m)
    if rows != cols:
        raise DimensionMismatch(f"cannot invert a {rows}x{cols} matrix")
    aug = [list(r) + list(unit_vector(rows, i)) for i, r in enumerate(m)]
    red, pivots = rref(aug, rows)
    if pivots != list(range(rows)):
        raise SingularMatrix(
            f"matrix is singular (rank {len(pivots)} < {rows})",
            {"rank": len(pivots), "size": rows},
        )
    return tuple(tuple(r[rows:]) for r in red)


def solve(m: Matrix, b: Vector) -> Vector | None:
    """One solution of ``m x = b`` (free variables set to zero), or None."""
    rows, cols = shape(m)
    if len(b) != rows:
        raise DimensionMismatch("right-hand side has wrong length")
    aug = [list(r) + [b[i]] for i, r in enumerate(m)]
    red, pivots = rref(aug, cols + 1)
    if pivots and pivots[-1] == cols:
        return None
    x = [ZERO] * cols
    for r, p in enumerate(pivots):
        x[p] = red[r][cols]
    return tuple(x)


def contract(t: Tensor3, u: Vector, v: Vector) -> Vector:
    """``w[k] = sum_{i,j} t[i][j][k] u[i] v[j]``."""
    if len(t) != len(u):
        raise DimensionMismatch(f"tensor first index has size {len(t)}, vector {len(u)}")
    if not t:
        return ()
    if len(t[0]) != len(v):
        raise DimensionMismatch(f"tensor second index has size {len(t[0])}, vector {len(v)}")
    n = len(t[0][0]) if t[0] else 0
    acc = [ZERO] * n
    for i, ui in enumerate(u):
        if not ui:
            continue
        ti = t[i]
        for j, vj in enumerate(v):
            if not vj:
                continue
            c = ui * vj
            for k, x in enumerate(ti[j]):
                if x:
                    acc[k] += c * x
    return tuple(acc)


def tensor(u: Vector, v: Vector) -> Vector:
    """Kronecker product, index ``i * len(v) + j``."""
    return tuple(a * b for a in u for b in v)


def kron(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    return tuple(
        tuple(a[i][j] * b[k][l] for j in range(ca) for l in range(cb))
        for i in range(ra)
        for k in range(rb)
    )


def in_span(v: Vector, basis: Sequence[Vector]) -> bool:
    if is_zero(v):
        return True
    if not basis:
        return False
    return rank(list(basis) + [v]) == rank(basis)


def same_span(a: Sequence[Vector], b: Sequence[Vector], n: int) -> bool:
    return echelon_basis(a, n) == echelon_basis(b, n)


def coordinates_in(v: Vector, basis: Sequence[Vector]) -> Vector | None:
    """Coordinates of ``v`` in a linearly independent ``basis`` (None if outside)."""
    n = len(v)
    if not basis:
        return () if is_zero(v) else None
    return solve(from_columns(list(basis), n), v)


def det(m: Matrix) -> Fraction:
    rows, cols = shape(m)
    if rows != cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    work = [list(r) for r in m]
    result = ONE
    for c in range(rows):
        p = next((i for i in range(c, rows) if work[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            work[c], work[p] = work[p], work[c]
            result = -result
        result *= work[c][c]
        for i in range(c + 1, rows):
            if work[i][c]:
                f = work[i][c] / work[c][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    return result


def fmt_vector(v: Sequence) -> list[str]:
    return [format_scalar(x) for x in v]


def fmt_matrix(m: Sequence[Sequence]) -> list[list[str]]:
    return [fmt_vector(r) for r in m]
