"""JSON structure-constant files.

Tensors are written as sparse lists of ``[i, j, k, "p/q"]`` entries (zero
entries omitted), vectors and matrices as lists of ``"p/q"`` strings.  The
``mult`` entry ``[i, j, k, c]`` means ``e_i e_j`` has coefficient ``c`` on
``e_k``; the ``comult`` entry ``[k, i, j, c]`` means ``Δ(e_k)`` has
coefficient ``c`` on ``e_i⊗e_j``.  Matrices use the column convention.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import exact as X
from .errors import DimensionMismatch, InputError
from .homstruct import HomHopfAlgebra

FIELD = "Q"


def _sparse(t) -> list:
    n = len(t)
    return [[i, j, k, X.format_scalar(t[i][j][k])]
            for i in range(n) for j in range(n) for k in range(n) if t[i][j][k]]


def to_spec(h: HomHopfAlgebra) -> dict:
    return {
        "name": h.name,
        "dim": h.dim,
        "basis": list(h.basis),
        "field": FIELD,
        "mult": _sparse(h.mult),
        "unit": X.fmt_vector(h.unit),
        "comult": _sparse(h.comult),
        "counit": X.fmt_vector(h.counit),
        "antipode": X.fmt_matrix(h.antipode),
        "alpha": X.fmt_matrix(h.alpha),
    }


def _need(doc: dict, key: str):
    if key not in doc:
        raise InputError(f"missing field {key!r}")
    return doc[key]


def parse_vector(raw, n: int, what: str) -> tuple:
    if not isinstance(raw, list):
        raise InputError(f"{what} must be a list")
    if len(raw) != n:
        raise InputError(f"{what} must have {n} entries, got {len(raw)}")
    return tuple(X.parse_scalar(x) for x in raw)


def parse_matrix(raw, n: int, what: str) -> tuple:
    if not isinstance(raw, list) or len(raw) != n:
        raise InputError(f"{what} must be a list of {n} rows")
    return tuple(parse_vector(r, n, f"{what} row") for r in raw)


def _dense(entries, n: int, what: str) -> tuple:
    if not isinstance(entries, list):
        raise InputError(f"{what} must be a list of [i, j, k, scalar] entries")
    t = [[[X.ZERO] * n for _ in range(n)] for _ in range(n)]
    for e in entries:
        if not isinstance(e, list) or len(e) != 4:
            raise InputError(f"bad {what} entry {e!r}")
        i, j, k, c = e
        for idx in (i, j, k):
            if isinstance(idx, bool) or not isinstance(idx, int) or not 0 <= idx < n:
                raise InputError(f"{what} index out of range in {e!r}", {"entry": e, "dim": n})
        t[i][j][k] += X.parse_scalar(c)
    return tuple(tuple(tuple(r) for r in m) for m in t)


def from_spec(doc) -> HomHopfAlgebra:
    if not isinstance(doc, dict):
        raise InputError("spec file must hold a JSON object")
    basis = _need(doc, "basis")
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        raise InputError("basis must be a list of labels")
    n = len(basis)
    if "dim" in doc and doc["dim"] != n:
        raise InputError(f"dim {doc['dim']!r} disagrees with {n} basis labels")
    if doc.get("field", FIELD) != FIELD:
        raise InputError(f"only the field {FIELD!r} is supported")
    try:
        return HomHopfAlgebra(
            name=str(doc.get("name", "algebra")),
            basis=tuple(basis),
            mult=_dense(_need(doc, "mult"), n, "mult"),
            unit=parse_vector(_need(doc, "unit"), n, "unit"),
            comult=_dense(_need(doc, "comult"), n, "comult"),
            counit=parse_vector(_need(doc, "counit"), n, "counit"),
            antipode=parse_matrix(_need(doc, "antipode"), n, "antipode"),
            alpha=parse_matrix(_need(doc, "alpha"), n, "alpha"),
        )
    except DimensionMismatch as exc:
        raise InputError(str(exc), exc.witness) from None


def dumps(obj) -> str:
    """Deterministic JSON text (sorted keys, fixed indentation, trailing newline)."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, default=_plain) + "\n"


def _plain(obj):
    if isinstance(obj, X.Fraction):
        return X.format_scalar(obj)
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def read_json(path) -> object:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from None


def load(path) -> HomHopfAlgebra:
    return from_spec(read_json(path))


def dump(h: HomHopfAlgebra, path) -> None:
    Path(path).write_text(dumps(to_spec(h)), encoding="utf-8")


def load_matrix(path, n: int) -> tuple:
    """A bare matrix or ``{"alpha": matrix}``."""
    doc = read_json(path)
    if isinstance(doc, dict):
        doc = doc.get("alpha", doc.get("matrix"))
    return parse_matrix(doc, n, "alpha")


def load_ideal(path, n: int) -> list:
    """A bare list of vectors or ``{"ideal": [...]}``."""
    doc = read_json(path)
    if isinstance(doc, dict):
        doc = doc.get("ideal", doc.get("ideal_basis"))
    if not isinstance(doc, list):
        raise InputError("ideal file must hold a list of vectors")
    return [parse_vector(v, n, "ideal vector") for v in doc]


def round_trips(h: HomHopfAlgebra) -> bool:
    """Emit, re-parse through JSON text, and compare."""
    return from_spec(json.loads(dumps(to_spec(h)))) == h

