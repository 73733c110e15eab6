"""Command-line entry point: ``homcalc <command> ...``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for
malformed input (a JSON error object is printed).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import exact as X
from .bicov import MODES, braid_matrix, bracket, is_bicovariant, verify_lie
from .errors import (
    BadParams,
    DegreeCapExceeded,
    DimensionMismatch,
    HomCalcError,
    InputError,
    NotAlphaStable,
    NotInKerEps,
    NotRightHomIdeal,
    UnknownName,
)
from .fodc import (
    FODCPresentation,
    check_coinvariants,
    check_fodc_axioms,
    check_left_covariance,
    quotient_fodc,
    recover_ideal,
    structure_functionals,
)
from .homstruct import LEVELS, AxiomReport, builtin, check_axioms, yau_twist
from .serialize import dumps, load, load_ideal, load_matrix, to_spec
from .tangent import gram_matrix, tangent_space, verify_tangent_identities
from .universal_dc import default_cap, verify_calculus
from .verify import run_suite, suite_to_dict

INPUT_ERRORS = (InputError, DimensionMismatch, UnknownName, BadParams, NotRightHomIdeal,
                NotInKerEps, NotAlphaStable, DegreeCapExceeded)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", choices=("json", "text"), default="json")
    common.add_argument("--out", help="also write the report to this file")
    p = _Parser(prog="homcalc", description="Exact computations with monoidal Hom-Hopf algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[common], help="check the Hom-Hopf axioms")
    s.add_argument("file")
    s.add_argument("--level", choices=LEVELS, default="hopf")

    s = sub.add_parser("twist", parents=[common], help="Yau-twist a classical Hopf algebra")
    s.add_argument("file")
    s.add_argument("--alpha", required=True, help="matrix file for the automorphism")
    s.add_argument("--name")

    s = sub.add_parser("builtin", parents=[common], help="emit a catalog algebra")
    s.add_argument("name")
    s.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")

    for cmd, text in (("fodc", "build a first-order calculus"), ("tangent", "tangent space and pairing"),
                      ("bracket", "quantum Hom-Lie bracket"), ("verify", "run the whole property suite")):
        s = sub.add_parser(cmd, parents=[common], help=text)
        s.add_argument("file")
        s.add_argument("--ideal", help="file with vectors spanning a right Hom-ideal")
        if cmd == "bracket":
            s.add_argument("--braiding", choices=MODES, default="woronowicz")
        if cmd == "verify":
            s.add_argument("--max-degree", type=int, default=None)

    s = sub.add_parser("dc", parents=[common], help="graded universal calculus checks")
    s.add_argument("file")
    s.add_argument("--max-degree", type=int, default=None)
    return p


def _params(raw: list[str]) -> dict:
    out = {}
    for item in raw:
        if "=" not in item:
            raise BadParams(f"parameter {item!r} is not KEY=VALUE")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _ideal(args, h) -> FODCPresentation:
    if not getattr(args, "ideal", None):
        return FODCPresentation(())
    return FODCPresentation(tuple(load_ideal(args.ideal, h.dim)))


def _vecs(vs) -> list:
    return [X.fmt_vector(v) for v in vs]


def _report_dict(rep: AxiomReport) -> dict:
    return rep.to_dict()


def cmd_validate(args) -> tuple[dict, bool]:
    h = load(args.file)
    rep = check_axioms(h, args.level)
    return {"algebra": h.name, "dim": h.dim, "report": rep.to_dict()}, rep.passed


def cmd_twist(args) -> tuple[dict, bool]:
    h = load(args.file)
    a = load_matrix(args.alpha, h.dim)
    return to_spec(yau_twist(h, a, args.name)), True


def cmd_builtin(args) -> tuple[dict, bool]:
    return to_spec(builtin(args.name, **_params(args.param))), True


def _calculus(args):
    h = load(args.file)
    return h, quotient_fodc(h, _ideal(args, h))


def cmd_fodc(args) -> tuple[dict, bool]:
    h, f = _calculus(args)
    rep = AxiomReport(f.name)
    check_fodc_axioms(f, rep)
    check_left_covariance(f, rep)
    check_coinvariants(f, rep)
    sf = structure_functionals(f)
    body = {
        "algebra": h.name,
        "dim_gamma": f.dim,
        "coinvariant_dim": len(f.coinv_basis),
        "basis_labels": list(f.labels),
        "ideal": _vecs(recover_ideal(f).ideal_basis),
        "omega_table": {h.basis[i]: X.fmt_vector(f.omega(h.e(i))) for i in range(h.dim)},
        "coinvariant_basis": _vecs(f.coinv_basis),
        "structure_functionals": {
            "F": {h.basis[k]: X.fmt_matrix(m) for k, m in enumerate(sf["F"])},
            "gamma": X.fmt_matrix(sf["gamma"]),
            "gamma_bar": X.fmt_matrix(sf["gamma_bar"]),
        },
        "bicovariant": is_bicovariant(f),
        "report": rep.to_dict(),
    }
    return body, rep.passed


def cmd_tangent(args) -> tuple[dict, bool]:
    h, f = _calculus(args)
    t = tangent_space(f)
    rep = verify_tangent_identities(t)
    body = {
        "algebra": h.name,
        "tangent_dim": t.dim,
        "basis": _vecs(t.basis),
        "gram": X.fmt_matrix(t.gram),
        "dual_gram": X.fmt_matrix(gram_matrix(t)),
        "omega_dual_basis": _vecs(t.omega_basis),
        "tau": X.fmt_matrix(t.tau),
        "report": rep.to_dict(),
    }
    return body, rep.passed


def cmd_bracket(args) -> tuple[dict, bool]:
    h, f = _calculus(args)
    t = tangent_space(f)
    rep = verify_lie(t, args.braiding)
    table = {}
    for i, x in enumerate(t.basis):
        for j, y in enumerate(t.basis):
            table[f"{i},{j}"] = X.fmt_vector(t.coords(bracket(t, x, y)))
    b = braid_matrix(t, args.braiding)
    body = {
        "algebra": h.name,
        "braiding": args.braiding,
        "tangent_basis": _vecs(t.basis),
        "bracket_table": table,
        "braid": X.fmt_matrix(b.matrix),
        "braid_transpose": X.fmt_matrix(b.transpose),
        "report": rep.to_dict(),
    }
    return body, rep.passed


def cmd_dc(args) -> tuple[dict, bool]:
    h = load(args.file)
    cap = args.max_degree if args.max_degree is not None else default_cap()
    rep = verify_calculus(h.algebra(), cap)
    return {"algebra": h.name, "max_degree": cap, "report": rep.to_dict()}, rep.passed


def cmd_verify(args) -> tuple[dict, bool]:
    h = load(args.file)
    result = run_suite(h, _ideal(args, h), args.max_degree)
    return suite_to_dict(result), result["passed"]


COMMANDS = {
    "validate": cmd_validate,
    "twist": cmd_twist,
    "builtin": cmd_builtin,
    "fodc": cmd_fodc,
    "tangent": cmd_tangent,
    "bracket": cmd_bracket,
    "dc": cmd_dc,
    "verify": cmd_verify,
}


def render_text(obj, indent: int = 0) -> list[str]:
    """Reports become PASS/FAIL/SKIP lines; other data is printed as compact JSON."""
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict) and "checks" in obj and "subject" in obj:
        lines.append(f"{pad}{obj['subject']}: {'PASS' if obj['passed'] else 'FAIL'}")
        for c in obj["checks"]:
            tail = f"  ({c['note']})" if c.get("note") else ""
            lines.append(f"{pad}  {c['status'].upper():4} {c['name']}{tail}")
            if c["status"] == "fail" and c.get("witness"):
                lines.append(f"{pad}       witness: {json.dumps(c['witness'], sort_keys=True, ensure_ascii=False)}")
        return lines
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, dict):
                lines.append(f"{pad}{k}:")
                lines.extend(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v, sort_keys=True, ensure_ascii=False)}")
        return lines
    return [f"{pad}{json.dumps(obj, sort_keys=True, ensure_ascii=False)}"]


def _emit(body: dict, fmt: str, out: str | None) -> None:
    text = dumps(body) if fmt == "json" else "\n".join(render_text(body)) + "\n"
    sys.stdout.write(text)
    if out:
        Path(out).write_text(text, encoding="utf-8")


def main(argv: list[str] | None = None) -> int:
    fmt = "json"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.report
        body, ok = COMMANDS[args.command](args)
        _emit(body, fmt, args.out)
        return 0 if ok else 1
    except INPUT_ERRORS as exc:
        sys.stdout.write(dumps(exc.to_dict()))
        return 2
    except HomCalcError as exc:
        sys.stdout.write(dumps(exc.to_dict()))
        return 1


if __name__ == "__main__":
    sys.exit(main())
