"""The full property suite for one algebra and one (optional) right Hom-ideal."""

from __future__ import annotations

from . import exact as X
from .bicov import MODES, check_adjoint_coactions, check_bicovariance, is_bicovariant, verify_lie
from .fodc import (
    FODCPresentation,
    check_coinvariants,
    check_fodc_axioms,
    check_left_covariance,
    quotient_fodc,
    recover_ideal,
    validate_ideal,
)
from .homstruct import AxiomReport, HomHopfAlgebra, check_axioms
from .serialize import round_trips
from .tangent import tangent_space, verify_tangent_identities
from .universal_dc import default_cap, verify_calculus


def run_suite(h: HomHopfAlgebra, ideal=None, cap: int | None = None, samples: int = 20) -> dict:
    """Run every check; returns ``{"subject", "passed", "sections"}`` with one report per section."""
    sections: dict[str, AxiomReport] = {}
    axioms = check_axioms(h, "hopf")
    sections["axioms"] = axioms
    ser = AxiomReport(f"{h.name} spec file")
    ser.add("round_trip", round_trips(h))
    sections["serialization"] = ser
    if not axioms.passed:
        return _finish(h, sections)
    sections["graded_calculus"] = verify_calculus(h.algebra(), cap or default_cap(), samples)
    pres = ideal if isinstance(ideal, FODCPresentation) else FODCPresentation(tuple(tuple(v) for v in ideal or ()))
    basis = validate_ideal(h, pres)
    f = quotient_fodc(h, pres, check=False)
    calc = AxiomReport(f"{f.name}")
    check_fodc_axioms(f, calc)
    check_left_covariance(f, calc)
    check_coinvariants(f, calc)
    if basis:
        calc.note("calculus_dimension", f"dim Γ = {f.dim}")
    else:
        calc.add("universal_dimension", f.dim == h.dim * (h.dim - 1), {"dim": f.dim})
    recovered = list(recover_ideal(f).ideal_basis)
    calc.add("ideal_round_trip", recovered == basis,
             None if recovered == basis else {"given": [X.fmt_vector(v) for v in basis],
                                              "recovered": [X.fmt_vector(v) for v in recovered]})
    sections["fodc"] = calc
    sections["tangent"] = verify_tangent_identities(tangent_space(f))
    sections["adjoint"] = check_adjoint_coactions(h)
    sections["bicovariance"] = check_bicovariance(f)
    if is_bicovariant(f):
        for mode in MODES:
            sections[f"lie_{mode}"] = verify_lie(f, mode)
    else:
        skip = AxiomReport(f"{f.name} quantum Hom-Lie")
        skip.note("bracket_identities", "calculus is not bicovariant")
        sections["lie"] = skip
    return _finish(h, sections)


def _finish(h: HomHopfAlgebra, sections: dict) -> dict:
    return {
        "subject": h.name,
        "passed": all(r.passed for r in sections.values()),
        "sections": sections,
    }


def suite_to_dict(result: dict) -> dict:
    return {
        "subject": result["subject"],
        "passed": result["passed"],
        "sections": {k: v.to_dict() for k, v in result["sections"].items()},
    }
