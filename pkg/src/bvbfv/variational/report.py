"""JSON-ready reports for the CLI and the golden files."""
from __future__ import annotations

from typing import Any

from .boundary import BoundaryBFV, boundary_bfv, reference_boundary_forms
from .bv import check_cme, check_hamiltonian, variation
from .models import BVModel


def _terms(poly) -> list[str]:
    return [str(p) for p in _split(poly)]


def _split(poly):
    from ..grassmann import GradedPoly

    return [GradedPoly({m: c}) for m, c in sorted(poly.terms.items(), key=lambda t: [g._key for g in t[0]])]


def cme_report(model: BVModel) -> dict[str, Any]:
    rep = check_cme(model)
    ham = check_hamiltonian(model)
    var = variation(model)
    checks = [
        {"name": "variation re-expansion", "ok": all(v.verified for v in var.values())},
        {"name": "Hamiltonian condition", "ok": ham.ok},
        {"name": "classical master equation", "ok": rep.ok},
    ]
    return {
        "schema": 1,
        "model": model.name,
        "cmeBulkResidueTermCount": rep.term_count(),
        "ok": rep.ok and ham.ok,
        "residue": {s: str(p) for s, p in sorted(rep.bulk_residue.items())},
        "rawResidue": {s: str(p) for s, p in sorted(rep.raw_residue.items())},
        "checks": checks,
    }


def compare_with_reference(b: BoundaryBFV) -> dict[str, bool]:
    """Term-by-term agreement with the reference displays (unsigned per-line point data)."""
    ref = reference_boundary_forms(b.model)
    alg = b.model.alg
    out: dict[str, bool] = {}
    if "omega_surface" in ref:
        out["omega_surface"] = b.omega["∂N"] == ref["omega_surface"]
        out["action_surface"] = not alg.normal_form(b.action.surface_integrand - ref["action_surface"])
    per_line = {pt.orbit: pt.term for pt in b.action.point_terms}
    for w in b.model.wilson:
        out[f"omega_point {w.curve}"] = b.omega[w.curve] == ref[f"omega_point {w.curve}"]
        out[f"action_point {w.curve}"] = per_line[w.curve] == ref[f"action_point {w.curve}"]
    return out


def boundary_report(model: BVModel) -> dict[str, Any]:
    b = boundary_bfv(model)
    return {
        "schema": 1,
        "model": model.name,
        "ok": b.ok,
        "omegaBoundary": {k: _terms(v) for k, v in b.omega.items()},
        "boundaryAction": {
            "ghost": b.action.ghost,
            "surface": _terms(b.action.surface_integrand),
            "points": [{"point": p.point, "sign": p.sign, "line": p.orbit, "term": str(p.term)} for p in b.action.point_terms],
        },
        "boundaryResidue": {k: str(v) for k, v in b.residue.items()},
        "pointMasterEquation": {k: str(v) for k, v in b.point_cme.items()},
        "checks": [{"name": k, "ok": v} for k, v in b.checks.items()],
        "referenceAgreement": compare_with_reference(b),
    }
