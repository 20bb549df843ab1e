"""Boundary BFV data: Ω_∂ = δα_∂ and the generating function S_∂ of the restricted Q.

The boundary of a 3D source is a surface ∂N plus, for every Wilson line Γ_k,
the two endpoints z_k (terminal, sign +1) and z'_k (initial, sign -1).  For
the 1D model the boundary is the endpoint pair of the interval.  Point data
are 0-forms; every point quantity enters the boundary functional with the
orientation sign of its point, so each line contributes one polynomial that
appears twice with opposite signs.

The curve-supported images of ambient fields (Q(A+) = -H on Γ_k) become
point sources on ∂N.  They act only through the surface two-form and only
their 0-form part survives at the point.

S_∂ is found by an exact linear ansatz over canonical monomials of ghost one
(ghost one or three in the Z2-graded 1D model): δS_∂ = ι_{Q_∂}Ω_∂, modulo
exact terms on the surface and exactly at points.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from ..grassmann import GradedPoly
from ..lie import ConfigError
from .bv import VectorField, contract, hamiltonian_vf, variation
from .models import BVModel, WilsonLine

__all__ = [
    "PointTerm",
    "BoundaryAction",
    "BoundaryBFV",
    "boundary_bfv",
    "reference_boundary_forms",
    "solve_in_span",
]

SURFACE = "∂N"


@dataclass(frozen=True)
class PointTerm:
    point: str
    sign: int
    orbit: str
    term: GradedPoly


@dataclass
class BoundaryAction:
    surface_integrand: GradedPoly
    point_terms: list[PointTerm]
    ghost: int = 1

    def lines(self) -> list[str]:
        out: list[str] = []
        for pt in self.point_terms:
            if pt.orbit not in out:
                out.append(pt.orbit)
        return out


@dataclass
class BoundaryBFV:
    """Everything derived on the boundary of one model.

    ``alpha`` and ``omega`` map the surface label and each *line* label to the
    unsigned integrand; the per-point sign lives in the point labels.
    """

    model: BVModel
    alpha: dict[str, GradedPoly]
    omega: dict[str, GradedPoly]
    action: BoundaryAction
    points: list[tuple[str, int, str]]
    checks: dict[str, bool] = field(default_factory=dict)
    residue: dict[str, GradedPoly] = field(default_factory=dict)
    point_cme: dict[str, Fraction] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def solve_in_span(columns: list[GradedPoly], rhs: GradedPoly) -> list[Fraction] | None:
    """Exact coefficients c with Σ c_i columns[i] = rhs, free variables set to 0."""
    basis: dict = {}  # pivot monomial -> (vector, combination)
    keyf = lambda m: [g._key for g in m]  # noqa: E731

    def reduce(v: GradedPoly, combo: dict[int, Fraction]):
        v = v.copy()
        combo = dict(combo)
        while True:
            hits = [m for m in v.terms if m in basis]
            if not hits:
                return v, combo
            m = max(hits, key=keyf)
            c = v.terms[m]
            bv, bc = basis[m]
            v = v - bv * c
            for k, x in bc.items():
                combo[k] = combo.get(k, Fraction(0)) - c * x
    for i, col in enumerate(columns):
        v, combo = reduce(col, {i: Fraction(1)})
        if v:
            piv = max(v.terms, key=keyf)
            inv = 1 / v.terms[piv]
            basis[piv] = (v * inv, {k: x * inv for k, x in combo.items()})
    v, combo = reduce(rhs, {})
    if v:
        return None
    out = [Fraction(0)] * len(columns)
    for k, x in combo.items():
        out[k] -= x
    return out


def _points(model: BVModel) -> list[tuple[str, int, WilsonLine]]:
    out = []
    for w in model.wilson:
        out.append((f"z{w.tag}", 1, w))
        out.append((f"z'{w.tag}", -1, w))
    return out


def _merge(*fields: dict) -> dict:
    out: dict = {}
    for f in fields:
        for k, v in f.items():
            out[k] = out.get(k, GradedPoly()) + v
    return out


def _candidates(model: BVModel, families: list[str], form: int, ghosts: tuple[int, ...], max_weight: int = 3):
    alg = model.alg
    seen = []
    for n in range(1, max_weight + 1):
        for combo in itertools.combinations_with_replacement(sorted(families), n):
            w = tuple(sorted({f: combo.count(f) for f in combo}.items()))
            for gh in ghosts:
                for m in alg._enumerate(form, gh, 0, w):
                    p = GradedPoly({m: 1})
                    if form and alg.normal_form(p) != p:
                        continue
                    seen.append(p)
    return seen


def _solve_action(model: BVModel, cands: list[GradedPoly], omega_X: GradedPoly, form: int, modulo_exact: bool):
    alg = model.alg
    nf = alg.normal_form if modulo_exact else (lambda p: p)
    cols = [nf(alg.delta(c).component(form=form)) for c in cands]
    coeffs = solve_in_span(cols, nf(omega_X))
    if coeffs is None:
        return None
    out = GradedPoly()
    for c, x in zip(cands, coeffs):
        if x:
            out = out + c * x
    return out


def _boundary_vf(model: BVModel, Q: VectorField) -> dict:
    """Ambient Q restricted to the surface: fields of form degree above 2 drop out."""
    keep = {f.name for f in model.fields if f.source == model.bulk and f.form <= 2}
    return {k: v for k, v in Q.get(model.bulk, {}).items() if k[0] in keep}


def boundary_bfv(model: BVModel) -> BoundaryBFV:
    if not model.boundary:
        raise ConfigError(f"{model.name}: source has no boundary")
    alg = model.alg
    var = variation(model)
    Q = hamiltonian_vf(model)
    alpha: dict[str, GradedPoly] = {}
    omega: dict[str, GradedPoly] = {}
    checks: dict[str, bool] = {"variation": all(v.verified for v in var.values())}
    surface = GradedPoly()
    residue: dict[str, GradedPoly] = {}
    three_d = model.source_dim == 3

    if three_d:
        alpha[SURFACE] = var[model.bulk].boundary_one_form.component(form=2)
        omega[SURFACE] = alg.delta(alpha[SURFACE])
        XN = _boundary_vf(model, Q)
        om_X = contract(model, XN, 1, omega[SURFACE]).component(form=2)
        fams = sorted({k[0] for k in XN})
        sol = _solve_action(model, _candidates(model, fams, 2, (1,)), om_X, 2, True)
        checks["surface Hamiltonian"] = sol is not None
        surface = sol if sol is not None else GradedPoly()
    else:
        XN = {}

    point_terms: list[PointTerm] = []
    per_line: dict[str, GradedPoly] = {}
    for w in model.wilson:
        a = var[w.curve].boundary_one_form.component(form=0)
        alpha[w.curve] = a
        omega[w.curve] = alg.delta(a)
        XP = _merge(XN, Q.get(w.curve, {})) if three_d else Q.get(w.curve, {})
        om_X = contract(model, XP, 1, omega[w.curve])
        if three_d:
            om_X = om_X + contract(model, XP, 1, omega[SURFACE])
        om_X = om_X.component(form=0)
        fams = [model.ghost_field, w.H]
        ghosts = (1,) if three_d else (1, 3)
        sol = _solve_action(model, _candidates(model, fams, 0, ghosts), om_X, 0, False)
        checks[f"point Hamiltonian {w.curve}"] = sol is not None
        per_line[w.curve] = sol if sol is not None else GradedPoly()
    for label, sign, w in _points(model):
        point_terms.append(PointTerm(label, sign, w.curve, per_line[w.curve]))

    action = BoundaryAction(surface, point_terms, 1)
    degs = {d[1] % 2 for t in [surface] + [p.term for p in point_terms] for d in t.degrees()}
    checks["ghost 1"] = degs <= {1}

    # {S_∂, S_∂} = Q_∂ S_∂
    point_cme: dict[str, Fraction] = {}
    if three_d:
        r = contract(model, XN, 1, alg.delta(surface)).component(form=2)
        residue[SURFACE] = alg.normal_form(r)
    for label, sign, w in _points(model):
        XP = _merge(XN, Q.get(w.curve, {})) if three_d else Q.get(w.curve, {})
        r = contract(model, XP, 1, alg.delta(per_line[w.curve]))
        if three_d:
            r = r + contract(model, XP, 1, alg.delta(surface))
        r = r.component(form=0)
        residue[label] = r
        c = _casimir_multiple(model, w, r)
        if c is not None:
            point_cme[label] = sign * c
    if not three_d:
        checks["point CME reduces to ±(T0,T0)"] = len(point_cme) == len(residue)
        checks["signed point sum vanishes"] = sum(point_cme.values(), Fraction(0)) == 0
    return BoundaryBFV(model, alpha, omega, action, [(p, s, w.curve) for p, s, w in _points(model)], checks, residue, point_cme)


def _casimir_multiple(model: BVModel, w: WilsonLine, r: GradedPoly) -> Fraction | None:
    """If r = c·(H, H), return c·(T0, T0) (the orbit value of (H, H))."""
    alg = model.alg
    H = alg.field(w.H)
    hh = alg.pair(H, H)
    if not r:
        return Fraction(0)
    m0 = next(iter(hh.terms))
    c = r.terms.get(m0, Fraction(0)) / hh.terms[m0]
    if r != hh * c:
        return None
    return c * sum((x * x for x in w.T0), Fraction(0))


def reference_boundary_forms(model: BVModel) -> dict[str, GradedPoly]:
    """The boundary two-form and action as displayed in the reference derivation.

    Keys: ``omega_surface``, ``action_surface`` (3D only), ``omega_point`` and
    ``action_point`` (per line, unsigned), with H standing for Ad_g T_0 and
    η for δg g^-1.
    """
    alg = model.alg
    half = Fraction(1, 2)
    out: dict[str, GradedPoly] = {}
    c = alg.field(model.ghost_field)
    if model.source_dim == 3:
        A, Ap = alg.field("A"), alg.field("A+")
        dA, dg, dAp = (alg.field(f, "δ") for f in ("A", "γ", "A+"))
        out["omega_surface"] = alg.pair(dA, dA) * half + alg.pair(dg, dAp)
        F = alg.add(alg.d_vec(A), alg.scale(alg.br(A, A), half))
        out["action_surface"] = -(alg.pair(F, c) + alg.pair(Ap, alg.scale(alg.br(c, c), half)))
    for w in model.wilson:
        H, eta = alg.field(w.H), alg.field(w.eta, "δ")
        if model.source_dim == 3:
            out[f"omega_point {w.curve}"] = alg.pair(H, alg.br(eta, eta)) * half
            out[f"action_point {w.curve}"] = -alg.pair(H, c)
        else:
            dpsi = alg.field("ψ", "δ")
            out[f"omega_point {w.curve}"] = alg.pair(dpsi, dpsi) * half - alg.pair(H, alg.br(eta, eta)) * half
            out[f"action_point {w.curve}"] = -alg.pair(c, alg.br(c, c)) * Fraction(1, 6) + alg.pair(H, c)
    return out
