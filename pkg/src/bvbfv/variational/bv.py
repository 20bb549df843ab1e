"""Variations, Hamiltonian vector fields, the local BV bracket and the master equation.

Conventions.  Every generator carries a (p, q) parity, p = form + ghost and
q = delta degree, and the Koszul sign of a swap is (-1)^{p p' + q q'}.  The
variation of an integrand is written with the δ-letter on the left,

    δF = Σ δφ_a · L_a(F) + d(θ),

and the Hamiltonian vector field X_F of a top-form integrand F is the
solution of ι_{X_F} Ω = δF - d(θ), where ι_X is the derivation of parity
(p_X, 1) with ι_X(δφ) = X(φ).  The bracket is {F, G} = ι_{X_F} δG, reduced
modulo exact terms.  With these rules Q = X_S reproduces the gauge
transformations Q(A) = d_A γ and Q(γ) = ½[γ, γ].

Wilson curves are separate strata.  A vector field supported on a curve may
move ambient fields (e.g. Q(A+) picks up -H on Γ); such images carry the
codimension of the curve in their form degree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..grassmann import Generator, GradedPoly, apply_derivation, derive
from .algebra import IBPError
from .models import BVModel

__all__ = [
    "Variation",
    "variation",
    "decompose",
    "restrict",
    "solve_hamiltonian",
    "hamiltonian_vf",
    "contract",
    "bv_bracket",
    "check_cme",
    "CMEReport",
    "HamiltonianReport",
    "check_hamiltonian",
]

Key = tuple  # (family, lie index)
VectorField = dict  # support stratum -> {Key: GradedPoly}


@dataclass
class Variation:
    """δS = Σ δφ·EL_φ + d(θ) on one stratum; EL keyed by (family, index)."""

    stratum: str
    euler_lagrange: dict[Key, GradedPoly]
    boundary_one_form: GradedPoly
    verified: bool


def restrict(poly: GradedPoly, dim: int) -> GradedPoly:
    """Top form-degree part on a stratum of the given dimension."""
    return poly.component(form=dim)


def _delta_letters(poly: GradedPoly) -> list[Generator]:
    return sorted({g for m in poly.terms for g in m if g.delta == 1})


def decompose(model: BVModel, P: GradedPoly) -> tuple[dict[Key, GradedPoly], GradedPoly]:
    """Split a delta-degree-1 integrand as Σ δφ·L_φ + d(θ).

    dδX·B is moved off by parts: dδX·B = d(δX·B) - (-1)^{p(X)} δX·dB.
    """
    alg = model.alg
    lead: dict[Key, GradedPoly] = {}
    theta = GradedPoly()
    for g in _delta_letters(P):
        c = derive(P, g, "left")
        if not c:
            continue
        kinds = alg.families[g.family]
        key = (g.family, g.lie)
        if g in kinds["δ"]:
            lead[key] = lead.get(key, GradedPoly()) + c
        elif g in kinds["dδ"]:
            base = kinds["δ"][g.lie]
            sgn = -1 if base.p else 1
            lead[key] = lead.get(key, GradedPoly()) - alg.d(c) * sgn
            theta = theta + GradedPoly.gen(base) * c
        else:
            raise IBPError(f"unexpected delta letter {g}")
    return {k: v for k, v in lead.items() if v}, theta


def _letter(model: BVModel, key: Key) -> Generator:
    return model.alg.families[key[0]]["δ"][key[1]]


def _recombine(model: BVModel, lead: dict[Key, GradedPoly]) -> GradedPoly:
    out = GradedPoly()
    for k in sorted(lead, key=lambda k: _letter(model, k)._key):
        out = out + GradedPoly.gen(_letter(model, k)) * lead[k]
    return out


def variation(model: BVModel, stratum: str | None = None) -> dict[str, Variation]:
    """Euler-Lagrange derivatives and boundary one-form per stratum, verified by re-expansion."""
    alg = model.alg
    out = {}
    for s in [stratum] if stratum else list(model.action):
        P = alg.delta(model.action[s])
        el, theta = decompose(model, P)
        back = alg.d(theta) + _recombine(model, el)
        out[s] = Variation(s, el, theta, back == P)
    return out


# ---------------------------------------------------------------------------
# Hamiltonian vector fields


def _omega_on(model: BVModel, s: str) -> GradedPoly:
    """Two-form seen by vector fields supported on stratum s."""
    om = model.omega.get(s, GradedPoly())
    if s != model.bulk:
        om = om + model.omega[model.bulk]
    return om


def _p(poly: GradedPoly) -> int:
    return poly.parity()[0] if poly else 0


def _placeholder(model: BVModel, s: str, key: Key, pX: int) -> Generator | None:
    base = _letter(model, key)
    form = base.form
    if s != model.bulk and key[0] in model.ambient():
        form -= model.codim(s)
    if form < 0:
        return None
    return Generator(f"X[{key[0]}]_{key[1]}", form, base.ghost + pX, 0, key[1], "__X", "auxiliary", order=(10**6, key[0], key[1]))


def _iota_images(model: BVModel, X: dict[Key, GradedPoly], pX: int):
    """Image function for ι_X on δ-letters and their d-images."""
    alg = model.alg
    sgn = -1 if pX % 2 else 1
    img: dict[Generator, GradedPoly] = {}
    for key, v in X.items():
        kinds = alg.families[key[0]]
        img[kinds["δ"][key[1]]] = v
        if "dδ" in kinds:
            img[kinds["dδ"][key[1]]] = alg.d(v) * sgn
    return img.get


def contract(model: BVModel, X: dict[Key, GradedPoly], pX: int, P: GradedPoly) -> GradedPoly:
    """ι_X P for a vector field given by its images (derivation of parity (pX, 1))."""
    return apply_derivation(P, _iota_images(model, X, pX), (pX % 2, 1))


def solve_hamiltonian(model: BVModel, F: dict[str, GradedPoly]) -> tuple[VectorField, int]:
    """Solve ι_X Ω = δF - d(θ) stratum by stratum; returns (images, p-parity of X).

    The linear system is triangular in practice: each δ-letter equation is
    solved for the one unknown image that appears with a constant coefficient.
    """
    out: VectorField = {}
    pX = None
    for s, Fs in F.items():
        if not Fs:
            continue
        om = _omega_on(model, s)
        p_here = (_p(Fs) + _p(om)) % 2
        if pX is None:
            pX = p_here
        elif pX != p_here:
            raise ValueError("integrand strata have different parities")
        target = decompose(model, model.alg.delta(Fs))[0]
        keys = sorted({(g.family, g.lie) for m in om.terms for g in m if g.delta == 1})
        unknowns = {}
        for k in keys:
            u = _placeholder(model, s, k, p_here)
            if u is not None:
                unknowns[k] = u
        trial = contract(model, {k: GradedPoly.gen(u) for k, u in unknowns.items()}, p_here, om)
        eqs = decompose(model, trial)[0]
        by_gen = {u: k for k, u in unknowns.items()}
        solved: dict[Generator, GradedPoly] = {}
        pending = set(eqs) | set(target)
        progress = True
        while pending and progress:
            progress = False
            for ek in sorted(pending):
                lhs = eqs.get(ek, GradedPoly()).substitute(lambda g: solved.get(g))
                free = sorted(g for g in lhs.generators() if g in by_gen)
                rhs = target.get(ek, GradedPoly())
                if not free:
                    if lhs != rhs:
                        raise IBPError(f"{s}: δ-letter {ek} equation inconsistent (not Hamiltonian)")
                    pending.discard(ek)
                    progress = True
                    continue
                if len(free) > 1:
                    continue
                u = free[0]
                c = derive(lhs, u, "left")
                if len(c) != 1 or c.degrees() != {(0, 0, 0)}:
                    continue
                coeff = next(iter(c.terms.values()))
                rest = lhs.substitute(lambda g: GradedPoly() if g == u else None)
                solved[u] = (rhs - rest) * (1 / coeff)
                pending.discard(ek)
                progress = True
        if pending:
            raise IBPError(f"{s}: could not solve for the Hamiltonian vector field")
        out[s] = {by_gen[u]: v for u, v in solved.items() if v}
    return out, (pX if pX is not None else 0)


def hamiltonian_vf(model: BVModel) -> VectorField:
    """Q-images per support stratum: ι_Q Ω = δS - d(θ)."""
    return solve_hamiltonian(model, model.action)[0]


@dataclass
class HamiltonianReport:
    ok: bool
    residue: dict[str, GradedPoly]


def check_hamiltonian(model: BVModel, Q: VectorField | None = None) -> HamiltonianReport:
    """Re-expand ι_Q Ω + d(θ) and compare with δS on every stratum."""
    Q = hamiltonian_vf(model) if Q is None else Q
    var = variation(model)
    res = {}
    for s in model.action:
        lhs = model.alg.delta(model.action[s]) - model.alg.d(var[s].boundary_one_form)
        rhs = GradedPoly()
        for s2, imgs in Q.items():
            if s2 == s:
                rhs = rhs + contract(model, imgs, 1, _omega_on(model, s))
        res[s] = restrict(lhs - rhs, model.strata[s])
    return HamiltonianReport(not any(res.values()), res)


# ---------------------------------------------------------------------------
# bracket


def _pair_support(model: BVModel, s1: str, s2: str) -> str | None:
    if s1 == s2:
        return s1
    if s1 == model.bulk:
        return s2
    if s2 == model.bulk:
        return s1
    return None


def bv_bracket(model: BVModel, F, G, normal_form: bool = True) -> dict[str, GradedPoly]:
    """Integrand of {∫F, ∫G} per stratum.

    ``F`` and ``G`` are dicts stratum -> integrand; a bare polynomial means the
    bulk.  If ``G`` is a bare polynomial of less than top form degree it is
    treated as a local function and {F, G} = X_F(G) is returned pointwise.
    """
    if isinstance(F, GradedPoly):
        F = {model.bulk: F}
    if isinstance(G, GradedPoly):
        if G and max(f for f, _, _ in G.degrees()) < model.strata[model.bulk]:
            X, pX = solve_hamiltonian(model, F)
            return {model.bulk: contract(model, X.get(model.bulk, {}), pX, model.alg.delta(G))}
        G = {model.bulk: G}
    X, pX = solve_hamiltonian(model, F)
    amb = model.ambient()
    raw: dict[str, GradedPoly] = {}
    for s1, imgs in X.items():
        for s2, Gs in G.items():
            if not Gs:
                continue
            tgt = _pair_support(model, s1, s2)
            if tgt is None:
                continue
            use = imgs
            if s1 != s2:
                # only ambient fields live on both strata
                use = {k: v for k, v in imgs.items() if k[0] in amb}
            lead = decompose(model, model.alg.delta(Gs))[0]
            if s1 == s2 and s1 != model.bulk:
                clash = [k for k in lead if k[0] in amb and k in imgs]
                if clash:
                    raise IBPError(f"product of two curve-supported ambient variations on {s1}: {clash[0]}")
            val = contract(model, use, pX, _recombine(model, lead))
            raw[tgt] = raw.get(tgt, GradedPoly()) + val
    out = {}
    for s, poly in raw.items():
        r = restrict(poly, model.strata[s])
        out[s] = model.alg.normal_form(r) if normal_form else r
    return out


@dataclass
class CMEReport:
    bulk_residue: dict[str, GradedPoly]
    raw_residue: dict[str, GradedPoly]
    boundary_residue: dict[str, GradedPoly] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.bulk_residue.values())

    def term_count(self) -> int:
        return sum(len(p) for p in self.bulk_residue.values())


def check_cme(model: BVModel) -> CMEReport:
    """½{S, S} per stratum modulo exact terms, before and after the model's relations."""
    br = bv_bracket(model, model.action, model.action)
    raw = {s: p * Fraction(1, 2) for s, p in br.items()}
    red = {s: model.alg.normal_form(p, model.rels(s)) for s, p in raw.items()}
    return CMEReport(red, raw)
