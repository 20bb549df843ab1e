"""BV models of Chern-Simons theory in three and one dimensions, with Wilson lines.

A model is stratified: the bulk source carries the ambient integrand and each
Wilson curve carries its own auxiliary integrand.  Restriction of a bulk
integrand to a curve keeps the polynomial and truncates to the curve's top
form degree, which is how delta currents are avoided altogether.

Sign of Ω.  Vector fields contract into the first slot with bigraded Koszul
signs (see ``bv.py``).  With that rule ι_QΩ = δS and Q(A) = d_A γ hold
together only if Ω carries the overall sign opposite to the usual display,
so the stored two-forms are

    3D:  (δγ, δγ+) - (δA, δA+)        1D:  -(δψ, δA)

and the orbit sector adds ``aux_sign * δ(g+, δg g^-1)`` where ``aux_sign`` is
the coefficient of the ghost/antifield pairing of the ambient model
((δγ, δγ+) in 3D, (δψ, δA) in 1D, with ψ the ghost and A its antifield).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..grassmann import GradedPoly
from ..lie import ConfigError, LieAlgebra
from .algebra import LocalAlgebra

__all__ = ["FieldSpec", "WilsonLine", "BVModel", "build_cs3", "build_cs1", "attach_wilson"]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class FieldSpec:
    name: str
    lie_valued: bool
    form: int
    ghost: int
    source: str
    relations: tuple[str, ...] = ()

    @property
    def total(self) -> int:
        return self.form + self.ghost


@dataclass
class WilsonLine:
    curve: str
    tag: str
    T0: tuple[Fraction, ...]

    @property
    def H(self) -> str:
        return f"H{self.tag}"

    @property
    def xi(self) -> str:
        return f"ξ{self.tag}"

    @property
    def eta(self) -> str:
        return f"η{self.tag}"

    @property
    def gplus(self) -> str:
        return f"g+{self.tag}"


@dataclass
class BVModel:
    source_dim: int
    algebra: LieAlgebra
    alg: LocalAlgebra
    bulk: str
    fields: list[FieldSpec]
    strata: dict[str, int]
    action: dict[str, GradedPoly]
    omega: dict[str, GradedPoly]
    ghost_field: str
    aux_sign: int
    boundary: bool = False
    name: str = ""
    wilson: list[WilsonLine] = field(default_factory=list)
    relations: dict[str, list[GradedPoly]] = field(default_factory=dict)

    def field_spec(self, name: str) -> FieldSpec:
        for f in self.fields:
            if f.name == name:
                return f
        raise KeyError(name)

    def line(self, curve: str) -> WilsonLine | None:
        for w in self.wilson:
            if w.curve == curve:
                return w
        return None

    def ambient(self) -> set[str]:
        return {f.name for f in self.fields if f.source == self.bulk}

    def codim(self, stratum: str) -> int:
        return self.strata[self.bulk] - self.strata[stratum]

    def rels(self, stratum: str) -> tuple[GradedPoly, ...]:
        return tuple(self.relations.get(stratum, ()))


def build_cs3(L: LieAlgebra, boundary: bool = False) -> BVModel:
    """AKSZ Chern-Simons model on a 3-manifold N."""
    alg = LocalAlgebra(L)
    for fam, form, gh in (("γ", 0, 1), ("A", 1, 0), ("A+", 2, -1), ("γ+", 3, -2)):
        alg.add_field(fam, form, gh)
    g, A, Ap, gp = (alg.field(f) for f in ("γ", "A", "A+", "γ+"))
    S = (
        alg.pair(A, alg.d_vec(A)) * HALF
        + alg.pair(A, alg.br(A, A)) * Fraction(1, 6)
        - alg.pair(Ap, alg.cov(A, g))
        + alg.pair(gp, alg.br(g, g)) * HALF
    )
    dg, dA, dAp, dgp = (alg.field(f, "δ") for f in ("γ", "A", "A+", "γ+"))
    Om = alg.pair(dg, dgp) - alg.pair(dA, dAp)
    fields = [FieldSpec(n, True, f, gh, "N") for n, f, gh in (("γ", 0, 1), ("A", 1, 0), ("A+", 2, -1), ("γ+", 3, -2))]
    return BVModel(3, L, alg, "N", fields, {"N": 3}, {"N": S}, {"N": Om}, "γ", 1, boundary, f"cs3[{L.name}]")


def build_cs1(L: LieAlgebra, boundary: bool = False) -> BVModel:
    """One-dimensional model on a curve Γ with superfield ψ + θA (Z2-graded)."""
    alg = LocalAlgebra(L)
    alg.add_field("ψ", 0, 1)
    alg.add_field("A", 1, 0)
    psi, A = alg.field("ψ"), alg.field("A")
    S = alg.pair(psi, alg.cov(A, psi)) * HALF
    Om = -alg.pair(alg.field("ψ", "δ"), alg.field("A", "δ"))
    fields = [FieldSpec("ψ", True, 0, 1, "Γ"), FieldSpec("A", True, 1, 0, "Γ")]
    return BVModel(1, L, alg, "Γ", fields, {"Γ": 1}, {"Γ": S}, {"Γ": Om}, "ψ", -1, boundary, f"cs1[{L.name}]")


def _T0(orbit, n: int) -> tuple[Fraction, ...]:
    v = getattr(orbit, "T0", orbit)
    try:
        out = tuple(Fraction(str(x)) if isinstance(x, float) else Fraction(x) for x in v)
    except TypeError as exc:
        raise ConfigError("orbit must provide T0 as a sequence of numbers") from exc
    if len(out) != n:
        raise ConfigError(f"T0 has {len(out)} components, algebra has dimension {n}")
    return out


def attach_wilson(model: BVModel, orbit, curve: str) -> BVModel:
    """Add the orbit sector (H, ξ, η, g+) on ``curve`` and extend S and Ω.

    Mutates and returns ``model``.  For the 1D model the line is space-filling
    and ``curve`` must be the source label.
    """
    if model.line(curve) is not None:
        raise ConfigError(f"a Wilson line is already attached to {curve!r}")
    if model.source_dim == 1:
        if curve != model.bulk:
            raise ConfigError(f"unknown curve {curve!r}: the 1D source is {model.bulk!r}")
        tag = ""
    else:
        if curve == model.bulk or not curve:
            raise ConfigError(f"{curve!r} is not a curve label")
        tag = str(len(model.wilson) + 1)
    alg = model.alg
    T0 = _T0(orbit, alg.L.dim)
    w = WilsonLine(curve, tag, T0)
    alg.add_orbit_sector(tag)
    alg.add_field(w.gplus, 1, -1)
    H, xi, eta = alg.field(w.H), alg.field(w.xi), alg.field(w.eta, "δ")
    gp = alg.field(w.gplus)
    A, c = alg.field("A"), alg.field(model.ghost_field)
    S_aux = alg.pair(H, alg.add(A, xi)) - alg.pair(gp, c)
    # δ(g+, η) = (δg+, η) + (g+, ½[η, η])
    Om_aux = (alg.pair(alg.field(w.gplus, "δ"), eta) + alg.pair(gp, alg.br(eta, eta)) * HALF) * model.aux_sign
    model.action[curve] = model.action.get(curve, GradedPoly()) + S_aux
    model.omega[curve] = model.omega.get(curve, GradedPoly()) + Om_aux
    model.strata.setdefault(curve, 1)
    model.relations.setdefault(curve, []).append(alg.pair(H, gp))
    model.fields += [
        FieldSpec(w.H, True, 0, 0, curve, ("dH = [ξ,H]", "δH = [η,H]")),
        FieldSpec(w.xi, True, 1, 0, curve, ("dξ = ½[ξ,ξ]", "δξ = dη + [η,ξ]")),
        FieldSpec(w.gplus, True, 1, -1, curve, ("(H, g+) = 0",)),
    ]
    model.wilson.append(w)
    model.name += f"+W({curve})"
    return model
