"""Local field algebra: component fields, their d- and delta-images, and the
integration-by-parts normal form.

Each ordinary field family ``X`` with Lie components ``X_a`` contributes four
free generators per component: ``X_a``, ``dX_a``, ``δX_a`` and ``dδX_a``.  The
orbit sector is not free: ``H = Ad_g T0`` and the Maurer-Cartan forms
``ξ = dg g^-1`` and ``η = δg g^-1`` obey

    dH = [ξ, H]      δH = [η, H]
    dξ = ½[ξ, ξ]     δη = ½[η, η]
    dη = dη (free)   δξ = dη + [η, ξ]

and ``d``, ``δ`` are extended as commuting derivations.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..grassmann import Generator, GradedPoly, apply_derivation, mono_degrees
from ..lie import LieAlgebra

__all__ = ["LocalAlgebra", "LieVec", "IBPError"]

D_PARITY = (1, 0)
DELTA_PARITY = (0, 1)



def _unweighted(family: str) -> bool:
    # ξ is produced by d acting on H, so it cannot count towards the weight
    # grading that labels IBP sectors
    return family.startswith("ξ")


class IBPError(RuntimeError):
    """Normal form could not be computed (inconsistent relations)."""


LieVec = list  # list[GradedPoly] of length dim g


class LocalAlgebra:
    """Generators and differentials for one BV model."""

    def __init__(self, L: LieAlgebra):
        self.L = L
        self.gens: dict[str, Generator] = {}
        self.families: dict[str, dict[str, list[Generator]]] = {}
        self._d: dict[Generator, GradedPoly] = {}
        self._delta: dict[Generator, GradedPoly] = {}
        self._famrank: dict[str, int] = {}
        self._sector_cache: dict = {}

    # -- registration --------------------------------------------------
    def _new(self, name, form, ghost, delta, a, family, role, kind_rank) -> Generator:
        g = Generator(name, form, ghost, delta, a, family, role, order=(self._famrank[family], kind_rank, a))
        self.gens[name] = g
        return g

    def add_field(self, family: str, form: int, ghost: int) -> list[Generator]:
        """Register a free Lie-valued field with its d/δ images; returns the components."""
        if family in self.families:
            raise ValueError(f"field {family} already present")
        self._famrank[family] = len(self._famrank)
        kinds: dict[str, list[Generator]] = {"": [], "d": [], "δ": [], "dδ": []}
        for a in range(self.L.dim):
            x = self._new(f"{family}_{a}", form, ghost, 0, a, family, "field", 0)
            dx = self._new(f"d{family}_{a}", form + 1, ghost, 0, a, family, "d_image", 1)
            vx = self._new(f"δ{family}_{a}", form, ghost, 1, a, family, "delta_image", 2)
            dvx = self._new(f"dδ{family}_{a}", form + 1, ghost, 1, a, family, "delta_image", 3)
            kinds[""].append(x)
            kinds["d"].append(dx)
            kinds["δ"].append(vx)
            kinds["dδ"].append(dvx)
            self._d[x] = GradedPoly.gen(dx)
            self._d[vx] = GradedPoly.gen(dvx)
            self._delta[x] = GradedPoly.gen(vx)
            # δ(dX) = d(δX) since the two differentials commute
            self._delta[dx] = GradedPoly.gen(dvx)
        self.families[family] = kinds
        return kinds[""]

    def add_orbit_sector(self, tag: str = "") -> None:
        """Register H, ξ, η, dη (suffixed by ``tag``) with their Maurer-Cartan relations."""
        fH, fX, fE = f"H{tag}", f"ξ{tag}", f"η{tag}"
        if fH in self.families:
            raise ValueError(f"orbit sector {tag!r} already present")
        for fam in (fH, fX, fE):
            self._famrank[fam] = len(self._famrank)
        n = self.L.dim
        H = [self._new(f"{fH}_{a}", 0, 0, 0, a, fH, "auxiliary", 0) for a in range(n)]
        xi = [self._new(f"{fX}_{a}", 1, 0, 0, a, fX, "auxiliary", 0) for a in range(n)]
        eta = [self._new(f"{fE}_{a}", 0, 0, 1, a, fE, "auxiliary", 2) for a in range(n)]
        deta = [self._new(f"d{fE}_{a}", 1, 0, 1, a, fE, "auxiliary", 3) for a in range(n)]
        self.families[fH] = {"": H}
        self.families[fX] = {"": xi}
        self.families[fE] = {"δ": eta, "dδ": deta}
        Hv, Xv, Ev, DEv = (self.vec(x) for x in (H, xi, eta, deta))
        dH = self.br(Xv, Hv)
        vH = self.br(Ev, Hv)
        dxi = self.scale(self.br(Xv, Xv), Fraction(1, 2))
        veta = self.scale(self.br(Ev, Ev), Fraction(1, 2))
        vxi = self.add(DEv, self.br(Ev, Xv))
        for a in range(n):
            self._d[H[a]] = dH[a]
            self._delta[H[a]] = vH[a]
            self._d[xi[a]] = dxi[a]
            self._delta[xi[a]] = vxi[a]
            self._d[eta[a]] = DEv[a]
            self._delta[eta[a]] = veta[a]
        # δ(dη) = d(δη) = d(½[η, η])
        vdeta = self.d_vec(veta)
        for a in range(n):
            self._delta[deta[a]] = vdeta[a]

    def field(self, family: str, kind: str = "") -> LieVec:
        return self.vec(self.families[family][kind])

    def has(self, family: str) -> bool:
        return family in self.families

    # -- Lie-valued helpers --------------------------------------------
    @staticmethod
    def vec(gens: Sequence[Generator]) -> LieVec:
        return [GradedPoly.gen(g) for g in gens]

    def zero(self) -> LieVec:
        return [GradedPoly() for _ in range(self.L.dim)]

    @staticmethod
    def add(*vs: LieVec) -> LieVec:
        out = [GradedPoly() for _ in vs[0]]
        for v in vs:
            out = [x + y for x, y in zip(out, v)]
        return out

    @staticmethod
    def scale(v: LieVec, c) -> LieVec:
        return [x * Fraction(c) for x in v]

    @staticmethod
    def neg(v: LieVec) -> LieVec:
        return [-x for x in v]

    def br(self, X: LieVec, Y: LieVec) -> LieVec:
        """[X, Y]_c = f_abc X_a Y_b (product order preserved)."""
        out = self.zero()
        for a, b, c, v in self.L.nonzero():
            if X[a] and Y[b]:
                out[c] = out[c] + X[a] * Y[b] * v
        return out

    @staticmethod
    def pair(X: LieVec, Y: LieVec) -> GradedPoly:
        """Invariant pairing (X, Y) = X_a Y_a in an orthonormal basis."""
        out = GradedPoly()
        for x, y in zip(X, Y):
            if x and y:
                out = out + x * y
        return out

    def cov(self, A: LieVec, X: LieVec) -> LieVec:
        """Covariant derivative d_A X = dX + [A, X]."""
        return self.add(self.d_vec(X), self.br(A, X))

    # -- differentials -------------------------------------------------
    def d(self, p: GradedPoly) -> GradedPoly:
        return apply_derivation(p, self._d.get, D_PARITY)

    def delta(self, p: GradedPoly) -> GradedPoly:
        return apply_derivation(p, self._delta.get, DELTA_PARITY)

    def d_vec(self, v: LieVec) -> LieVec:
        return [self.d(x) for x in v]

    def delta_vec(self, v: LieVec) -> LieVec:
        return [self.delta(x) for x in v]

    def check_differentials(self) -> dict[str, int]:
        """Count generators on which d², δ² or [d, δ] fail to vanish (all zero when consistent)."""
        bad = {"dd": 0, "δδ": 0, "dδ-δd": 0}
        for g in self.gens.values():
            x = GradedPoly.gen(g)
            if self.d(self.d(x)):
                bad["dd"] += 1
            if self.delta(self.delta(x)):
                bad["δδ"] += 1
            if self.d(self.delta(x)) - self.delta(self.d(x)):
                bad["dδ-δd"] += 1
        return bad

    # -- weights and sectors -------------------------------------------
    @staticmethod
    def weight(m) -> tuple:
        counts: dict[str, int] = {}
        for g in m:
            if not _unweighted(g.family):
                counts[g.family] = counts.get(g.family, 0) + 1
        return tuple(sorted(counts.items()))

    def sector(self, m) -> tuple:
        return mono_degrees(m), self.weight(m)

    def _enumerate(self, form: int, ghost: int, delta: int, weight: tuple) -> list:
        """All canonical monomials with the given degrees and family weight."""
        want = dict(weight)
        pool = [g for g in sorted(self.gens.values()) if g.family in want or _unweighted(g.family)]
        pool = [g for g in pool if g.form <= form and g.delta <= delta]
        out: list = []

        def rec(i, cur, f, gh, dl, counts):
            if f == form and dl == delta and gh == ghost and all(counts.get(k, 0) == v for k, v in want.items()):
                out.append(tuple(cur))
                # other completions would exceed a count or a degree unless they
                # add unweighted degree-0 letters, which do not exist
            if i >= len(pool):
                return
            g = pool[i]
            # skip g entirely
            rec(i + 1, cur, f, gh, dl, counts)
            # take g one or more times
            mult = 0
            c2 = dict(counts)
            cur2 = list(cur)
            f2, gh2, dl2 = f, gh, dl
            while True:
                if g.nilpotent and mult >= 1:
                    break
                f2 += g.form
                dl2 += g.delta
                gh2 += g.ghost
                if f2 > form or dl2 > delta:
                    break
                if not _unweighted(g.family):
                    c2[g.family] = c2.get(g.family, 0) + 1
                    if c2[g.family] > want[g.family]:
                        break
                elif g.form == 0 and g.delta == 0:
                    break
                mult += 1
                cur2.append(g)
                rec(i + 1, cur2, f2, gh2, dl2, c2)
                cur2 = list(cur2)
                c2 = dict(c2)

        rec(0, [], 0, 0, 0, {})
        # the recursion can emit a monomial more than once only via the early
        # record above followed by identical completions; dedupe defensively
        return sorted(set(out), key=lambda m: [g._key for g in m])

    # -- integration-by-parts normal form --------------------------------
    def _basis(self, form: int, ghost: int, delta: int, weight: tuple, relations: tuple, rel_key: tuple = ()):
        key = (form, ghost, delta, weight, rel_key)
        if key in self._sector_cache:
            return self._sector_cache[key]
        spanning: list[GradedPoly] = []
        for m in self._enumerate(form - 1, ghost, delta, weight):
            img = self.d(GradedPoly({m: 1}))
            if img:
                spanning.append(img)
        for rel in relations:
            spanning.extend(self._relation_multiples(rel, form, ghost, delta, weight))
        basis: dict = {}
        for v in spanning:
            v = _reduce(v, basis)
            if v:
                piv = max(v.terms, key=_mkey)
                inv = 1 / v.terms[piv]
                basis[piv] = v * inv
        self._sector_cache[key] = basis
        return basis

    def _relation_multiples(self, rel: GradedPoly, form, ghost, delta, weight):
        """m * rel and m * d(rel) for all monomials m landing in the sector."""
        out = []
        for r in (rel, self.d(rel)):
            if not r:
                continue
            ((rf, rg, rd),) = r.degrees()
            rw = dict(self.weight(next(iter(r.terms))))
            rest = dict(weight)
            ok = True
            for k, v in rw.items():
                rest[k] = rest.get(k, 0) - v
                if rest[k] < 0:
                    ok = False
            if not ok or form - rf < 0 or delta - rd < 0:
                continue
            rest = tuple(sorted((k, v) for k, v in rest.items() if v))
            for m in self._enumerate(form - rf, ghost - rg, delta - rd, rest):
                prod = GradedPoly({m: 1}) * r
                if prod:
                    out.append(prod)
        return out

    def normal_form(self, omega: GradedPoly, relations: Iterable[GradedPoly] = ()) -> GradedPoly:
        """Canonical representative of omega modulo d-exact terms (and the ideal of the relations).

        Works sector by sector: the d-images of all monomials one form degree
        lower with the same ghost, delta degree and field weight are row
        reduced, and omega is reduced against that echelon basis.
        """
        rels = tuple(relations)
        rel_key = tuple(str(r) for r in rels)
        groups: dict = {}
        for m, c in omega.terms.items():
            groups.setdefault(self.sector(m), {})[m] = c
        out = GradedPoly()
        for ((f, g, dl), w), terms in groups.items():
            basis = self._basis(f, g, dl, w, rels, rel_key)
            out = out + _reduce(GradedPoly(terms), basis)
        return out

    def is_exact(self, omega: GradedPoly, relations: Iterable[GradedPoly] = ()) -> bool:
        return not self.normal_form(omega, relations)


def _mkey(m):
    return [g._key for g in m]


def _reduce(v: GradedPoly, basis: dict) -> GradedPoly:
    v = v.copy()
    while True:
        hits = [m for m in v.terms if m in basis]
        if not hits:
            return v
        m = max(hits, key=_mkey)
        v = v - basis[m] * v.terms[m]
