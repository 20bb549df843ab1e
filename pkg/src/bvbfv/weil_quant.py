"""Clifford algebra, spinors and the cubic Dirac operator of the quantized point model.

Fermions are ψ̂_a = sqrt(ħ/2)·γ_a with exact Jordan-Wigner gamma matrices,
{γ_a, γ_b} = 2δ_ab, so {ψ̂_a, ψ̂_b} = ħ δ_ab.  The radical never has to be
evaluated: the Dirac operator is stored as 𝔇 = sqrt(ħ/2)·core with an exact
``core``, hence 𝔇² = (ħ/2)·core² and every identity below is checked in
Gaussian-rational arithmetic.

Bosons are X̂_a = ħ·ρ_a with anti-hermitian ρ (so the su2 Casimir is
negative).  With these conventions

    𝔇² = (ħ/2)·Σ X̂_a X̂_a - (ħ³/48)·Σ f_abc f_abc,

which reduces to the familiar ½ĈR - (1/48)Σf² at ħ = 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .exact import QIMatrix
from .lie import ConfigError, LieAlgebra, Representation

__all__ = [
    "CliffordRep",
    "DiracOperator",
    "SquareReport",
    "CentralityReport",
    "jordan_wigner",
    "spinor_rep",
    "cubic_dirac",
    "casimir",
    "expected_square",
    "dirac_square_check",
    "centrality_check",
    "diagonal_generators",
    "parity_check",
]

_I2 = QIMatrix.identity(2)
_X = QIMatrix.from_entries([[0, 1], [1, 0]])
_Y = QIMatrix.from_entries([[0, (0, -1)], [(0, 1), 0]])
_Z = QIMatrix.from_entries([[1, 0], [0, -1]])


def _kron_all(mats: list[QIMatrix]) -> QIMatrix:
    out = QIMatrix.identity(1)
    for m in mats:
        out = out.kron(m)
    return out


def jordan_wigner(n: int, graded: bool = False) -> tuple[list[QIMatrix], QIMatrix | None]:
    """n gamma matrices with {γ_a, γ_b} = 2δ_ab and, when it exists, the parity operator.

    Even n: size 2^(n/2), parity Z⊗…⊗Z.  Odd n: the last gamma is the product
    Z⊗…⊗Z of size 2^((n-1)/2), which has no parity; with ``graded=True`` the
    n+1 gammas of the next even size are built and the last one dropped.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if graded and n % 2:
        gam, par = jordan_wigner(n + 1)
        return gam[:n], par
    m = n // 2
    gam: list[QIMatrix] = []
    for k in range(m):
        pre = [_Z] * k
        post = [_I2] * (m - k - 1)
        gam.append(_kron_all(pre + [_X] + post))
        gam.append(_kron_all(pre + [_Y] + post))
    parity = _kron_all([_Z] * m) if m else QIMatrix.identity(1)
    if n % 2:
        gam.append(parity)
        return gam, None
    return gam, parity


@dataclass
class CliffordRep:
    algebra: LieAlgebra
    hbar: Fraction
    gamma: list[QIMatrix]
    parity: QIMatrix | None
    graded: bool = False

    @property
    def dimS(self) -> int:
        return self.gamma[0].shape[0] if self.gamma else 1

    @property
    def r2(self) -> Fraction:
        """(ħ/2), the square of the fermion normalization."""
        return self.hbar / 2

    def psi_float(self) -> list[np.ndarray]:
        r = float(self.r2) ** 0.5
        return [r * g.to_complex() for g in self.gamma]

    def anticommutator(self, a: int, b: int) -> QIMatrix:
        ga, gb = self.gamma[a], self.gamma[b]
        return (ga @ gb + gb @ ga).scaled(self.r2)

    def check(self) -> bool:
        n = len(self.gamma)
        eye = QIMatrix.identity(self.dimS)
        for a, b in product(range(n), repeat=2):
            want = eye.scaled(self.hbar) if a == b else QIMatrix.zeros(self.dimS)
            if self.anticommutator(a, b) != want:
                return False
        return True


def spinor_rep(L: LieAlgebra, hbar=1, graded: bool = False) -> CliffordRep:
    hbar = Fraction(hbar)
    gam, par = jordan_wigner(L.dim, graded)
    return CliffordRep(L, hbar, gam, par, graded or L.dim % 2 == 0)


@dataclass
class DiracOperator:
    """𝔇 = sqrt(ħ/2)·core acting on V ⊗ S."""

    rep: Representation
    cliff: CliffordRep
    hbar: Fraction
    core: QIMatrix
    cubic_coeff: Fraction = Fraction(1, 6)

    @property
    def dim(self) -> int:
        return self.core.shape[0]

    def square(self) -> QIMatrix:
        return (self.core @ self.core).scaled(self.cliff.r2)

    def matrix_float(self) -> np.ndarray:
        return float(self.cliff.r2) ** 0.5 * self.core.to_complex()

    def parity(self) -> QIMatrix | None:
        if self.cliff.parity is None:
            return None
        return QIMatrix.identity(self.rep.dimV).kron(self.cliff.parity)


def _gprod(cl: CliffordRep, idx) -> QIMatrix:
    out = QIMatrix.identity(cl.dimS)
    for i in idx:
        out = out @ cl.gamma[i]
    return out


def cubic_dirac(L: LieAlgebra, R: Representation, cliff: CliffordRep, cubic_coeff=Fraction(1, 6)) -> DiracOperator:
    """Σ X̂_a ⊗ ψ̂_a - c·Σ f_abc Id ⊗ ψ̂_aψ̂_bψ̂_c, with c = 1/6 unless perturbed on purpose."""
    if R.algebra.dim != L.dim or cliff.algebra.dim != L.dim:
        raise ConfigError("representation, Clifford module and algebra must share the same Lie algebra")
    if R.algebra.f != L.f or cliff.algebra.f != L.f:
        raise ConfigError("representation, Clifford module and algebra have different structure constants")
    hbar = cliff.hbar
    X = R.X(hbar)
    core = QIMatrix.zeros(R.dimV * cliff.dimS)
    for a in range(L.dim):
        core = core + X[a].kron(cliff.gamma[a])
    cub = QIMatrix.zeros(cliff.dimS)
    for a, b, c, v in L.nonzero():
        cub = cub + _gprod(cliff, (a, b, c)).scaled(v)
    # ψψψ = (ħ/2)^{3/2} γγγ = sqrt(ħ/2)·(ħ/2)·γγγ
    core = core - QIMatrix.identity(R.dimV).kron(cub).scaled(Fraction(cubic_coeff) * cliff.r2)
    return DiracOperator(R, cliff, hbar, core, Fraction(cubic_coeff))


def casimir(R: Representation, hbar) -> QIMatrix:
    X = R.X(hbar)
    out = QIMatrix.zeros(R.dimV)
    for x in X:
        out = out + x @ x
    return out


def expected_square(D: DiracOperator) -> QIMatrix:
    """(ħ/2)·ĈR ⊗ Id - (ħ³/48)·Σf² ·Id."""
    L = D.rep.algebra
    h = D.hbar
    f2 = sum((v * v for _, _, _, v in L.nonzero()), Fraction(0))
    C = casimir(D.rep, h).kron(QIMatrix.identity(D.cliff.dimS)).scaled(h / 2)
    return C - QIMatrix.identity(D.dim).scaled(h**3 * f2 / 48)


@dataclass
class SquareReport:
    c: tuple[Fraction, Fraction] | None
    identity_ok: bool
    scalar: bool
    max_off_identity_err: float
    expected_c: tuple[Fraction, Fraction] | None = None


def dirac_square_check(D: DiracOperator) -> SquareReport:
    sq = D.square()
    exp = expected_square(D)
    diff = sq - exp
    sp = sq.scalar_part()
    c, resid = sp if sp else (None, sq)
    esp = exp.scalar_part()
    return SquareReport(
        c,
        diff.is_zero(),
        resid.is_zero(),
        resid.max_abs(),
        esp[0] if esp and esp[1].is_zero() else None,
    )


def diagonal_generators(D: DiracOperator) -> list[QIMatrix]:
    """Ĝ_a = X̂_a ⊗ Id - ½ Σ f_abc ψ̂_bψ̂_c."""
    L = D.rep.algebra
    cl = D.cliff
    X = D.rep.X(D.hbar)
    out = []
    for a in range(L.dim):
        spin = QIMatrix.zeros(cl.dimS)
        for a2, b, c, v in L.nonzero():
            if a2 == a:
                spin = spin + _gprod(cl, (b, c)).scaled(v)
        out.append(X[a].kron(QIMatrix.identity(cl.dimS)) - QIMatrix.identity(D.rep.dimV).kron(spin).scaled(cl.r2 / 2))
    return out


@dataclass
class CentralityReport:
    ok: bool
    max_err: float
    failures: list[str] = field(default_factory=list)
    homomorphism_ok: bool = True


def _comm(a: QIMatrix, b: QIMatrix) -> QIMatrix:
    return a @ b - b @ a


def centrality_check(D: DiracOperator) -> CentralityReport:
    """𝔇² commutes with the generators X̂_a ⊗ Id, Id ⊗ ψ̂_a of U(g)⊗Cl(g), with Ĝ_a and with 𝔇.

    Also checks that the Ĝ_a close under the bracket with ħ f.  The Ĝ_a alone
    cannot detect a wrong cubic coefficient (every invariant combination
    commutes with them); the individual generators can.
    """
    sq = D.square()
    G = diagonal_generators(D)
    X = D.rep.X(D.hbar)
    eyeV, eyeS = QIMatrix.identity(D.rep.dimV), QIMatrix.identity(D.cliff.dimS)
    gens = [(f"X_{a}", x.kron(eyeS)) for a, x in enumerate(X)]
    # ψ̂_a = sqrt(ħ/2)·γ_a; the radical is a nonzero scalar and drops out of "== 0"
    gens += [(f"psi_{a}", eyeV.kron(g)) for a, g in enumerate(D.cliff.gamma)]
    gens += [(f"G_{a}", g) for a, g in enumerate(G)]
    fails: list[str] = []
    worst = 0.0
    for name, g in gens:
        c = _comm(sq, g)
        if not c.is_zero():
            fails.append(f"[D^2, {name}]")
            worst = max(worst, c.max_abs())
    c = _comm(sq, D.core)
    if not c.is_zero():
        fails.append("[D^2, D]")
        worst = max(worst, c.max_abs() * float(D.cliff.r2) ** 0.5)
    L = D.rep.algebra
    hom = True
    for a, b in product(range(L.dim), repeat=2):
        rhs = QIMatrix.zeros(D.dim)
        for c_ in range(L.dim):
            if L.f[a][b][c_]:
                rhs = rhs + G[c_].scaled(D.hbar * L.f[a][b][c_])
        if _comm(G[a], G[b]) != rhs:
            hom = False
    return CentralityReport(not fails, worst, fails, hom)


def parity_check(D: DiracOperator) -> bool | None:
    """True iff 𝔇 anticommutes with the fermion parity; None when S carries no parity."""
    P = D.parity()
    if P is None:
        return None
    return (P @ D.core + D.core @ P).is_zero()
