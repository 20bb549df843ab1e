"""Coadjoint orbits in floating point: H = Ad_g T0, the Kirillov form and its potential.

The invariant form is the Euclidean one in the orthonormal basis of the
algebra, so the coadjoint orbit is identified with the adjoint orbit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..lie import ConfigError, LieAlgebra, rep_su2
from .kernels import get_kernels

__all__ = [
    "OrbitSpec",
    "OrbitPoint",
    "OrbitReport",
    "structure_array",
    "ad_matrices",
    "faithful_rep",
    "orbit_point",
    "sample_orbit",
    "kirillov_form",
    "kirillov_pullback_check",
    "kirillov_convergence",
    "tangent_orthogonality",
]


@dataclass(frozen=True)
class OrbitSpec:
    algebra: LieAlgebra
    T0: tuple[float, ...]
    rep_label: str | None = None
    endpoints: tuple[str, str] = ("z", "z'")
    allow_zero: bool = False

    def __post_init__(self):
        if len(self.T0) != self.algebra.dim:
            raise ConfigError(f"T0 has {len(self.T0)} components, algebra has dimension {self.algebra.dim}")
        if not self.allow_zero and not any(float(t) for t in self.T0):
            raise ConfigError("T0 = 0 gives the point orbit; pass allow_zero=True to use it")

    @property
    def t0(self) -> np.ndarray:
        return np.array([float(t) for t in self.T0])


@dataclass
class OrbitPoint:
    g: np.ndarray
    H: np.ndarray
    norm_error: float


@dataclass
class OrbitReport:
    max_err: float
    samples: int
    step: float | None = None
    max_antisymmetry: float = 0.0
    details: dict = field(default_factory=dict)


def structure_array(L: LieAlgebra) -> np.ndarray:
    return np.array([[[float(c) for c in row] for row in plane] for plane in L.f])


def ad_matrices(L: LieAlgebra) -> np.ndarray:
    """ad[a][c, b] = f_abc, so ad_x y = [x, y]."""
    return np.transpose(structure_array(L), (0, 2, 1)).copy()


def _center(L: LieAlgebra) -> list[int]:
    f = structure_array(L)
    return [a for a in range(L.dim) if not f[a].any() and not f[:, a, :].any()]


def faithful_rep(L: LieAlgebra) -> np.ndarray:
    """Matrices ρ_a: spin-1/2 for su2, otherwise adjoint ⊕ (i·x on the center)."""
    if L.name == "su2":
        return np.array([m.to_complex() for m in rep_su2(Fraction(1, 2), algebra=L).rho])
    ad = ad_matrices(L).astype(np.complex128)
    cen = _center(L)
    n, k = L.dim, len(cen)
    out = np.zeros((n, n + k, n + k), dtype=np.complex128)
    out[:, :n, :n] = ad
    for i, a in enumerate(cen):
        out[a, n + i, n + i] = 1j
    return out


def _rho(rho: np.ndarray, x: np.ndarray) -> np.ndarray:
    return np.tensordot(x, rho, axes=(-1, 0))


def _coords(rho: np.ndarray):
    """Map a matrix in the span of ρ back to algebra coordinates."""
    B = rho.reshape(rho.shape[0], -1).T
    pinv = np.linalg.pinv(B)
    return lambda M: (pinv @ M.reshape(M.shape[:-2] + (-1,))[..., None])[..., 0].real


def orbit_point(spec: OrbitSpec, x, kernels=None) -> OrbitPoint:
    K = kernels or get_kernels()
    L = spec.algebra
    x = np.asarray(x, dtype=float)
    g = K.expm_batch(_rho(faithful_rep(L), x)[None])[0]
    H = K.orbit_batch(_rho(ad_matrices(L), x)[None], spec.t0)[0]
    t0 = spec.t0
    err = abs(H @ H - t0 @ t0) / max(t0 @ t0, 1e-300)
    return OrbitPoint(g, H, float(err))


def sample_orbit(spec: OrbitSpec, xs: np.ndarray, kernels=None) -> np.ndarray:
    """H = Ad_{exp x} T0 for a batch of algebra vectors."""
    K = kernels or get_kernels()
    return K.orbit_batch(_rho(ad_matrices(spec.algebra), np.asarray(xs, dtype=float)), spec.t0)


def kirillov_form(f: np.ndarray, H: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """ω(x, y) = -(H, [x, y]) for right-trivialized tangent vectors, batched."""
    br = np.einsum("...a,...b,abc->...c", x, y, f)
    return -np.einsum("...c,...c->...", H, br)


def _draws(spec: OrbitSpec, samples: int, seed: int, scale: float):
    rng = np.random.default_rng(seed)
    n = spec.algebra.dim
    return rng.normal(size=(samples, n)), scale * rng.normal(size=(samples, n)), scale * rng.normal(size=(samples, n))


def kirillov_pullback_check(
    spec: OrbitSpec, samples: int = 100, seed: int = 0, step: float = 1e-5, scale: float = 2.0, kernels=None
) -> OrbitReport:
    """Compare ω = -(H, [x, y]) with the finite-difference derivative of α = (T0, g^-1 δg).

    In the chart φ(s, t) = exp(s x) exp(t y) g0 the coordinate fields commute,
    so δα(∂s, ∂t) = ∂s α(∂t φ) - ∂t α(∂s φ).  The inner derivatives of φ are
    exact; the outer ones are central differences with the given step.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    K = kernels or get_kernels()
    L = spec.algebra
    rho, f, t0 = faithful_rep(L), structure_array(L), spec.t0
    coords = _coords(rho)
    x0, x, y = _draws(spec, samples, seed, scale)
    X0, Xs, Ys = _rho(rho, x0), _rho(rho, x), _rho(rho, y)
    h = step
    mats = np.concatenate([X0, -X0, h * Xs, -h * Xs, h * Ys, -h * Ys])
    E = K.expm_batch(mats).reshape(6, samples, *X0.shape[1:])
    g0, g0i, exp_hx, exp_mhx, exp_hy, exp_mhy = E

    def a(es, esi):
        # α(∂t φ) at (s, 0):  φ^-1 ∂t φ = g0^-1 e^{-sx} e^{sx} y g0
        M = g0i @ esi @ es @ Ys @ g0
        return coords(M) @ t0

    def b(et, eti):
        # α(∂s φ) at (0, t):  φ^-1 ∂s φ = g0^-1 e^{-ty} x e^{ty} g0
        M = g0i @ eti @ Xs @ et @ g0
        return coords(M) @ t0

    fd = (a(exp_hx, exp_mhx) - a(exp_mhx, exp_hx)) / (2 * h) - (b(exp_hy, exp_mhy) - b(exp_mhy, exp_hy)) / (2 * h)
    H = K.orbit_batch(_rho(ad_matrices(L), x0), t0)
    om = kirillov_form(f, H, x, y)
    anti = np.abs(om + kirillov_form(f, H, y, x)).max()
    err = np.abs(fd - om)
    return OrbitReport(float(err.max()), samples, step, float(anti), {"backend": K.name})


def kirillov_convergence(spec: OrbitSpec, samples: int = 100, seed: int = 0, step: float = 1e-5, **kw) -> tuple[OrbitReport, OrbitReport, float]:
    """Run the check at ``step`` and ``step/2``; the ratio should be near 4 for a second-order scheme."""
    r1 = kirillov_pullback_check(spec, samples, seed, step, **kw)
    r2 = kirillov_pullback_check(spec, samples, seed, step / 2, **kw)
    ratio = r1.max_err / r2.max_err if r2.max_err else float("inf")
    return r1, r2, ratio


def tangent_orthogonality(spec: OrbitSpec, samples: int = 100, seed: int = 0, form: np.ndarray | None = None, kernels=None) -> OrbitReport:
    """max |(H, [x, H])| over random orbit points H and directions x, in the given bilinear form."""
    L = spec.algebra
    rng = np.random.default_rng(seed)
    xs = rng.normal(size=(samples, L.dim))
    H = sample_orbit(spec, rng.normal(size=(samples, L.dim)), kernels)
    f = structure_array(L)
    tang = np.einsum("sa,sb,abc->sc", xs, H, f)
    G = np.eye(L.dim) if form is None else np.asarray(form, dtype=float)
    vals = np.einsum("sa,ab,sb->s", H, G, tang)
    return OrbitReport(float(np.abs(vals).max()), samples)
