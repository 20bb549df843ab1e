"""Wilson lines on a lattice: ordered products of segment exponentials."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from ..lie import ConfigError, Representation
from .kernels import get_kernels

__all__ = ["rep_matrices", "link_matrices", "wilson_holonomy", "gauge_transform", "random_connection"]


def rep_matrices(R, hbar=1) -> np.ndarray:
    """Float matrices ρ_a for an exact Representation or an array (n, d, d)."""
    if isinstance(R, Representation):
        return np.array([m.to_complex() for m in R.rho])
    arr = np.asarray(R, dtype=np.complex128)
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
        raise ConfigError("representation must be a stack of square matrices")
    return arr


def link_matrices(R, A, delta: float = 1.0) -> np.ndarray:
    """Generators A_i·Δ of each segment as matrices in R."""
    rho = rep_matrices(R)
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] == 0:
        raise ConfigError("connection must be a nonempty list of algebra vectors")
    if A.shape[1] != rho.shape[0]:
        raise ConfigError(f"connection vectors have {A.shape[1]} components, representation has {rho.shape[0]}")
    return np.tensordot(A * delta, rho, axes=(1, 0))


def wilson_holonomy(R, A, closed: bool = True, delta: float = 1.0, kernels=None):
    """Tr_R of exp(A_1Δ)···exp(A_nΔ) for a loop, the matrix itself for an open line.

    ``A`` may also be a stack of link matrices (n, d, d), e.g. after a lattice
    gauge transformation; those are multiplied as given.
    """
    K = kernels or get_kernels()
    arr = np.asarray(A)
    if arr.ndim == 3:
        if arr.shape[0] == 0:
            raise ConfigError("empty list of links")
        d = rep_matrices(R).shape[1]
        if arr.shape[1:] != (d, d):
            raise ConfigError(f"links are {arr.shape[1:]}, representation is {d}x{d}")
        U = np.eye(d, dtype=np.complex128)
        for link in arr:
            U = U @ link
    else:
        U = K.chain(link_matrices(R, A, delta))
    return complex(np.trace(U)) if closed else U


def gauge_transform(R, A, lambdas: Sequence, delta: float = 1.0, kernels=None) -> np.ndarray:
    """Links U_i -> g_i U_i g_{i+1}^-1 with g_i = exp(ρ(λ_i)); sites wrap around for a loop."""
    K = kernels or get_kernels()
    rho = rep_matrices(R)
    lam = np.asarray(lambdas, dtype=float)
    M = link_matrices(R, A, delta)
    if lam.shape[0] != M.shape[0]:
        raise ConfigError("one gauge parameter per lattice site is required")
    U = K.expm_batch(M)
    G = K.expm_batch(np.tensordot(lam, rho, axes=(1, 0)))
    Gi = K.expm_batch(-np.tensordot(lam, rho, axes=(1, 0)))
    return np.array([G[i] @ U[i] @ Gi[(i + 1) % len(U)] for i in range(len(U))])


def random_connection(dim: int, segments: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    return scale * rng.normal(size=(segments, dim))
