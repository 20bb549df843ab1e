"""Hot numeric kernels: batched matrix exponential, ordered products, orbit sampling.

Two interchangeable backends share one interface.  ``numba`` compiles
explicit loops with ``@njit``; ``numpy`` is a vectorized fallback.  The
backend is picked by the environment variable ``BVBFV_KERNELS``
(``numba`` or ``numpy``); by default numba is used when it imports.
"""
from __future__ import annotations

import math
import os
from types import SimpleNamespace

import numpy as np

_THETA = 0.5  # scaling target for the 1-norm before the Taylor series
_TERMS = 18  # 0.5**19 / 19! is far below double precision


# -- numpy backend -------------------------------------------------------------


def _np_expm_batch(Ms: np.ndarray) -> np.ndarray:
    Ms = np.asarray(Ms, dtype=np.complex128)
    n = Ms.shape[-1]
    norms = np.abs(Ms).sum(axis=-2).max(axis=-1)
    s = np.maximum(0, np.ceil(np.log2(np.maximum(norms, 1e-300) / _THETA))).astype(np.int64)
    A = Ms / (2.0 ** s)[:, None, None]
    E = np.broadcast_to(np.eye(n, dtype=np.complex128), A.shape).copy()
    term = E.copy()
    for k in range(1, _TERMS + 1):
        term = term @ A / k
        E = E + term
    for k in range(int(s.max(initial=0))):
        mask = s > k
        E[mask] = E[mask] @ E[mask]
    return E


def _np_chain(Ms: np.ndarray) -> np.ndarray:
    Us = _np_expm_batch(Ms)
    out = np.eye(Us.shape[-1], dtype=np.complex128)
    for U in Us:
        out = out @ U
    return out


def _np_orbit_batch(ads: np.ndarray, T0: np.ndarray) -> np.ndarray:
    return (_np_expm_batch(ads) @ np.asarray(T0, dtype=np.complex128)).real


# -- numba backend -------------------------------------------------------------


def _nb_mm(A, B, out):
    n = A.shape[0]
    for i in range(n):
        for j in range(n):
            acc = 0j
            for k in range(n):
                acc += A[i, k] * B[k, j]
            out[i, j] = acc


def _nb_expm_into(M, E, term, tmp):
    n = M.shape[0]
    norm = 0.0
    for j in range(n):
        col = 0.0
        for i in range(n):
            col += abs(M[i, j])
        norm = max(norm, col)
    s = 0
    if norm > _THETA:
        s = int(math.ceil(math.log2(norm / _THETA)))
    scale = 1.0 / (2.0 ** s)
    for i in range(n):
        for j in range(n):
            E[i, j] = 1.0 if i == j else 0.0
            term[i, j] = E[i, j]
    for k in range(1, _TERMS + 1):
        _nb_mm(term, M, tmp)
        c = scale / k
        for i in range(n):
            for j in range(n):
                term[i, j] = tmp[i, j] * c
                E[i, j] += term[i, j]
    for _ in range(s):
        _nb_mm(E, E, tmp)
        E[:, :] = tmp


def _nb_expm_batch(Ms):
    n = Ms.shape[1]
    out = np.empty_like(Ms)
    term = np.empty((n, n), dtype=np.complex128)
    tmp = np.empty((n, n), dtype=np.complex128)
    for i in range(Ms.shape[0]):
        _nb_expm_into(Ms[i], out[i], term, tmp)
    return out


def _nb_chain(Ms):
    n = Ms.shape[1]
    out = np.eye(n, dtype=np.complex128)
    E = np.empty((n, n), dtype=np.complex128)
    term = np.empty((n, n), dtype=np.complex128)
    tmp = np.empty((n, n), dtype=np.complex128)
    for i in range(Ms.shape[0]):
        _nb_expm_into(Ms[i], E, term, tmp)
        _nb_mm(out, E, tmp)
        out[:, :] = tmp
    return out


def _nb_orbit_batch(ads, T0):
    n = T0.shape[0]
    out = np.empty((ads.shape[0], n))
    E = np.empty((n, n), dtype=np.complex128)
    term = np.empty((n, n), dtype=np.complex128)
    tmp = np.empty((n, n), dtype=np.complex128)
    for s in range(ads.shape[0]):
        _nb_expm_into(ads[s], E, term, tmp)
        for i in range(n):
            acc = 0j
            for j in range(n):
                acc += E[i, j] * T0[j]
            out[s, i] = acc.real
    return out


def _build_numba():
    import numba

    jit = numba.njit(cache=True)
    global _nb_mm, _nb_expm_into
    _nb_mm = jit(_nb_mm)
    _nb_expm_into = jit(_nb_expm_into)
    expm_batch = jit(_nb_expm_batch)
    chain = jit(_nb_chain)
    orbit = jit(_nb_orbit_batch)
    return SimpleNamespace(
        name="numba",
        expm_batch=lambda Ms: expm_batch(np.ascontiguousarray(Ms, dtype=np.complex128)),
        chain=lambda Ms: chain(np.ascontiguousarray(Ms, dtype=np.complex128)),
        orbit_batch=lambda ads, T0: orbit(
            np.ascontiguousarray(ads, dtype=np.complex128), np.ascontiguousarray(T0, dtype=np.complex128)
        ),
    )


NUMPY = SimpleNamespace(name="numpy", expm_batch=_np_expm_batch, chain=_np_chain, orbit_batch=_np_orbit_batch)
_cache: dict[str, SimpleNamespace] = {"numpy": NUMPY}


def get_kernels(name: str | None = None) -> SimpleNamespace:
    """Kernel namespace for ``name`` or for the ``BVBFV_KERNELS`` setting."""
    name = (name or os.environ.get("BVBFV_KERNELS", "numba")).lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown kernel backend {name!r}")
    if name not in _cache:
        try:
            _cache[name] = _build_numba()
        except ImportError:
            return NUMPY
    return _cache[name]
