"""Exact Gaussian-rational matrices.

A matrix is stored as ``scale * (re + i*im)`` where ``re`` and ``im`` are
object arrays of Python ints and ``scale`` is a Fraction.  Keeping a single
common denominator lets products run on integer object arrays, which is
several times faster than arrays of Fractions.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable

import numpy as np

__all__ = ["QIMatrix", "gauss", "rank_exact"]


def gauss(x) -> tuple[Fraction, Fraction]:
    """Split a number (int, Fraction, complex with rational parts, or pair) into (re, im)."""
    if isinstance(x, tuple):
        return Fraction(x[0]), Fraction(x[1])
    if isinstance(x, complex):
        return Fraction(x.real).limit_denominator(), Fraction(x.imag).limit_denominator()
    return Fraction(x), Fraction(0)


def _int_array(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(0)
    return out


def _maxabs(a: np.ndarray) -> int:
    return max((abs(int(x)) for x in a.flat), default=0)


def _dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # exact int64 product when no partial sum can overflow
    ma, mb = _maxabs(a), _maxabs(b)
    if ma < 2**62 and mb < 2**62 and a.shape[1] * ma * mb < 2**62:
        return a.astype(np.int64).dot(b.astype(np.int64)).astype(object)
    return a.dot(b)


class QIMatrix:
    __slots__ = ("scale", "re", "im")

    def __init__(self, scale: Fraction, re: np.ndarray, im: np.ndarray, *, normalize: bool = True):
        self.scale = Fraction(scale)
        self.re = re
        self.im = im
        if normalize:
            self._normalize()

    # -- construction -------------------------------------------------
    @classmethod
    def from_entries(cls, rows: Iterable[Iterable]) -> "QIMatrix":
        rows = [list(r) for r in rows]
        n, m = len(rows), len(rows[0]) if rows else 0
        parts = [[gauss(x) for x in r] for r in rows]
        den = 1
        for r in parts:
            for a, b in r:
                den = lcm(den, a.denominator, b.denominator)
        re, im = _int_array((n, m)), _int_array((n, m))
        for i, r in enumerate(parts):
            for j, (a, b) in enumerate(r):
                re[i, j] = int(a * den)
                im[i, j] = int(b * den)
        return cls(Fraction(1, den), re, im)

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "QIMatrix":
        m = n if m is None else m
        return cls(Fraction(1), _int_array((n, m)), _int_array((n, m)), normalize=False)

    @classmethod
    def identity(cls, n: int) -> "QIMatrix":
        re = _int_array((n, n))
        for i in range(n):
            re[i, i] = 1
        return cls(Fraction(1), re, _int_array((n, n)), normalize=False)

    def _normalize(self) -> None:
        g = 0
        for v in self.re.flat:
            if v:
                g = gcd(g, v)
        for v in self.im.flat:
            if v:
                g = gcd(g, v)
        if g == 0:
            self.scale = Fraction(1)
            return
        if g != 1:
            self.re = self.re // g
            self.im = self.im // g
            self.scale *= g

    # -- basic protocol -----------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.re.shape

    def __getitem__(self, idx) -> tuple[Fraction, Fraction]:
        return self.scale * self.re[idx], self.scale * self.im[idx]

    def is_zero(self) -> bool:
        return not any(self.re.flat) and not any(self.im.flat)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QIMatrix) or other.shape != self.shape:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def _aligned(self, other: "QIMatrix"):
        # bring both to a common scale 1/den
        den = lcm(self.scale.denominator, other.scale.denominator)
        a = self.scale * den
        b = other.scale * den
        return Fraction(1, den), int(a), int(b)

    def __add__(self, other: "QIMatrix") -> "QIMatrix":
        s, a, b = self._aligned(other)
        return QIMatrix(s, self.re * a + other.re * b, self.im * a + other.im * b)

    def __sub__(self, other: "QIMatrix") -> "QIMatrix":
        s, a, b = self._aligned(other)
        return QIMatrix(s, self.re * a - other.re * b, self.im * a - other.im * b)

    def __neg__(self) -> "QIMatrix":
        return QIMatrix(-self.scale, self.re, self.im, normalize=False)

    def scaled(self, c) -> "QIMatrix":
        """Multiply by a Gaussian-rational scalar."""
        cr, ci = gauss(c)
        if ci == 0:
            return QIMatrix(self.scale * cr, self.re, self.im, normalize=False)
        den = lcm(cr.denominator, ci.denominator)
        ar, ai = int(cr * den), int(ci * den)
        return QIMatrix(self.scale / den, self.re * ar - self.im * ai, self.re * ai + self.im * ar)

    def __mul__(self, c) -> "QIMatrix":
        return self.scaled(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "QIMatrix") -> "QIMatrix":
        rr = _dot(self.re, other.re) - _dot(self.im, other.im)
        ii = _dot(self.re, other.im) + _dot(self.im, other.re)
        return QIMatrix(self.scale * other.scale, rr, ii)

    def kron(self, other: "QIMatrix") -> "QIMatrix":
        rr = np.kron(self.re, other.re) - np.kron(self.im, other.im)
        ii = np.kron(self.re, other.im) + np.kron(self.im, other.re)
        return QIMatrix(self.scale * other.scale, rr, ii)

    def trace(self) -> tuple[Fraction, Fraction]:
        return self.scale * sum(np.diagonal(self.re)), self.scale * sum(np.diagonal(self.im))

    def block(self, rows, cols) -> "QIMatrix":
        rows, cols = np.asarray(rows, dtype=int), np.asarray(cols, dtype=int)
        return QIMatrix(self.scale, self.re[np.ix_(rows, cols)], self.im[np.ix_(rows, cols)])

    def scalar_part(self) -> tuple[tuple[Fraction, Fraction], "QIMatrix"] | None:
        """Return ``(c, M - c*Id)`` with c read off the first diagonal entry."""
        n = self.shape[0]
        if n == 0:
            return None
        c = self[0, 0]
        return c, self - QIMatrix.identity(n).scaled(c)

    def max_abs(self) -> float:
        if self.is_zero():
            return 0.0
        return float(abs(self.scale)) * max(
            abs(complex(int(a), int(b))) for a, b in zip(self.re.flat, self.im.flat)
        )

    def to_complex(self) -> np.ndarray:
        s = float(self.scale)
        return s * (self.re.astype(float) + 1j * self.im.astype(float))

    def __repr__(self) -> str:
        return f"QIMatrix(shape={self.shape}, scale={self.scale})"


def _bareiss_rank(a: np.ndarray) -> int:
    """Rank of an integer object matrix by fraction-free elimination."""
    a = a.copy()
    n, m = a.shape
    rank = 0
    prev = 1
    col = 0
    while rank < n and col < m:
        nz = [i for i in range(rank, n) if a[i, col] != 0]
        if not nz:
            col += 1
            continue
        p = nz[0]
        if p != rank:
            a[[rank, p]] = a[[p, rank]]
        piv = a[rank, col]
        below = a[rank + 1:, col:]
        if below.shape[0]:
            # exact division by the previous pivot is the Bareiss invariant
            upd = (below * piv - np.outer(a[rank + 1:, col], a[rank, col:])) // prev
            a[rank + 1:, col:] = upd
        prev = piv
        rank += 1
        col += 1
    return rank


def rank_exact(mat: QIMatrix) -> int:
    """Exact rank over Q(i), via the real 2n x 2m embedding [[R, -I], [I, R]]."""
    if mat.is_zero():
        return 0
    if not any(mat.im.flat):
        return _bareiss_rank(mat.re)
    big = np.block([[mat.re, -mat.im], [mat.im, mat.re]])
    return _bareiss_rank(big) // 2
