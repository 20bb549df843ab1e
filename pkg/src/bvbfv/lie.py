"""Quadratic Lie algebras in an orthonormal basis, and their matrix representations.

Structure constants are stored as ``f[a][b][c]`` with ``[t_a, t_b] = f_abc t_c``.
The invariant form is the identity matrix, so ad-invariance is the same thing as
total antisymmetry of ``f``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Sequence

from .exact import QIMatrix

__all__ = [
    "ConfigError",
    "LieAlgebra",
    "Representation",
    "make_builtin",
    "check_jacobi",
    "check_invariance",
    "rep_su2",
    "rep_from_matrices",
    "check_rep",
    "load_algebra",
    "CheckReport",
]


class ConfigError(ValueError):
    """Bad user input: unknown algebra name, inconsistent file, invalid spin."""


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    max_violation: Fraction | float = 0
    detail: str = ""


Tensor3 = tuple[tuple[tuple[Fraction, ...], ...], ...]


def _freeze(f) -> Tensor3:
    return tuple(tuple(tuple(Fraction(x) for x in row) for row in mat) for mat in f)


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    f: Tensor3
    name: str = "g"

    def __post_init__(self):
        if self.dim < 1:
            raise ConfigError("dimension must be positive")
        object.__setattr__(self, "f", _freeze(self.f))
        if len(self.f) != self.dim or any(len(r) != self.dim or any(len(c) != self.dim for c in r) for r in self.f):
            raise ConfigError(f"structure constants of {self.name} do not have shape {self.dim}^3")

    def nonzero(self) -> list[tuple[int, int, int, Fraction]]:
        """Sparse list of nonzero structure constants."""
        n = self.dim
        return [(a, b, c, self.f[a][b][c]) for a, b, c in product(range(n), repeat=3) if self.f[a][b][c]]

    def bracket(self, x: Sequence, y: Sequence) -> list:
        """Lie bracket of two coefficient vectors (any ring supporting * and +)."""
        out = [0] * self.dim
        for a, b, c, v in self.nonzero():
            out[c] = out[c] + v * x[a] * y[b]
        return out

    def killing_sum(self) -> Fraction:
        """sum_abc f_abc f_abc, the constant appearing in the Dirac square."""
        return sum((v * v for *_, v in self.nonzero()), Fraction(0))

    def is_abelian(self) -> bool:
        return not self.nonzero()


def _levi_civita() -> list:
    f = [[[Fraction(0)] * 3 for _ in range(3)] for _ in range(3)]
    for (a, b, c), s in {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1, (1, 0, 2): -1, (0, 2, 1): -1, (2, 1, 0): -1}.items():
        f[a][b][c] = Fraction(s)
    return f


def direct_sum(parts: Sequence[LieAlgebra], name: str | None = None) -> LieAlgebra:
    n = sum(p.dim for p in parts)
    f = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    off = 0
    for p in parts:
        for a, b, c, v in p.nonzero():
            f[off + a][off + b][off + c] = v
        off += p.dim
    return LieAlgebra(n, f, name or "+".join(p.name for p in parts))


def make_builtin(name: str, *args) -> LieAlgebra:
    """Build a named algebra.

    Accepted forms: ``"su2"``, ``"so3"``, ``"abelian", n`` (or ``"abelian(3)"``),
    ``"direct_sum", [alg, ...]`` and strings like ``"su2+abelian(1)"``.
    """
    key = name.strip().lower()
    if "+" in key and key != "+":
        return direct_sum([make_builtin(part) for part in key.split("+")], name=key)
    if key.startswith("abelian(") and key.endswith(")"):
        args = (int(key[len("abelian("):-1]),)
        key = "abelian"
    if key in ("su2", "so3"):
        # so(3) and su(2) share the Levi-Civita constants in an orthonormal basis
        return LieAlgebra(3, _levi_civita(), key)
    if key == "abelian":
        n = int(args[0]) if args else 1
        if n < 1:
            raise ConfigError("abelian(n) needs n >= 1")
        return LieAlgebra(n, [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)], f"abelian({n})")
    if key == "direct_sum":
        if not args or not args[0]:
            raise ConfigError("direct_sum needs a non-empty list of algebras")
        parts = [p if isinstance(p, LieAlgebra) else make_builtin(p) for p in args[0]]
        return direct_sum(parts)
    raise ConfigError(f"unknown algebra {name!r}")


def check_jacobi(L: LieAlgebra) -> CheckReport:
    n = L.dim
    f = L.f
    worst = Fraction(0)
    where = ""
    for a, b, c, d in product(range(n), repeat=4):
        s = sum(f[a][b][e] * f[e][c][d] + f[b][c][e] * f[e][a][d] + f[c][a][e] * f[e][b][d] for e in range(n))
        if abs(s) > worst:
            worst, where = abs(s), f"(a,b,c,d)=({a},{b},{c},{d})"
    return CheckReport(worst == 0, worst, where)


def check_invariance(L: LieAlgebra) -> CheckReport:
    n = L.dim
    f = L.f
    worst = Fraction(0)
    where = ""
    for a, b, c in product(range(n), repeat=3):
        for v in (f[a][b][c] + f[b][a][c], f[a][b][c] + f[a][c][b]):
            if abs(v) > worst:
                worst, where = abs(v), f"(a,b,c)=({a},{b},{c})"
    return CheckReport(worst == 0, worst, where)


def load_algebra(path: str | Path) -> LieAlgebra:
    """Read the JSON algebra format ``{name, dim, f: [[a, b, c, value], ...]}``.

    Entries are completed by antisymmetry in the first two slots; an entry that
    contradicts an earlier one (directly or through that completion) is rejected.
    """
    data = json.loads(Path(path).read_text())
    try:
        n = int(data["dim"])
        entries = data.get("f", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed algebra file {path}: {exc}") from exc
    f = [[[None] * n for _ in range(n)] for _ in range(n)]

    def put(a, b, c, v):
        old = f[a][b][c]
        if old is not None and old != v:
            raise ConfigError(f"inconsistent entry f[{a}][{b}][{c}]: {old} vs {v}")
        f[a][b][c] = v

    for item in entries:
        a, b, c, v = item
        a, b, c = int(a), int(b), int(c)
        if not all(0 <= i < n for i in (a, b, c)):
            raise ConfigError(f"index out of range in entry {item}")
        v = Fraction(str(v))
        put(a, b, c, v)
        put(b, a, c, -v)
    full = [[[x if x is not None else Fraction(0) for x in row] for row in mat] for mat in f]
    return LieAlgebra(n, full, str(data.get("name", Path(path).stem)))


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True)
class Representation:
    algebra: LieAlgebra
    dimV: int
    rho: tuple  # tuple of QIMatrix, one per basis element
    label: str = "R"
    spin: Fraction | None = None

    def X(self, hbar=1) -> list[QIMatrix]:
        """Quantized orbit coordinates X_a = hbar * rho_a."""
        h = Fraction(hbar)
        return [r.scaled(h) for r in self.rho]

    def casimir(self) -> QIMatrix:
        out = QIMatrix.zeros(self.dimV)
        for r in self.rho:
            out = out + r @ r
        return out


def _spin(j) -> Fraction:
    try:
        j = Fraction(str(j)) if isinstance(j, float) else Fraction(j)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid spin {j!r}") from exc
    if j < 0 or (2 * j).denominator != 1:
        raise ConfigError(f"spin must be a non-negative half-integer, got {j}")
    return j


def rep_su2(j, hbar=1, algebra: LieAlgebra | None = None) -> Representation:
    """Spin-j representation of su(2) with rational (Gaussian) entries.

    The ladder operators are taken in a rescaled basis where
    ``J+ e_m = (j-m)(j+m+1) e_{m+1}`` and ``J- e_m = e_{m-1}``; this is similar to
    the unitary spin-j matrices, so ``rho_a = -i J_a`` satisfies
    ``[rho_a, rho_b] = eps_abc rho_c`` exactly without square roots.  ``hbar`` is
    not baked into ``rho``; use :meth:`Representation.X`.
    """
    j = _spin(j)
    L = algebra or make_builtin("su2")
    n = int(2 * j) + 1
    ms = [j - k for k in range(n)]  # e_0 has m = j
    jp = [[Fraction(0)] * n for _ in range(n)]
    jm = [[Fraction(0)] * n for _ in range(n)]
    for k, m in enumerate(ms):
        if k > 0:  # m+1 lives at index k-1
            jp[k - 1][k] = (j - m) * (j + m + 1)
        if k < n - 1:
            jm[k + 1][k] = Fraction(1)
    half = Fraction(1, 2)
    # J_x = (J+ + J-)/2, J_y = (J+ - J-)/(2i), J_z = diag(m); rho = -i J
    rx = [[(0, -half * (jp[r][c] + jm[r][c])) for c in range(n)] for r in range(n)]
    ry = [[(-half * (jp[r][c] - jm[r][c]), 0) for c in range(n)] for r in range(n)]
    rz = [[(0, -ms[r]) if r == c else (0, 0) for c in range(n)] for r in range(n)]
    rho = tuple(QIMatrix.from_entries(m) for m in (rx, ry, rz))
    del hbar  # kept in the signature so callers can pass the physical hbar explicitly
    return Representation(L, n, rho, f"spin{j}", spin=j)


def rep_from_matrices(L: LieAlgebra, mats: Sequence, label: str = "R") -> Representation:
    rho = tuple(m if isinstance(m, QIMatrix) else QIMatrix.from_entries(m) for m in mats)
    if len(rho) != L.dim:
        raise ConfigError(f"need {L.dim} matrices, got {len(rho)}")
    n = rho[0].shape[0]
    if any(r.shape != (n, n) for r in rho):
        raise ConfigError("representation matrices must be square and of equal size")
    return Representation(L, n, rho, label)


def check_rep(L: LieAlgebra, R: Representation, hbar=1) -> CheckReport:
    """Verify [X_a, X_b] = hbar f_abc X_c with X = hbar * rho."""
    if len(R.rho) != L.dim:
        raise ConfigError(f"representation has {len(R.rho)} matrices, algebra has dim {L.dim}")
    h = Fraction(hbar)
    X = R.X(h)
    worst = 0.0
    where = ""
    for a in range(L.dim):
        for b in range(L.dim):
            lhs = X[a] @ X[b] - X[b] @ X[a]
            rhs = QIMatrix.zeros(R.dimV)
            for c in range(L.dim):
                if L.f[a][b][c]:
                    rhs = rhs + X[c].scaled(h * L.f[a][b][c])
            diff = lhs - rhs
            if not diff.is_zero():
                v = diff.max_abs()
                if v > worst:
                    worst, where = v, f"(a,b)=({a},{b})"
    return CheckReport(worst == 0, worst, where)
