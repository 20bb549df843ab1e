"""Exact arithmetic in free bigraded-commutative polynomial algebras.

Every generator carries a form degree (on the source), a ghost number and a
field-space form degree ("delta degree").  Two parities follow from these:
``p = form + ghost`` and ``q = delta`` (mod 2), and moving ``x`` past ``y``
costs ``(-1)**(p_x p_y + q_x q_y)``.  With this rule the source differential
``d`` (bidegree (1, 0)) and the field-space differential ``delta`` (bidegree
(0, 1)) commute, which is the convention the BV computations use throughout.

A generator with ``p + q`` odd squares to zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

__all__ = [
    "Generator",
    "GradedPoly",
    "Monomial",
    "derive",
    "apply_derivation",
    "poisson_bracket",
    "parse_poly",
]


@dataclass(frozen=True, eq=False)
class Generator:
    name: str
    form: int = 0
    ghost: int = 0
    delta: int = 0
    lie: int | None = None
    family: str = ""
    role: str = "field"  # field | d_image | delta_image | auxiliary
    d_partner: str | None = None
    delta_partner: str | None = None
    order: tuple = ()

    def __post_init__(self):
        if not self.order:
            object.__setattr__(self, "order", (self.name,))
        object.__setattr__(self, "_key", (self.order, self.name))

    @property
    def p(self) -> int:
        return (self.form + self.ghost) % 2

    @property
    def q(self) -> int:
        return self.delta % 2

    @property
    def nilpotent(self) -> bool:
        return (self.p + self.q) % 2 == 1

    @property
    def total(self) -> int:
        return self.form + self.ghost

    def __eq__(self, other):
        return isinstance(other, Generator) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __lt__(self, other: "Generator"):
        return self._key < other._key

    def __repr__(self):
        return self.name


Monomial = tuple  # sorted tuple of Generator


def _swap_sign(x: Generator, y: Generator) -> int:
    return -1 if (x.p * y.p + x.q * y.q) % 2 else 1


def _merge(m1: Monomial, m2: Monomial) -> tuple[int, Monomial]:
    """Product of two canonical monomials: (sign, monomial) with sign 0 for a vanishing product."""
    if not m1:
        return 1, m2
    if not m2:
        return 1, m1
    sign = 1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    # parity sums of the not-yet-consumed tail of m1
    tail_p = [0] * (n1 + 1)
    tail_q = [0] * (n1 + 1)
    for k in range(n1 - 1, -1, -1):
        tail_p[k] = tail_p[k + 1] + m1[k].p
        tail_q[k] = tail_q[k + 1] + m1[k].q
    while i < n1 and j < n2:
        x, y = m1[i], m2[j]
        if y < x:
            # y jumps over the remaining m1[i:]
            if (y.p * tail_p[i] + y.q * tail_q[i]) % 2:
                sign = -sign
            out.append(y)
            j += 1
        else:
            if x == y and x.nilpotent:
                return 0, ()
            out.append(x)
            i += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return sign, tuple(out)


def _canonical(gens: Sequence[Generator]) -> tuple[int, Monomial]:
    """Sort a word of generators, returning the Koszul sign (0 if it vanishes)."""
    sign = 1
    mono: Monomial = ()
    for g in gens:
        s, mono = _merge(mono, (g,))
        if s == 0:
            return 0, ()
        sign *= s
    return sign, mono


def mono_degrees(m: Monomial) -> tuple[int, int, int]:
    return (sum(g.form for g in m), sum(g.ghost for g in m), sum(g.delta for g in m))


class GradedPoly:
    """Polynomial with exact rational coefficients over bigraded generators."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = Fraction(c)

    # -- constructors -------------------------------------------------
    @classmethod
    def gen(cls, g: Generator, coeff=1) -> "GradedPoly":
        return cls({(g,): Fraction(coeff)})

    @classmethod
    def const(cls, c) -> "GradedPoly":
        return cls({(): Fraction(c)}) if c else cls()

    @classmethod
    def word(cls, gens: Sequence[Generator], coeff=1) -> "GradedPoly":
        s, m = _canonical(gens)
        return cls({m: Fraction(coeff) * s}) if s else cls()

    # -- algebra ------------------------------------------------------
    def copy(self) -> "GradedPoly":
        out = GradedPoly()
        out.terms = dict(self.terms)
        return out

    def _iadd(self, m: Monomial, c: Fraction) -> None:
        v = self.terms.get(m, 0) + c
        if v:
            self.terms[m] = v
        else:
            self.terms.pop(m, None)

    def __add__(self, other) -> "GradedPoly":
        if not isinstance(other, GradedPoly):
            other = GradedPoly.const(other)
        out = self.copy()
        for m, c in other.terms.items():
            out._iadd(m, c)
        return out

    __radd__ = __add__

    def __neg__(self) -> "GradedPoly":
        return GradedPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "GradedPoly":
        if not isinstance(other, GradedPoly):
            other = GradedPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "GradedPoly":
        return (-self) + other

    def __mul__(self, other) -> "GradedPoly":
        if not isinstance(other, GradedPoly):
            c = Fraction(other)
            if not c:
                return GradedPoly()
            return GradedPoly({m: v * c for m, v in self.terms.items()})
        out = GradedPoly()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                s, m = _merge(m1, m2)
                if s:
                    out._iadd(m, c1 * c2 * s)
        return out

    def __rmul__(self, other) -> "GradedPoly":
        # scalars commute with everything
        return self * other

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedPoly):
            if other == 0:
                return not self.terms
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda t: [g._key for g in t[0]]))

    # -- gradings -----------------------------------------------------
    def degrees(self) -> set[tuple[int, int, int]]:
        return {mono_degrees(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def component(self, form: int | None = None, ghost: int | None = None, delta: int | None = None) -> "GradedPoly":
        out = GradedPoly()
        for m, c in self.terms.items():
            f, g, dl = mono_degrees(m)
            if (form is None or f == form) and (ghost is None or g == ghost) and (delta is None or dl == delta):
                out.terms[m] = c
        return out

    def parity(self) -> tuple[int, int]:
        """(p, q) parity; raises if the polynomial mixes parities."""
        par = {(sum(g.p for g in m) % 2, sum(g.q for g in m) % 2) for m in self.terms}
        if len(par) > 1:
            raise ValueError("inhomogeneous parity")
        return par.pop() if par else (0, 0)

    def generators(self) -> set[Generator]:
        return {g for m in self.terms for g in m}

    def substitute(self, rule: Callable[[Generator], "GradedPoly | None"]) -> "GradedPoly":
        """Algebra homomorphism replacing each generator by rule(g) (None keeps g).

        Replacement values must have the parity of the generator they replace.
        """
        out = GradedPoly()
        cache: dict[Generator, GradedPoly] = {}
        for m, c in self.terms.items():
            acc = GradedPoly.const(c)
            for g in m:
                if g not in cache:
                    r = rule(g)
                    cache[g] = GradedPoly.gen(g) if r is None else r
                acc = acc * cache[g]
                if not acc:
                    break
            out = out + acc
        return out

    # -- text ---------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self:
            body = "*".join(g.name for g in m)
            if not body:
                parts.append(f"{c}")
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"GradedPoly({self})"


def parse_poly(text: str, gens: Mapping[str, Generator]) -> GradedPoly:
    """Inverse of ``str(poly)`` given the generator table."""
    text = text.strip()
    if text == "0":
        return GradedPoly()
    out = GradedPoly()
    text = text.replace("- ", "+ -")
    for chunk in text.split(" + "):
        chunk = chunk.strip()
        coeff = Fraction(1)
        factors = chunk.split("*")
        if factors[0].startswith("-") and factors[0][1:] in gens:
            coeff = Fraction(-1)
            factors[0] = factors[0][1:]
        elif factors[0] not in gens:
            coeff = Fraction(factors[0])
            factors = factors[1:]
        out = out + GradedPoly.word([gens[f] for f in factors], coeff)
    return out


# ---------------------------------------------------------------------------
# derivations


def apply_derivation(
    poly: GradedPoly,
    image: Callable[[Generator], GradedPoly | None],
    parity: tuple[int, int],
) -> GradedPoly:
    """Extend ``g -> image(g)`` to a derivation of the given (p, q) parity, acting from the left."""
    pD, qD = parity
    out = GradedPoly()
    cache: dict[Generator, GradedPoly | None] = {}
    for m, c in poly.terms.items():
        sp = sq = 0
        for i, g in enumerate(m):
            if g not in cache:
                cache[g] = image(g)
            img = cache[g]
            if img:
                sign = -1 if (pD * sp + qD * sq) % 2 else 1
                left = GradedPoly({m[:i]: Fraction(c * sign)})
                right = GradedPoly({m[i + 1:]: Fraction(1)})
                out = out + left * img * right
            sp += g.p
            sq += g.q
    return out


def derive(poly: GradedPoly, g: Generator, side: str = "left") -> GradedPoly:
    """Partial derivative by a generator, acting from the left or from the right."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    out = GradedPoly()
    for m, c in poly.terms.items():
        idx = [i for i, x in enumerate(m) if x == g]
        if not idx:
            continue
        k = len(idx)
        if side == "left":
            i = idx[0]
            passed = m[:i]
        else:
            i = idx[-1]
            passed = m[i + 1:]
        sgn = 1
        for y in passed:
            sgn *= _swap_sign(g, y)
        rest = m[:i] + m[i + 1:]
        out._iadd(rest, c * k * sgn)
    return out


def poisson_bracket(
    p: GradedPoly,
    q: GradedPoly,
    pairing: Iterable[tuple[Generator, Generator, Fraction]],
    degree: int = 1,
) -> GradedPoly:
    """Graded Poisson bracket from a constant pairing table.

    Each entry ``(x, y, w)`` sets ``{x, y} = w``; the reverse entry is fixed by
    graded antisymmetry of a bracket of the given degree parity (1 for the BV
    antibracket, 0 for an even Poisson bracket).  Parities are the p-parities
    (form + ghost), so the bracket is meant for delta-degree-0 polynomials.
    """
    table: dict[tuple[Generator, Generator], Fraction] = {}
    seen: dict[Generator, Generator] = {}
    k = degree % 2
    for x, y, w in pairing:
        for a, b in ((x, y), (y, x)):
            if a in seen and seen[a] != b:
                raise ValueError(f"generator {a} paired twice")
            seen[a] = b
        w = Fraction(w)
        if (x.p + y.p + k) % 2:
            raise ValueError(f"pairing ({x}, {y}) has the wrong parity for a degree-{degree} bracket")
        table[(x, y)] = table.get((x, y), 0) + w
        if x != y:
            rev = -w if ((x.p + k) * (y.p + k)) % 2 == 0 else w
            table[(y, x)] = table.get((y, x), 0) + rev
    out = GradedPoly()
    for (x, y), w in table.items():
        if not w:
            continue
        dp = derive(p, x, "right")
        if not dp:
            continue
        dq = derive(q, y, "left")
        if dq:
            out = out + dp * dq * w
    return out
