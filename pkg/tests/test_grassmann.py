from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bvbfv.grassmann import Generator, GradedPoly, derive, parse_poly, poisson_bracket

from conftest import canonical_pairs

x = Generator("x", 0, 0)
y = Generator("y", 0, 0, order=("y",))
c = Generator("c", 0, 1)
e = Generator("e", 0, 1, order=("e",))
a = Generator("a", 1, 0)
da = Generator("da", 0, 0, 1)  # delta-odd, p-even


def test_odd_generator_squares_to_zero():
    assert not GradedPoly.gen(c) * GradedPoly.gen(c)
    assert not GradedPoly.gen(a) * GradedPoly.gen(a)
    assert not GradedPoly.gen(da) * GradedPoly.gen(da)
    assert GradedPoly.gen(x) * GradedPoly.gen(x)


def test_koszul_swap():
    C, E = GradedPoly.gen(c), GradedPoly.gen(e)
    assert C * E == -(E * C)
    X, Y = GradedPoly.gen(x), GradedPoly.gen(y)
    assert X * Y == Y * X
    # p-odd and q-odd generators commute: (-1)^(1*0 + 0*1)
    assert GradedPoly.gen(c) * GradedPoly.gen(da) == GradedPoly.gen(da) * GradedPoly.gen(c)


def test_left_and_right_derivatives():
    p = GradedPoly.word([c, e])
    assert derive(p, c, "left") == GradedPoly.gen(e)
    assert derive(p, c, "right") == -GradedPoly.gen(e)
    with pytest.raises(ValueError):
        derive(p, c, "middle")


def test_components_and_degrees():
    p = GradedPoly.word([c, a]) + GradedPoly.gen(x)
    assert p.component(form=1) == GradedPoly.word([c, a])
    assert p.degrees() == {(1, 1, 0), (0, 0, 0)}
    assert not p.is_homogeneous()


def test_string_round_trip():
    gens = {g.name: g for g in (x, y, c, e, a)}
    p = GradedPoly.word([c, e], Fraction(-2, 3)) + GradedPoly.word([x, x, y], 5) - GradedPoly.gen(a)
    assert parse_poly(str(p), gens) == p
    assert parse_poly("0", gens) == GradedPoly()


def test_pairing_parity_is_checked():
    with pytest.raises(ValueError):
        poisson_bracket(GradedPoly.gen(x), GradedPoly.gen(y), [(x, y, 1)], degree=1)
    with pytest.raises(ValueError):
        poisson_bracket(GradedPoly.gen(x), GradedPoly.gen(c), [(x, c, 1), (x, e, 1)], degree=1)


# -- graded bracket axioms (random triples) ------------------------------------

_SETUPS = {k: canonical_pairs(k) for k in (0, 1)}


def _poly(draw, gens: list[Generator], parity: int) -> GradedPoly:
    out = GradedPoly()
    terms = draw(st.lists(st.tuples(st.lists(st.integers(0, len(gens) - 1), max_size=3),
                                    st.integers(-3, 3), st.integers(1, 3)), min_size=1, max_size=3))
    for idx, num, den in terms:
        m = [gens[i] for i in idx]
        if sum(g.p for g in m) % 2 == parity:
            out = out + GradedPoly.word(m, Fraction(num, den))
    return out


@st.composite
def triples(draw, k: int):
    gens, _ = _SETUPS[k]
    ps = draw(st.tuples(st.integers(0, 1), st.integers(0, 1), st.integers(0, 1)))
    return ps, tuple(_poly(draw, gens, p) for p in ps)


def _sign(u: int, v: int) -> int:
    return -1 if (u * v) % 2 else 1


@pytest.mark.parametrize("k", [1, 0])
@settings(max_examples=200, deadline=None, derandomize=True)
@given(data=st.data())
def test_bracket_axioms(k, data):
    (pf, pg, ph), (F, G, H) = data.draw(triples(k))
    pairing = _SETUPS[k][1]

    def B(u, v):
        return poisson_bracket(u, v, pairing, k)

    # antisymmetry
    assert B(F, G) == B(G, F) * (-_sign(pf + k, pg + k))
    # Jacobi (derivation form)
    assert B(F, B(G, H)) == B(B(F, G), H) + B(G, B(F, H)) * _sign(pf + k, pg + k)
    # Leibniz in the second slot
    assert B(F, G * H) == B(F, G) * H + G * B(F, H) * _sign(pf + k, pg)
