from fractions import Fraction

import pytest

from bvbfv.bfv_states import (BoundaryPoint, bfv_charge, boundary_space, cohomology, constraint_symbol,
                              insertion_algebra_check)
from bvbfv.exact import QIMatrix
from bvbfv.lie import ConfigError, make_builtin, rep_from_matrices, rep_su2

HALF = Fraction(1, 2)


def interval(L, j1, j2, hbar=1):
    return boundary_space([("z", 1, rep_su2(j1, algebra=L)), ("z'", -1, rep_su2(j2, algebra=L))], L, hbar)


def test_dimensions(su2):
    H = interval(su2, HALF, HALF)
    assert H.dims == [8, 8] and H.dim == 64
    even, odd = H.parity_indices()
    assert len(even) == len(odd) == 32


def test_charge_is_odd_and_squares_to_sum(su2):
    H = interval(su2, HALF, 1)
    Q = bfv_charge(H)
    P = H.parity()
    assert (P @ Q.core + Q.core @ P).is_zero()
    c, rest = Q.square().scalar_part()
    # c(1/2) + c(1) at ħ = 1
    assert rest.is_zero() and c == (Fraction(-1, 2) + Fraction(-9, 8), 0)


def test_koszul_signs_cancel_cross_terms(su2):
    # without the parity on the first factor the cross terms would survive
    H = interval(su2, HALF, HALF)
    D1, D2 = H.diracs
    I8 = QIMatrix.identity(8)
    naive = D1.core.kron(I8) - I8.kron(D2.core)
    sp = (naive @ naive).scalar_part()
    assert sp is None or not sp[1].is_zero()
    assert bfv_charge(H).square().scalar_part()[1].is_zero()


@pytest.mark.parametrize("j", [HALF, 1])
def test_su2_cohomology_trivial(su2, j):
    rep = cohomology(interval(su2, j, j))
    assert rep.verdict == "trivial"
    assert rep.cohomology_dim_by_parity == {"even": 0, "odd": 0}


def test_float_mode_agrees(su2):
    H = interval(su2, HALF, HALF)
    assert cohomology(H, mode="float").verdict == cohomology(H).verdict == "trivial"
    with pytest.raises(ConfigError):
        cohomology(H, mode="fuzzy")


def test_abelian_zero_charge():
    L = make_builtin("abelian(1)")
    R = rep_from_matrices(L, [[[0]]], "trivial")
    rep = cohomology(boundary_space([("z", 1, R), ("z'", -1, R)], L))
    assert rep.charge_squared_scalar == (0, 0)
    assert rep.cohomology_dim_by_parity == {"even": 2, "odd": 2}
    assert rep.verdict == "nontrivial"


def test_boundary_space_validation(su2):
    with pytest.raises(ConfigError):
        boundary_space([], su2)
    with pytest.raises(ConfigError):
        boundary_space([BoundaryPoint("z", 2, rep_su2(HALF))], su2)


def test_insertion_algebra(su2):
    rep = insertion_algebra_check([rep_su2(HALF), rep_su2(1), rep_su2(0)], 2)
    assert rep.ok and rep.extracted_agree
    bad = rep_from_matrices(su2, [[[0, 1], [0, 0]], [[0, 0], [1, 0]], [[1, 0], [0, -1]]])
    assert not insertion_algebra_check([bad]).ok


def test_constraint_symbol():
    s = constraint_symbol([("1", "z1", "z'1"), ("2", "z2", "z'2")])
    assert s.term_count() == 7
    assert [p[1] for p in s.points] == [1, -1, 1, -1]
    assert str(s).endswith("Ψ = 0")
