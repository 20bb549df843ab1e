from fractions import Fraction

import numpy as np

from bvbfv.exact import QIMatrix, gauss, rank_exact


def test_gauss_parses_pairs_and_scalars():
    assert gauss((1, 2)) == (Fraction(1), Fraction(2))
    assert gauss(Fraction(1, 3)) == (Fraction(1, 3), Fraction(0))


def test_arithmetic_matches_complex():
    rng = np.random.default_rng(0)
    for _ in range(20):
        A = QIMatrix.from_entries([[(int(rng.integers(-5, 5)), Fraction(int(rng.integers(-5, 5)), 3)) for _ in range(3)] for _ in range(3)])
        B = QIMatrix.from_entries([[Fraction(int(rng.integers(-5, 5)), 2) for _ in range(3)] for _ in range(3)])
        a, b = A.to_complex(), B.to_complex()
        assert np.allclose((A @ B).to_complex(), a @ b)
        assert np.allclose((A - B.scaled(Fraction(2, 7))).to_complex(), a - 2 / 7 * b)
        assert np.allclose(A.kron(B).to_complex(), np.kron(a, b))


def test_large_entries_stay_exact():
    big = 3**40
    A = QIMatrix.from_entries([[big, 1], [0, big]])
    assert (A @ A)[0, 0] == (Fraction(big * big), Fraction(0))
    assert (A @ A)[0, 1] == (Fraction(2 * big), Fraction(0))


def test_scalar_part_and_trace():
    M = QIMatrix.identity(3).scaled(Fraction(-1, 8))
    c, rest = M.scalar_part()
    assert c == (Fraction(-1, 8), Fraction(0)) and rest.is_zero()
    assert M.trace() == (Fraction(-3, 8), Fraction(0))


def test_rank_exact():
    assert rank_exact(QIMatrix.identity(4)) == 4
    assert rank_exact(QIMatrix.from_entries([[1, 2], [2, 4]])) == 1
    assert rank_exact(QIMatrix.from_entries([[(0, 1), 1], [1, (0, -1)]])) == 1
    assert rank_exact(QIMatrix.zeros(3)) == 0
