from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from bvbfv.exact import QIMatrix
from bvbfv.lie import ConfigError, make_builtin, rep_from_matrices, rep_su2
from bvbfv.weil_quant import (casimir, centrality_check, cubic_dirac, diagonal_generators, dirac_square_check,
                              jordan_wigner, parity_check, spinor_rep)

GOLDEN = Path(__file__).parent / "golden"
HALF = Fraction(1, 2)


@pytest.mark.parametrize("n", range(0, 7))
@pytest.mark.parametrize("graded", [False, True])
def test_jordan_wigner(n, graded):
    gam, par = jordan_wigner(n, graded)
    assert len(gam) == n
    size = 2 ** ((n + 1) // 2 if graded else n // 2)
    for a in range(n):
        assert gam[a].shape == (size, size)
        for b in range(n):
            ac = gam[a] @ gam[b] + gam[b] @ gam[a]
            assert ac == (QIMatrix.identity(size).scaled(2) if a == b else QIMatrix.zeros(size))
    if n % 2 == 0 or graded:
        assert par is not None
        assert all((par @ g + g @ par).is_zero() for g in gam)
    else:
        assert par is None


@pytest.mark.parametrize("hbar", [1, 2, Fraction(1, 3)])
def test_clifford_relations(su2, hbar):
    cl = spinor_rep(su2, hbar)
    assert cl.check()
    psi = cl.psi_float()
    assert np.allclose(psi[0] @ psi[0], float(hbar) / 2 * np.eye(cl.dimS))


def _c(j, hbar):
    # (ħ/2)·(-ħ² j(j+1)) - ħ³/48 · 6
    return hbar * (-hbar * hbar * j * (j + 1)) / 2 - hbar**3 * 6 / 48


@pytest.mark.parametrize("j", [0, HALF, 1, Fraction(3, 2), 2])
@pytest.mark.parametrize("hbar", [1, 2])
def test_dirac_square_su2(su2, j, hbar):
    D = cubic_dirac(su2, rep_su2(j), spinor_rep(su2, hbar))
    rep = dirac_square_check(D)
    assert rep.identity_ok and rep.scalar
    assert rep.c == (_c(Fraction(j), Fraction(hbar)), 0)
    assert centrality_check(D).ok


def test_float_square_agrees(su2):
    D = cubic_dirac(su2, rep_su2(1), spinor_rep(su2, 2))
    M = D.matrix_float()
    assert np.allclose(M @ M, D.square().to_complex(), atol=1e-12)


@pytest.mark.parametrize("coeff", [Fraction(1, 5), Fraction(1, 7), 0])
def test_perturbed_cubic_is_detected(su2, coeff):
    D = cubic_dirac(su2, rep_su2(HALF), spinor_rep(su2, 1), coeff)
    cen = centrality_check(D)
    assert not cen.ok and cen.failures
    assert not dirac_square_check(D).identity_ok


def test_diagonal_generators_close(su2):
    D = cubic_dirac(su2, rep_su2(1), spinor_rep(su2, 1))
    G = diagonal_generators(D)
    assert (G[0] @ G[1] - G[1] @ G[0]) == G[2]
    assert centrality_check(D).homomorphism_ok


def test_parity(su2):
    assert parity_check(cubic_dirac(su2, rep_su2(HALF), spinor_rep(su2, 1))) is None
    D = cubic_dirac(su2, rep_su2(HALF), spinor_rep(su2, 1, graded=True))
    assert D.cliff.dimS == 4 and parity_check(D)
    assert dirac_square_check(D).identity_ok


def test_abelian_dirac_squares_to_casimir():
    L = make_builtin("abelian(2)")
    R = rep_from_matrices(L, [[[(0, 1)]], [[(0, 2)]]], "u1")
    D = cubic_dirac(L, R, spinor_rep(L, 1))
    rep = dirac_square_check(D)
    assert rep.identity_ok and rep.c == (Fraction(-5, 2), 0)
    assert casimir(R, 1)[0, 0] == (Fraction(-5), 0)


def test_mismatched_inputs(su2):
    with pytest.raises(ConfigError):
        cubic_dirac(su2, rep_su2(HALF), spinor_rep(make_builtin("abelian(3)"), 1))


def test_golden_dirac_matrix(su2):
    D = cubic_dirac(su2, rep_su2(HALF), spinor_rep(su2, 1))
    n = D.dim
    data = {
        "prefactor": "sqrt(1/2)",
        "core": [[[str(x) for x in D.core[i, j]] for j in range(n)] for i in range(n)],
    }
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    path = GOLDEN / "dirac_su2_j0.5_hbar1.json"
    if os.environ.get("BVBFV_UPDATE_GOLDEN"):
        path.write_text(text)
    assert n == 4 and text == path.read_text()
