"""Acceptance criteria 1-10, each at its stated tolerance and time budget.

Every criterion records one PASS/FAIL line, printed in the terminal summary.
Criteria 3 and 4b compare against reference boundary displays that are not
mutually consistent in their signs; they are strict xfails (the analysis is in
the decisions ledger), so an unexpected pass would also be reported.
"""
from __future__ import annotations

import json
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import product
from pathlib import Path

import numpy as np
import pytest

from bvbfv.bfv_states import boundary_space, cohomology
from bvbfv.grassmann import GradedPoly, poisson_bracket
from bvbfv.lie import load_algebra, make_builtin, rep_from_matrices, rep_su2
from bvbfv.orbit_numeric import (OrbitSpec, gauge_transform, kirillov_convergence, random_connection,
                                 tangent_orthogonality, wilson_holonomy)
from bvbfv.variational import (attach_wilson, boundary_bfv, boundary_report, build_cs1, build_cs3, check_cme,
                               check_hamiltonian, compare_with_reference)
from bvbfv.weil_quant import casimir, centrality_check, cubic_dirac, dirac_square_check, spinor_rep
from bvbfv.exact import QIMatrix

from conftest import ACCEPTANCE, canonical_pairs

GOLDEN = Path(__file__).parent / "golden"
HALF = Fraction(1, 2)
SPINS = [Fraction(0), HALF, Fraction(1), Fraction(3, 2), Fraction(2)]
XFAIL_SIGNS = "reference boundary displays carry inconsistent signs; see decisions ledger (criteria 3/4)"


@contextmanager
def criterion(key: str, title: str, budget: float | None = None, expected_fail: bool = False):
    t = time.perf_counter()
    status = "FAIL"
    try:
        yield
        el = time.perf_counter() - t
        if budget is not None:
            assert el < budget, f"took {el:.2f} s, budget {budget} s"
        status = "PASS"
    finally:
        el = time.perf_counter() - t
        tail = " (expected: see decisions ledger)" if expected_fail and status == "FAIL" else ""
        line = f"criterion {key:>3} {status}  {title}  [{el:.2f} s]{tail}"
        ACCEPTANCE[key] = line
        print(line)


def _su2():
    return make_builtin("su2")


# 1 ---------------------------------------------------------------------------------


def test_criterion_01_cme_3d(tmp_path):
    with criterion("1", "3D master equation on six algebras, Jacobi mutation detected"):
        for name in ("su2", "so3", "abelian(1)", "abelian(2)", "abelian(3)", "su2+abelian(1)"):
            t = time.perf_counter()
            rep = check_cme(build_cs3(make_builtin(name)))
            assert rep.ok, (name, rep.bulk_residue)
            assert time.perf_counter() - t < 10, name
        f = [[0, 1, 2, 1], [1, 2, 0, 1], [2, 0, 1, 1], [0, 1, 0, 1]]
        p = tmp_path / "mutated.json"
        p.write_text(json.dumps({"name": "mutated", "dim": 3, "f": f}))
        assert check_cme(build_cs3(load_algebra(p))).term_count() > 0


# 2 ---------------------------------------------------------------------------------


def test_criterion_02_cme_1d_wilson():
    with criterion("2", "1D master equation with Wilson line: (H, g+) before, 0 after", budget=5):
        m = attach_wilson(build_cs1(_su2()), (0, 0, 1), "Γ")
        rep = check_cme(m)
        alg = m.alg
        assert rep.raw_residue["Γ"] == alg.pair(alg.field("H"), alg.field("g+"))
        assert not rep.bulk_residue["Γ"]


# 3 ---------------------------------------------------------------------------------


def _cs3_two_lines():
    m = build_cs3(_su2(), boundary=True)
    attach_wilson(m, (0, 0, 1), "Γ1")
    attach_wilson(m, (1, 0, 0), "Γ2")
    return m


@pytest.mark.xfail(strict=True, reason=XFAIL_SIGNS)
def test_criterion_03_boundary_3d():
    with criterion("3", "3D boundary: Ω_∂ and S_∂ term-for-term with the reference, 4 signed points",
                   expected_fail=True):
        b = boundary_bfv(_cs3_two_lines())
        assert b.ok
        assert [(p.point, p.sign) for p in b.action.point_terms] == [("z1", 1), ("z'1", -1), ("z2", 1), ("z'2", -1)]
        text = json.dumps(boundary_report(b.model), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
        assert text == (GOLDEN / "cs3_su2_two_lines_boundary.json").read_text()
        agree = compare_with_reference(b)
        assert all(agree.values()), agree


# 4 ---------------------------------------------------------------------------------


def _cs1():
    return attach_wilson(build_cs1(_su2(), boundary=True), (0, 0, 1), "Γ")


def test_criterion_04a_boundary_1d_master_equation():
    with criterion("4a", "1D boundary: {S_∂, S_∂} is the signed sum of ±(T0, T0), total 0"):
        b = boundary_bfv(_cs1())
        assert b.ok, b.checks
        assert b.point_cme == {"z": -1, "z'": 1}
        assert sum(b.point_cme.values()) == 0


@pytest.mark.xfail(strict=True, reason=XFAIL_SIGNS)
def test_criterion_04b_boundary_1d_action():
    with criterion("4b", "1D boundary: S_∂ per point equals the reference display", expected_fail=True):
        agree = compare_with_reference(boundary_bfv(_cs1()))
        assert agree["action_point Γ"], agree


# 5 ---------------------------------------------------------------------------------


def test_criterion_05_hamiltonian():
    with criterion("5", "ι_Q Ω = δS - d α by re-expansion, 3D (with lines) and 1D"):
        for m in (build_cs3(_su2(), boundary=True), _cs3_two_lines(), _cs1()):
            assert check_hamiltonian(m).ok, m.name


# 6 ---------------------------------------------------------------------------------


def test_criterion_06_dirac():
    with criterion("6", "𝔇² = (ħ/2)Ĉ - (ħ³/48)Σf² for su2 j ≤ 2, ħ ∈ {1, 2}; central; perturbation caught", budget=5):
        L = _su2()
        f2 = Fraction(6)
        for hbar, j in product((1, 2), SPINS):
            R = rep_su2(j)
            D = cubic_dirac(L, R, spinor_rep(L, hbar))
            rep = dirac_square_check(D)
            assert rep.identity_ok, (hbar, j)
            if hbar == 1:
                # literal form at ħ = 1: ½Ĉ_R - (1/48)Σf²
                lit = casimir(R, 1).kron(QIMatrix.identity(D.cliff.dimS)).scaled(HALF) \
                    - QIMatrix.identity(D.dim).scaled(f2 / 48)
                assert D.square() == lit
            cen = centrality_check(D)
            assert cen.ok and cen.homomorphism_ok, (hbar, j, cen.failures)
        for j in SPINS[1:]:
            D = cubic_dirac(L, rep_su2(j), spinor_rep(L, 1), Fraction(1, 5))
            assert not centrality_check(D).ok, j


# 7 ---------------------------------------------------------------------------------


def test_criterion_07_cohomology():
    with criterion("7", "BFV cohomology of su2 intervals (j ≤ 2 both ends) trivial by exact ranks; abelian control"):
        L = _su2()
        for j1, j2 in product(SPINS, repeat=2):
            H = boundary_space([("z", 1, rep_su2(j1)), ("z'", -1, rep_su2(j2))], L)
            rep = cohomology(H, ranks=True)
            assert rep.verdict == "trivial", (j1, j2, rep.note)
            assert rep.cohomology_dim_by_parity == {"even": 0, "odd": 0}
        A = make_builtin("abelian(1)")
        R = rep_from_matrices(A, [[[0]]], "trivial")
        H = boundary_space([("z", 1, R), ("z'", -1, R)], A)
        rep = cohomology(H)
        assert rep.charge_squared_scalar == (0, 0)
        assert rep.cohomology_dim_by_parity == {"even": H.dim // 2, "odd": H.dim // 2}


# 8 ---------------------------------------------------------------------------------


def test_criterion_08_orbit():
    with criterion("8", "Kirillov pullback ≤ 1e-6, step halving ≥ 3x, tangent orthogonality ≤ 1e-12"):
        spec = OrbitSpec(_su2(), (0, 0, 1))
        r1, r2, ratio = kirillov_convergence(spec, samples=100, seed=42, step=1e-5)
        assert r1.max_err <= 1e-6, r1.max_err
        assert ratio >= 3, ratio
        assert tangent_orthogonality(spec, 100, 42).max_err <= 1e-12


# 9 ---------------------------------------------------------------------------------


def test_criterion_09_holonomy():
    with criterion("9", "Wilson loop trace gauge and cyclic invariant to 1e-10, 50 configurations"):
        R = rep_su2(HALF)
        rng = np.random.default_rng(2024)
        for _ in range(50):
            n = int(rng.integers(3, 12))
            A = random_connection(3, n, rng)
            w = wilson_holonomy(R, A)
            assert abs(w - wilson_holonomy(R, gauge_transform(R, A, rng.normal(size=(n, 3))))) <= 1e-10
            assert abs(w - wilson_holonomy(R, np.roll(A, int(rng.integers(1, n)), axis=0))) <= 1e-10


# 10 --------------------------------------------------------------------------------


def _random_poly(rng: random.Random, gens, parity: int) -> GradedPoly:
    out = GradedPoly()
    while not out:
        for _ in range(rng.randint(2, 5)):
            m = [rng.choice(gens) for _ in range(rng.randint(1, 4))]
            if sum(g.p for g in m) % 2 == parity:
                out = out + GradedPoly.word(m, Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
    return out


def test_criterion_10_engine_axioms():
    with criterion("10", "bracket antisymmetry, Jacobi and Leibniz on 200 triples; normal form idempotent"):
        gens, pairing = canonical_pairs(1)
        rng = random.Random(10)

        def B(u, v):
            return poisson_bracket(u, v, pairing, 1)

        def s(u, v):
            return -1 if (u * v) % 2 else 1

        nontrivial = 0
        for _ in range(200):
            ps = [rng.randint(0, 1) for _ in range(3)]
            F, G, H = (_random_poly(rng, gens, p) for p in ps)
            pf, pg, _ = ps
            assert B(F, G) == B(G, F) * (-s(pf + 1, pg + 1))
            assert B(F, B(G, H)) == B(B(F, G), H) + B(G, B(F, H)) * s(pf + 1, pg + 1)
            assert B(F, G * H) == B(F, G) * H + G * B(F, H) * s(pf + 1, pg)
            nontrivial += bool(B(F, B(G, H)))
        assert nontrivial >= 50

        m = build_cs3(_su2())
        alg = m.alg
        monos = alg._enumerate(3, 1, 0, (("A", 2), ("γ", 1)))
        for _ in range(200):
            p = GradedPoly()
            for _ in range(rng.randint(1, 6)):
                p = p + GradedPoly({rng.choice(monos): Fraction(rng.randint(-4, 4))})
            nf = alg.normal_form(p)
            assert alg.normal_form(nf) == nf
            assert alg.is_exact(p - nf)
