from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bvbfv.grassmann import GradedPoly
from bvbfv.lie import ConfigError, load_algebra, make_builtin
from bvbfv.variational import (attach_wilson, boundary_bfv, boundary_report, build_cs1, build_cs3, check_cme,
                               check_hamiltonian, cme_report, compare_with_reference, reference_boundary_forms,
                               variation)

GOLDEN = Path(__file__).parent / "golden"
T0 = (0, 0, 1)


def cs3_two_lines(L=None):
    m = build_cs3(L or make_builtin("su2"), boundary=True)
    attach_wilson(m, T0, "Γ1")
    attach_wilson(m, (1, 0, 0), "Γ2")
    return m


def cs1_line(L=None):
    return attach_wilson(build_cs1(L or make_builtin("su2"), boundary=True), T0, "Γ")


def test_cs3_cme_and_mutation(tmp_path):
    assert check_cme(build_cs3(make_builtin("su2"))).ok
    f = [[0, 1, 2, 1], [1, 2, 0, 1], [2, 0, 1, 1], [0, 1, 0, 1]]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"name": "bad", "dim": 3, "f": f}))
    rep = check_cme(build_cs3(load_algebra(p)))
    assert not rep.ok and rep.term_count() > 0


def test_cs3_with_lines_cme():
    m = build_cs3(make_builtin("su2"))
    attach_wilson(m, T0, "Γ1")
    assert check_cme(m).ok


def test_cs1_residue_is_orthogonality_term():
    m = cs1_line()
    rep = check_cme(m)
    alg = m.alg
    assert rep.raw_residue["Γ"] == alg.pair(alg.field("H"), alg.field("g+"))
    assert rep.ok


@pytest.mark.parametrize("build", [lambda: build_cs3(make_builtin("su2")), cs3_two_lines, cs1_line])
def test_hamiltonian_and_variation(build):
    m = build()
    assert check_hamiltonian(m).ok
    assert all(v.verified for v in variation(m).values())


def test_attach_wilson_errors():
    m = build_cs3(make_builtin("su2"))
    with pytest.raises(ConfigError):
        attach_wilson(m, (0, 1), "Γ1")
    attach_wilson(m, T0, "Γ1")
    with pytest.raises(ConfigError):
        attach_wilson(m, T0, "Γ1")
    with pytest.raises(ConfigError):
        attach_wilson(build_cs1(make_builtin("su2")), T0, "Γ7")
    with pytest.raises(ConfigError):
        boundary_bfv(build_cs3(make_builtin("su2")))


def test_cs3_boundary_structure():
    b = boundary_bfv(cs3_two_lines())
    assert b.ok, b.checks
    assert [(p.point, p.sign) for p in b.action.point_terms] == [("z1", 1), ("z'1", -1), ("z2", 1), ("z'2", -1)]
    assert all(not r for r in b.residue.values())
    ref = reference_boundary_forms(b.model)
    alg = b.model.alg
    # point terms agree with the reference: -(H, γ) per line
    for pt in b.action.point_terms:
        assert pt.term == ref[f"action_point {pt.orbit}"]
    # surface action: derived -(F, γ) + (A+, ½[γ, γ]) modulo exact terms
    A, Ap, c = alg.field("A"), alg.field("A+"), alg.field("γ")
    F = alg.add(alg.d_vec(A), alg.scale(alg.br(A, A), Fraction(1, 2)))
    derived = -alg.pair(F, c) + alg.pair(Ap, alg.scale(alg.br(c, c), Fraction(1, 2)))
    assert alg.is_exact(b.action.surface_integrand - derived)


def test_cs1_boundary_structure():
    b = boundary_bfv(cs1_line())
    assert b.ok, b.checks
    assert b.point_cme == {"z": Fraction(-1), "z'": Fraction(1)}
    assert sum(b.point_cme.values()) == 0


def test_reference_comparison_records_sign_conflicts():
    # see the decisions ledger: the displayed boundary data are not mutually consistent
    assert compare_with_reference(boundary_bfv(cs3_two_lines())) == {
        "omega_surface": False, "action_surface": False,
        "omega_point Γ1": False, "action_point Γ1": True,
        "omega_point Γ2": False, "action_point Γ2": True,
    }
    assert compare_with_reference(boundary_bfv(cs1_line())) == {"omega_point Γ": False, "action_point Γ": False}


def _golden(name: str, data: dict):
    path = GOLDEN / name
    text = json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if os.environ.get("BVBFV_UPDATE_GOLDEN"):
        path.write_text(text)
    assert text == path.read_text()


def test_golden_cs3_boundary():
    _golden("cs3_su2_two_lines_boundary.json", boundary_report(cs3_two_lines()))


def test_golden_cs1_boundary():
    _golden("cs1_su2_boundary.json", boundary_report(cs1_line()))


def test_cme_report_shape():
    r = cme_report(build_cs3(make_builtin("so3")))
    assert r["schema"] == 1 and r["ok"] and r["cmeBulkResidueTermCount"] == 0


# -- normal form properties -------------------------------------------------

_NF_MODEL = build_cs3(make_builtin("su2"))
_SECTORS = [(3, 1, (("A", 2), ("γ", 1))), (3, 1, (("A", 1), ("A+", 1), ("γ", 2))), (3, 0, (("A", 3),)),
            (2, 1, (("A", 1), ("γ", 1)))]
_MONOS = {s: _NF_MODEL.alg._enumerate(s[0], s[1], 0, s[2]) for s in _SECTORS}


@st.composite
def local_forms(draw):
    sector = draw(st.sampled_from(_SECTORS))
    monos = _MONOS[sector]
    picks = draw(st.lists(st.tuples(st.integers(0, len(monos) - 1), st.integers(-4, 4)), min_size=1, max_size=6))
    out = GradedPoly()
    for i, c in picks:
        out = out + GradedPoly({monos[i]: Fraction(c)})
    return sector, out


@settings(max_examples=200, deadline=None, derandomize=True)
@given(local_forms())
def test_normal_form_idempotent_and_exact_difference(data):
    (form, ghost, weight), p = data
    alg = _NF_MODEL.alg
    nf = alg.normal_form(p)
    assert alg.normal_form(nf) == nf
    assert alg.is_exact(p - nf)
    if form == 2:
        assert alg.is_exact(alg.d(p))
