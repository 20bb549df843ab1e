"""Command-line driver: every verification as a subcommand with a JSON report.

Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error.
Reports go to stdout and, when an output directory is given (``--out`` or the
``BVBFV_OUT`` environment variable), to ``<dir>/<command>.json``.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

import numpy as np

from .lie import ConfigError, LieAlgebra, check_invariance, check_jacobi, load_algebra, make_builtin, rep_from_matrices, rep_su2

SCHEMA = 1
OUT_ENV = "BVBFV_OUT"


# -- helpers -------------------------------------------------------------------


def _num(x) -> str:
    if isinstance(x, tuple):
        re_, im = x
        return str(re_) if im == 0 else f"{re_}+{im}i"
    return str(x)


def _check(name: str, anchor: str, ok: bool, residual: Any = "0", see: str | None = None) -> dict:
    out = {"name": name, "anchor": anchor, "status": "pass" if ok else "fail", "residual": _num(residual)}
    if see and not ok:
        out["see"] = see
    return out


def _algebra(spec: str) -> LieAlgebra:
    if os.path.exists(spec):
        return load_algebra(spec)
    return make_builtin(spec)


def _vector(text: str, n: int) -> tuple[Fraction, ...]:
    try:
        vals = tuple(Fraction(t.strip()) for t in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse vector {text!r}") from exc
    if len(vals) != n:
        raise ConfigError(f"vector {text!r} has {len(vals)} components, expected {n}")
    return vals


def _default_t0(L: LieAlgebra) -> str:
    return ",".join(["0"] * (L.dim - 1) + ["1"])


def _rep(L: LieAlgebra, spin: str | None):
    if L.name in ("su2", "so3"):
        return rep_su2(Fraction(spin or "1/2"), algebra=L)
    if L.is_abelian():
        # trivial one-dimensional representation: X̂ = 0
        return rep_from_matrices(L, [[[0]] for _ in range(L.dim)], "trivial")
    raise ConfigError(f"no built-in representation for {L.name}; use su2, so3 or an abelian algebra")


# -- commands ------------------------------------------------------------------


def cmd_verify_cme(args) -> dict:
    from .variational import attach_wilson, build_cs1, build_cs3, check_cme, check_hamiltonian

    L = _algebra(args.algebra)
    model = build_cs3(L) if args.model == "cs3" else build_cs1(L)
    if args.wilson or args.model == "cs1":
        curve = "Γ1" if args.model == "cs3" else "Γ"
        attach_wilson(model, _vector(args.t0 or _default_t0(L), L.dim), curve)
    rep = check_cme(model)
    ham = check_hamiltonian(model)
    jac, inv = check_jacobi(L), check_invariance(L)
    anchor = "master equation of the 3D action" if args.model == "cs3" else "master equation of the 1D action with a Wilson line"
    checks = [
        _check("jacobi", "Jacobi identity of the structure constants", jac.ok, jac.max_violation),
        _check("invariance", "invariant pairing, (x,[y,z]) = ([x,y],z)", inv.ok, inv.max_violation),
        _check("hamiltonian", "iota_Q Omega = delta S - d alpha", ham.ok, sum(len(p) for p in ham.residue.values())),
        _check("cme", anchor, rep.ok, rep.term_count()),
    ]
    return {
        "model": model.name,
        "cmeBulkResidueTermCount": rep.term_count(),
        "residue": {s: str(p) for s, p in sorted(rep.bulk_residue.items())},
        "rawResidue": {s: str(p) for s, p in sorted(rep.raw_residue.items())},
        "checks": checks,
    }


def cmd_derive_bfv(args) -> dict:
    from .variational import attach_wilson, boundary_report, build_cs1, build_cs3

    L = _algebra(args.algebra)
    t0 = _vector(args.t0 or _default_t0(L), L.dim)
    if args.model == "cs3":
        model = build_cs3(L, boundary=True)
        for k in range(args.lines):
            attach_wilson(model, t0, f"Γ{k + 1}")
    else:
        model = attach_wilson(build_cs1(L, boundary=True), t0, "Γ")
    rep = boundary_report(model)
    checks = [_check(c["name"], "boundary BFV data", c["ok"]) for c in rep.pop("checks")]
    rep.pop("schema")
    rep.pop("ok")
    rep["checks"] = checks
    return rep


def cmd_dirac(args) -> dict:
    from .weil_quant import centrality_check, cubic_dirac, dirac_square_check, expected_square, parity_check, spinor_rep

    L = _algebra(args.algebra)
    R = _rep(L, args.spin)
    cl = spinor_rep(L, Fraction(args.hbar), graded=args.graded)
    D = cubic_dirac(L, R, cl, Fraction(args.cubic))
    sq = dirac_square_check(D)
    cen = centrality_check(D)
    checks = [
        _check("anticommutation", "Clifford relations", cl.check()),
        _check("square", "Dirac operator squares to a scalar", sq.identity_ok, f"{(D.square() - expected_square(D)).max_abs():.3e}", "weil_quant.dirac_square_check"),
        _check("centrality", "central element of U(g)⊗Cl(g)", cen.ok, cen.max_err, "weil_quant.centrality_check"),
        _check("diagonal action", "diagonal embedding is a homomorphism", cen.homomorphism_ok),
    ]
    par = parity_check(D)
    if par is not None:
        checks.append(_check("odd", "Dirac operator is odd", par))
    out: dict[str, Any] = {
        "algebra": L.name,
        "rep": R.label,
        "hbar": str(cl.hbar),
        "dimS": cl.dimS,
        "c": _num(sq.c) if sq.scalar else None,
        "expectedC": _num(sq.expected_c) if sq.expected_c is not None else None,
        "identityOk": sq.identity_ok,
        "centralityOk": cen.ok,
        "centralityFailures": cen.failures,
        "checks": checks,
    }
    if args.mode == "float":
        M = D.matrix_float()
        out["floatSquareResidual"] = f"{np.abs(M @ M - D.square().to_complex()).max():.3e}"
    return out


_POINT = re.compile(r"^\s*([+-])([^:]+):(.+)$")


def _parse_point(text: str, i: int):
    m = _POINT.match(text)
    if not m:
        raise ConfigError(f"point {text!r} must look like +su2:0.5")
    sign = 1 if m.group(1) == "+" else -1
    L = _algebra(m.group(2))
    return L, (f"p{i}", sign, _rep(L, m.group(3)))


def cmd_cohomology(args) -> dict:
    from .bfv_states import boundary_space, cohomology

    parsed = [_parse_point(p, i) for i, p in enumerate(args.points)]
    algs = {L.name for L, _ in parsed}
    if len(algs) != 1:
        raise ConfigError("all points must use the same algebra")
    L = parsed[0][0]
    H = boundary_space([p for _, p in parsed], L, Fraction(args.hbar))
    rep = cohomology(H, mode=args.mode)
    ok = rep.residual_zero
    checks = [_check("charge squared is scalar", "charge squares to a central element", ok)]
    return {
        "points": [f"{'+' if p.sign > 0 else '-'}{p.rep.label}" for p in H.points],
        "dim": H.dim,
        "chargeSquaredScalar": _num(rep.charge_squared_scalar) if rep.charge_squared_scalar is not None else None,
        "kernelDimByParity": rep.kernel_dim_by_parity,
        "imageDimByParity": rep.image_dim_by_parity,
        "cohomologyDimByParity": rep.cohomology_dim_by_parity,
        "verdict": rep.verdict,
        "note": rep.note,
        "checks": checks,
    }


def cmd_orbit_check(args) -> dict:
    from .orbit_numeric import OrbitSpec, get_kernels, kirillov_convergence, tangent_orthogonality

    L = _algebra(args.algebra)
    spec = OrbitSpec(L, _vector(args.t0 or _default_t0(L), L.dim))
    r1, r2, ratio = kirillov_convergence(spec, args.samples, args.seed, args.step)
    orth = tangent_orthogonality(spec, args.samples, args.seed)
    nontrivial = r1.max_err > 1e-9  # below this the scheme sits at roundoff (e.g. abelian)
    checks = [
        _check("kirillov", "Kirillov form is the derivative of its potential", r1.max_err <= 1e-6, f"{r1.max_err:.3e}"),
        _check("convergence", "second-order finite differences", ratio >= 3 or not nontrivial, f"{ratio:.3f}"),
        _check("antisymmetry", "Kirillov form is antisymmetric", r1.max_antisymmetry <= 1e-15, f"{r1.max_antisymmetry:.3e}"),
        _check("tangent orthogonality", "tangent vectors are orthogonal to H", orth.max_err <= 1e-12, f"{orth.max_err:.3e}"),
    ]
    return {
        "algebra": L.name,
        "samples": args.samples,
        "seed": args.seed,
        "step": args.step,
        "backend": get_kernels().name,
        "maxErr": f"{r1.max_err:.6e}",
        "maxErrHalfStep": f"{r2.max_err:.6e}",
        "checks": checks,
    }


def cmd_wilson(args) -> dict:
    from .orbit_numeric import gauge_transform, wilson_holonomy

    L = _algebra(args.algebra)
    R = _rep(L, args.spin)
    rng = np.random.default_rng(args.seed)
    if args.connection:
        text = Path(args.connection).read_text() if os.path.exists(args.connection) else args.connection
        try:
            A = np.asarray(json.loads(text), dtype=float)
        except (json.JSONDecodeError, ValueError) as exc:
            raise ConfigError(f"connection must be a JSON list of vectors: {exc}") from exc
    else:
        A = rng.normal(size=(args.segments, L.dim))
    if args.open:
        U = wilson_holonomy(R, A, closed=False)
        return {"algebra": L.name, "rep": R.label, "segments": len(A), "matrix": [[f"{z.real:.12g}{z.imag:+.12g}j" for z in row] for row in U], "checks": []}
    w = wilson_holonomy(R, A)
    wg = wilson_holonomy(R, gauge_transform(R, A, rng.normal(size=(len(A), L.dim))))
    wc = wilson_holonomy(R, np.roll(A, 1, axis=0))
    checks = [
        _check("gauge invariance", "trace of the holonomy is gauge invariant", abs(w - wg) <= 1e-10, f"{abs(w - wg):.3e}"),
        _check("cyclic invariance", "trace does not depend on the base point", abs(w - wc) <= 1e-10, f"{abs(w - wc):.3e}"),
    ]
    return {"algebra": L.name, "rep": R.label, "segments": len(A), "trace": f"{w.real:.12g}{w.imag:+.12g}j", "checks": checks}


def cmd_suite(args) -> dict:
    ns = argparse.Namespace
    runs: list[tuple[str, Callable, Any]] = []
    if args.name in ("all", "symbolic"):
        for alg in ("su2", "so3", "abelian(1)", "abelian(2)", "abelian(3)", "su2+abelian(1)"):
            runs.append((f"verify-cme cs3 {alg}", cmd_verify_cme, ns(model="cs3", algebra=alg, wilson=False, t0=None)))
        runs.append(("verify-cme cs3+W su2", cmd_verify_cme, ns(model="cs3", algebra="su2", wilson=True, t0=None)))
        runs.append(("verify-cme cs1+W su2", cmd_verify_cme, ns(model="cs1", algebra="su2", wilson=True, t0=None)))
        runs.append(("derive-bfv cs3 su2", cmd_derive_bfv, ns(model="cs3", algebra="su2", lines=2, t0=None)))
        runs.append(("derive-bfv cs1 su2", cmd_derive_bfv, ns(model="cs1", algebra="su2", lines=1, t0=None)))
    if args.name in ("all", "quantum"):
        for h in ("1", "2"):
            for j in ("0", "1/2", "1", "3/2", "2"):
                runs.append((f"dirac su2 j={j} hbar={h}", cmd_dirac, ns(algebra="su2", spin=j, hbar=h, mode="exact", cubic=args.cubic, graded=False)))
        for j in ("1/2", "1", "3/2", "2"):
            runs.append((f"cohomology su2 {j},{j}", cmd_cohomology, ns(points=[f"+su2:{j}", f"-su2:{j}"], hbar="1", mode="exact")))
    if args.name in ("all", "numeric"):
        runs.append(("orbit-check su2", cmd_orbit_check, ns(algebra="su2", t0=None, samples=100, seed=args.seed, step=1e-5)))
        runs.append(("wilson su2", cmd_wilson, ns(algebra="su2", spin="1/2", connection=None, segments=8, seed=args.seed, open=False)))
    results = []
    checks = []
    for name, fn, a in runs:
        rep = fn(a)
        ok = all(c["status"] == "pass" for c in rep["checks"])
        results.append({"run": name, "ok": ok})
        for c in rep["checks"]:
            checks.append({**c, "name": f"{name}: {c['name']}"})
    return {"suite": args.name, "runs": results, "checks": checks}


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bvbfv", description="Verification engine for Chern-Simons theory with Wilson lines.")
    ap.add_argument("--out", help=f"report directory (default: ${OUT_ENV})")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-cme", help="classical master equation of a BV model")
    p.add_argument("--model", choices=("cs3", "cs1"), default="cs3")
    p.add_argument("--algebra", default="su2", help="builtin name or JSON file")
    p.add_argument("--wilson", action="store_true", help="attach a Wilson line (always on for cs1)")
    p.add_argument("--t0", help="orbit representative, comma separated")
    p.set_defaults(fn=cmd_verify_cme)

    p = sub.add_parser("derive-bfv", help="boundary BFV structure and action")
    p.add_argument("--model", choices=("cs3", "cs1"), default="cs3")
    p.add_argument("--algebra", default="su2")
    p.add_argument("--lines", type=int, default=2)
    p.add_argument("--t0")
    p.set_defaults(fn=cmd_derive_bfv)

    p = sub.add_parser("dirac", help="cubic Dirac operator identities")
    p.add_argument("--algebra", default="su2")
    p.add_argument("--spin", default="1/2")
    p.add_argument("--hbar", default="1")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--cubic", default="1/6", help="coefficient of the cubic term")
    p.add_argument("--graded", action="store_true", help="use the graded spinor module")
    p.set_defaults(fn=cmd_dirac)

    p = sub.add_parser("cohomology", help="BFV cohomology of boundary points")
    p.add_argument("--points", nargs="+", required=True, help="signed points such as +su2:0.5 -su2:0.5")
    p.add_argument("--hbar", default="1")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.set_defaults(fn=cmd_cohomology)

    p = sub.add_parser("orbit-check", help="Kirillov form and tangent orthogonality")
    p.add_argument("--algebra", default="su2")
    p.add_argument("--t0")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--step", type=float, default=1e-5)
    p.set_defaults(fn=cmd_orbit_check)

    p = sub.add_parser("wilson", help="Wilson loop trace and its invariances")
    p.add_argument("--algebra", default="su2")
    p.add_argument("--spin", default="1/2")
    p.add_argument("--connection", help="JSON list of vectors or a file containing one")
    p.add_argument("--segments", type=int, default=8)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--open", action="store_true", help="return the holonomy matrix of an open line")
    p.set_defaults(fn=cmd_wilson)

    p = sub.add_parser("suite", help="run a group of checks")
    p.add_argument("name", choices=("all", "symbolic", "quantum", "numeric"))
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--cubic", default="1/6", help="cubic coefficient for the quantum checks")
    p.set_defaults(fn=cmd_suite)
    return ap


_SUITE_ALIASES = {"paper-all": "all"}  # contracted name of the full suite


def _protect_points(argv: list[str]) -> list[str]:
    # "-su2:0.5" would be taken for an option; a leading space hides the dash
    out, inside = [], False
    argv = [_SUITE_ALIASES.get(tok, tok) for tok in argv]
    for tok in argv:
        if tok == "--points":
            inside = True
        elif inside and _POINT.match(tok):
            tok = " " + tok
        elif tok.startswith("--"):
            inside = False
        out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = ap.parse_args(_protect_points(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    report: dict[str, Any] = {"schema": SCHEMA, "command": args.command}
    try:
        report.update(args.fn(args))
        code = 0 if all(c["status"] == "pass" for c in report["checks"]) else 1
    except (ConfigError, FileNotFoundError, ValueError) as exc:
        report.update({"error": str(exc), "checks": []})
        code = 2
    report["ok"] = code == 0
    text = json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False)
    print(text)
    out_dir = args.out or os.environ.get(OUT_ENV)
    if out_dir:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
        (Path(out_dir) / f"{args.command}.json").write_text(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
