"""Acceptance suite: every criterion at its stated tolerance, one printed
pass/fail line per criterion.  Run with `pytest tests/test_acceptance.py -v -s`."""

import json
import re
import subprocess
import sys
import time

import numpy as np
import pytest

from poissonlie.bialgebra import (build_e, check_coboundary, check_r_uniqueness,
                                  delta_consistency_residual, delta_direct,
                                  r_matrix)
from poissonlie.catalog import get_entry, su11, supq1
from poissonlie.checks import CORRUPTION_KNOBS, applicable_checks, run_check
from poissonlie.config import DEFAULT_TOL
from poissonlie.group import adE, adE_fd, sample_e_element
from poissonlie.linalg import Rng
from poissonlie.manin import (check_manin, deform_bracket,
                              g_structure_in_model_basis,
                              gstar_k0_abelian_residual, killing_eigenvalues,
                              manin_triple, twist_check)
from poissonlie.poisson import (BaseFn, LinearFn, e2_plus_brackets, eta0,
                                eta_alternative, poisson_bracket, verify_cocycle)
from poissonlie.quantize import Coproduct, CrossedAlgebra, CrossedElement, verify_semiclassical
from poissonlie.trig import TrigPoly

MAIN_PAIRS = ("su11", "su21", "su31")
ALL_PAIRS = ("su11", "su21", "su31", "su41")


def report(criterion: int, ok: bool, detail: str):
    line = f"ACCEPTANCE {criterion:>2}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line, file=sys.stderr)
    assert ok, line


def test_criterion_01_cocycle_multiplicativity():
    t0 = time.perf_counter()
    worst = 0.0
    for name in MAIN_PAIRS:
        rep = verify_cocycle(get_entry(name).mp, 1000, Rng(42), tol=1e-9)
        worst = max(worst, rep["max_residual"])
        assert rep["pass"], name
    elapsed = time.perf_counter() - t0
    report(1, worst <= 1e-9 and elapsed < 10.0,
           f"multiplicative cocycle, 1000 samples x 3 pairs: residual "
           f"{worst:.2e} <= 1e-9 (scaled), {elapsed:.1f}s < 10s")


def test_criterion_02_eta_expansion_identity():
    worst = 0.0
    for name in MAIN_PAIRS:
        mp = get_entry(name).mp
        rng = Rng(42)
        for _ in range(200):
            g = sample_e_element(mp, rng)
            worst = max(worst, (eta0(mp, g) - eta_alternative(mp, g)).max_norm())
    report(2, worst <= 1e-9,
           f"eta0 equals its projection expansion on 200 samples/pair: {worst:.2e} <= 1e-9")


def test_criterion_03_adjoint_fd_oracle():
    worst = 0.0
    for name in MAIN_PAIRS:
        mp = get_entry(name).mp
        rng = Rng(42)
        for _ in range(100):
            g = sample_e_element(mp, rng)
            worst = max(worst, float(np.max(np.abs(adE(g) - adE_fd(g)))))
    report(3, worst <= 1e-6,
           f"adjoint of E vs finite-difference conjugation, 100 samples/pair: "
           f"{worst:.2e} <= 1e-6")


def test_criterion_04_planar_bracket_reproduction():
    mp = su11().mp
    worst = 0.0
    lin = poisson_bracket(mp, LinearFn.make([1, 0]), LinearFn.make([0, 1]))
    worst = max(worst, float(np.max(np.abs(np.array(lin.y) - [0, 2]))))
    e_phi = BaseFn(TrigPoly.mode(1))
    br_a = poisson_bracket(mp, LinearFn.make([1, 0]), e_phi).f
    worst = max(worst, br_a.residual(TrigPoly({3: 0.5, -1: -0.5})))
    br_2 = poisson_bracket(mp, LinearFn.make([0, 1]), e_phi).f
    worst = max(worst, br_2.residual(TrigPoly({1: 1j, 3: -0.5j, -1: -0.5j})))
    table = e2_plus_brackets(mp)
    worst = max(worst, float(np.max(np.abs(np.array(table["lin_lin"].y) - [0, 2]))))
    worst = max(worst, table["a_base_theta"].residual(TrigPoly({2: 1.0, 0: -1.0})))
    worst = max(worst, table["two_base_theta"].residual(TrigPoly({1: 2j, 2: -1j, 0: -1j})))
    assert table["omega"] == -2.0 and table["relabel"] == {"V1": ("-", "ya"),
                                                           "V2": ("+", "y2")}
    report(4, worst <= 1e-12,
           f"planar bracket tables incl. the omega=-2 form, exact trig identities: "
           f"{worst:.2e} <= 1e-12")


def test_criterion_05_coboundary_property():
    worst = 0.0
    route_gap = 0.0
    signs = []
    for name in MAIN_PAIRS:
        entry = get_entry(name)
        ea = build_e(entry.mp)
        delta = delta_direct(ea)
        rm = r_matrix(entry, ea)
        route_gap = max(route_gap, rm["difference"])
        signs.append(rm["relative_sign"])
        rep = check_coboundary(ea, delta, rm["route_b"])
        worst = max(worst, rep["max_residual"])
    entry = su11()
    rm = r_matrix(entry, build_e(entry.mp))
    expect = np.zeros((3, 3))
    expect[2, 1], expect[1, 2] = 1.0, -1.0
    planar = float(np.max(np.abs(rm["route_b"].coeffs - expect)))
    ok = worst <= 1e-9 and route_gap <= 1e-9 and planar <= 1e-12
    report(5, ok,
           f"coboundary delta = [r, Delta .]: residual {worst:.2e} <= 1e-9; "
           f"routes agree to {route_gap:.2e} (recorded signs {signs}); "
           f"planar r = J^P2 exactly ({planar:.2e})")


def test_criterion_06_delta_two_routes_all_pairs():
    worst = 0.0
    for name in ALL_PAIRS:
        ea = build_e(get_entry(name).mp)
        worst = max(worst, delta_consistency_residual(ea))
    report(6, worst <= 1e-6,
           f"cobracket by formula vs by differentiating the cocycle, every basis "
           f"vector of every catalog pair: {worst:.2e} <= 1e-6")


def test_criterion_07_su_p1_reproduction():
    from poissonlie.checks import (_adstar_u_residual, _best_sign,
                                   _computed_c_structure, _displayed_delta_table,
                                   _su_p1_displayed_bracket_table)

    worst = 0.0
    erratum_confirmed = True
    for p in (2, 3):
        entry = supq1(p)
        sign_b, resid_b = _best_sign(_computed_c_structure(entry.mp),
                                     _su_p1_displayed_bracket_table(entry))
        worst = max(worst, resid_b)
        # dual-basis display: matrix representatives against solved coordinates
        from poissonlie.lie import IM_TRACE, trace_pairing

        for i, psi_mat in enumerate(entry.psi_mats):
            coords = np.array([trace_pairing(psi_mat, m, IM_TRACE)
                               for m in entry.g.realization])
            worst = max(worst, float(np.max(np.abs(coords - entry.mp.psi_basis[i]))))
        # cobracket table: corrected display (coefficient 2, see conventions
        # report erratum); confirm the only discrepancy vs the raw display is
        # exactly that factor two on one entry
        ea = build_e(entry.mp)
        delta = delta_direct(ea)
        computed = np.array([d.coeffs[:ea.k, :ea.k] for d in delta[:ea.k]])
        sign_d, resid_d = _best_sign(computed, np.array(_displayed_delta_table(entry, True)))
        worst = max(worst, resid_d)
        raw = np.array(_displayed_delta_table(entry, False))
        diff = computed - sign_d * raw
        expected_gap = np.zeros_like(raw)
        expected_gap[1, 0, 1], expected_gap[1, 1, 0] = 1.0, -1.0
        erratum_confirmed &= bool(np.max(np.abs(diff - sign_d * expected_gap)) <= 1e-9)
        worst = max(worst, _adstar_u_residual(entry, Rng(42)))
    report(7, worst <= 1e-9 and erratum_confirmed,
           f"su(p,1) tables for p=2,3 (brackets, duals, cobracket with recorded "
           f"factor-2 erratum on one displayed entry, coadjoint det(U)U action): "
           f"{worst:.2e} <= 1e-9")


def test_criterion_08_r_uniqueness():
    dims = []
    for name in ALL_PAIRS:
        ea = build_e(get_entry(name).mp)
        rep = check_r_uniqueness(ea, svd_tol=1e-8)
        dims.append(rep["kernel_dim"])
    report(8, all(d == 0 for d in dims),
           f"invariant-kernel dimensions (SVD threshold 1e-8) all zero: {dims}")


def test_criterion_09_manin_content():
    worst = 0.0
    ok = True
    for p in (1, 2, 3):
        entry = supq1(p)
        worst = max(worst, gstar_k0_abelian_residual(entry))
        for which in ("g", "gprime"):
            rep = check_manin(manin_triple(entry, which), tol=1e-9)
            ok = ok and rep["pass"]
        plus = deform_bracket(entry, +1.0)
        worst = max(worst, float(np.max(np.abs(
            plus.structure - g_structure_in_model_basis(entry)))))
        minus = deform_bracket(entry, -1.0)
        ok = ok and bool(np.max(killing_eigenvalues(minus)) < 0)
    for p in (1, 2):
        rep = twist_check(supq1(p))
        worst = max(worst, rep["maurer_cartan_residual"], rep["twist_relation_residual"])
    report(9, ok and worst <= 1e-9,
           f"dual-block commutativity, both Manin triples (p=1,2,3), bracket "
           f"deformations to g and the compact form, twist equation (p=1,2): "
           f"{worst:.2e} <= 1e-9")


def test_criterion_10_semiclassical_and_coproduct():
    t0 = time.perf_counter()
    alg = CrossedAlgebra(su11().mp)
    rep = verify_semiclassical(alg, 4, 6, tol=1e-12)
    cop = Coproduct(alg)
    gens = [alg.t_a(), alg.t_2(), alg.monomial(0, 0, 1), alg.monomial(0, 0, -1)]
    coassoc = max(cop.coassociativity_residual(x) for x in gens)
    hom = max(cop.homomorphism_residual(x, y) for x in gens for y in gens)
    rng = np.random.default_rng(42)

    def rand_elem():
        terms = {}
        for _ in range(2):
            key = (int(rng.integers(0, 3)), int(rng.integers(0, 3)),
                   int(rng.integers(-2, 3)))
            terms[key] = {0: complex(rng.standard_normal(), rng.standard_normal())}
        return CrossedElement(alg, terms)

    for _ in range(50):
        x = rand_elem()
        coassoc = max(coassoc, cop.coassociativity_residual(x)
                      / (1.0 + cop.apply(x).max_abs()))
    for _ in range(10):
        x, y = rand_elem(), rand_elem()
        hom = max(hom, cop.homomorphism_residual(x, y)
                  / (1.0 + cop.apply(x.mul(y)).max_abs()))
    elapsed = time.perf_counter() - t0
    ok = (rep["pass"] and rep["max_exact_case_residual"] == 0.0
          and coassoc <= 1e-9 and hom <= 1e-9 and elapsed < 30.0)
    report(10, ok,
           f"leading-order commutator identity to degree 4 / mode 6 over "
           f"{rep['pairs']} pairs (h0 {rep['max_h0_residual']:.1e}, linear cases "
           f"exact), coproduct coassociativity {coassoc:.1e} and multiplicativity "
           f"{hom:.1e} <= 1e-9, {elapsed:.1f}s < 30s")


def test_criterion_11_negative_controls():
    entry = su11()
    failures = {}
    for knob, check in CORRUPTION_KNOBS.items():
        assert check in applicable_checks(entry)
        rep = run_check(check, entry, 20, Rng(1), DEFAULT_TOL, corrupt=knob)
        failures[knob] = (not rep["pass"]) and rep["max_residual"] > 1e-3
    report(11, all(failures.values()),
           "every suite fails (residual > 1e-3) under its documented corruption "
           f"knob: {sum(failures.values())}/{len(failures)} knobs effective")


def test_criterion_12_deterministic_reports(tmp_path):
    cmd = [sys.executable, "-m", "poissonlie.cli", "verify", "su11",
           "--checks", "cocycle,invariance,delta_consistency,coboundary",
           "--samples", "60", "--seed", "2718"]
    payloads = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        out = subprocess.run(cmd + ["--out", str(path)], capture_output=True, text=True)
        assert out.returncode == 0
        raw = path.read_text()
        payloads.append(re.sub(r'^\s*"timestamp": "[^"]*",?\n', "", raw, flags=re.M))
    report(12, payloads[0] == payloads[1],
           "two runs with identical config and seed produce byte-identical "
           "reports apart from the timestamp field")


def test_reports_embed_required_metadata(tmp_path):
    # supporting requirement: version, PRNG, exponential method, tolerances and
    # the conventions report are embedded in every run report
    path = tmp_path / "meta.json"
    out = subprocess.run([sys.executable, "-m", "poissonlie.cli", "verify", "su11",
                          "--checks", "jacobi", "--out", str(path)],
                         capture_output=True, text=True)
    assert out.returncode == 0
    doc = json.loads(path.read_text())
    assert doc["meta"]["version"]
    assert doc["meta"]["prng"] == "numpy PCG64"
    assert "Pade" in doc["meta"]["exp_method"]
    assert set(doc["meta"]["tolerances"]) == {"algebraic", "fd", "fd_step", "svd",
                                              "twist_inner_scale"}
    tables = {c["table"] for c in doc["conventions"]}
    assert "r-matrix" in tables and "quantization conventions" in tables
