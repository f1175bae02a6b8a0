"""Named verification suites with per-check corruption knobs, plus the
machine-generated conventions report comparing this package's tables against
the published displays.

Every check returns {check, samples, max_residual, tolerance, pass, details}.
Corruption knobs deliberately break exactly one ingredient so the suites are
demonstrably non-vacuous; each knob is documented next to its check."""

from __future__ import annotations

import numpy as np

from . import bialgebra as bi
from . import manin as mn
from . import poisson as po
from . import quantize as qu
from .catalog import CatalogEntry, rho_intertwiner_residual
from .config import Tolerances
from .lie import jacobi_residual
from .linalg import Rng
from .matched import MatchedPair
from .group import exp_b, sample_group_element

CHECK_NAMES = (
    "jacobi", "invariance", "cocycle", "delta_consistency", "bialgebra_axioms",
    "coboundary", "uniqueness", "manin", "deform", "twist", "semiclassical",
    "dual_families",
)

#: knob -> check it corrupts
CORRUPTION_KNOBS = {
    "jacobi_perturb_constant": "jacobi",
    "invariance_flip_action": "invariance",
    "eta_b_sign": "cocycle",
    "delta_b0_sign": "delta_consistency",
    "delta_sign_one_basis": "bialgebra_axioms",
    "r_scale_2": "coboundary",
    "uniqueness_drop_b0_rows": "uniqueness",
    "gstar_complex_diagonal": "manin",
    "deform_cocycle_scale_2": "deform",
    "twist_scale_2": "twist",
    "drop_reorder_correction": "semiclassical",
    "rho_sign": "dual_families",
}

#: checks that need the full catalog decoration (Cartan data, gstar, z)
ENTRY_ONLY_CHECKS = ("coboundary", "uniqueness", "manin", "deform", "twist",
                     "semiclassical", "dual_families")
#: checks that exponentiate, so they need a matrix realization
REALIZATION_CHECKS = ("invariance", "cocycle", "delta_consistency")


def applicable_checks(target) -> list[str]:
    if isinstance(target, CatalogEntry):
        names = list(CHECK_NAMES)
        if target.p != 1:
            names.remove("semiclassical")
            names.remove("dual_families")
        return names
    names = [n for n in CHECK_NAMES if n not in ENTRY_ONLY_CHECKS]
    if target.g.realization is None:
        names = [n for n in names if n not in REALIZATION_CHECKS]
    return names


def _mp_of(target) -> MatchedPair:
    return target.mp if isinstance(target, CatalogEntry) else target


def run_check(name: str, target, samples: int, rng: Rng, tol: Tolerances,
              corrupt: str | None = None) -> dict:
    if name not in CHECK_NAMES:
        raise ValueError(f"unknown check {name!r}")
    corrupted = corrupt is not None and CORRUPTION_KNOBS.get(corrupt) == name
    fn = globals()[f"_check_{name}"]
    out = fn(target, samples, rng, tol, corrupted)
    out["check"] = name
    out.setdefault("samples", samples)
    out["corrupted"] = corrupted
    return out


def _check_jacobi(target, samples, rng, tol, corrupted) -> dict:
    mp = _mp_of(target)
    structure = mp.g.structure
    if corrupted:
        structure = structure.copy()
        structure[0, 1, :] += 1e-3
        structure[1, 0, :] -= 1e-3
    resid = jacobi_residual(structure)
    return {"max_residual": resid, "tolerance": tol.algebraic,
            "pass": bool(resid <= tol.algebraic), "samples": 0,
            "details": {"dim": mp.g.dim}}


def _check_invariance(target, samples, rng, tol, corrupted) -> dict:
    mp = _mp_of(target)
    worst = 0.0
    hom_worst = 0.0
    for _ in range(samples):
        a = sample_group_element(mp, rng)
        b = sample_group_element(mp, rng)
        if corrupted:
            k_mat = mp.coadjoint_on_b0(a)
            c_mat = mp.action_on_c(a.inverse())
            worst = max(worst, float(np.max(np.abs(k_mat @ c_mat.T - np.eye(mp.dim_c)))))
        else:
            worst = max(worst, mp.invariance_residual(a))
        hom = mp.action_on_c(a @ b) - mp.action_on_c(a) @ mp.action_on_c(b)
        hom_worst = max(hom_worst, float(np.max(np.abs(hom))))
    resid = max(worst, hom_worst)
    return {"max_residual": resid, "tolerance": tol.algebraic,
            "pass": bool(resid <= tol.algebraic),
            "details": {"invariance": worst, "action_homomorphism": hom_worst}}


def _check_cocycle(target, samples, rng, tol, corrupted) -> dict:
    mp = _mp_of(target)
    rep = po.verify_cocycle(mp, samples, rng, tol=tol.algebraic,
                            eta_b_sign=-1.0 if corrupted else 1.0)
    rep["details"] = {"eta_b_sign": -1.0 if corrupted else 1.0}
    return rep


def _check_delta_consistency(target, samples, rng, tol, corrupted) -> dict:
    mp = _mp_of(target)
    ea = bi.build_e(mp)
    resid = bi.delta_consistency_residual(ea, b0_sign=-1.0 if corrupted else 1.0)
    return {"max_residual": resid, "tolerance": tol.fd,
            "pass": bool(resid <= tol.fd), "samples": 0,
            "details": {"basis_vectors": ea.e.dim}}


def _check_bialgebra_axioms(target, samples, rng, tol, corrupted) -> dict:
    mp = _mp_of(target)
    ea = bi.build_e(mp)
    delta = bi.delta_direct(ea)
    if corrupted:
        delta = list(delta)
        delta[ea.k] = (-1.0) * delta[ea.k]
    rep = bi.check_cobracket_axioms(ea, delta)
    resid = max(rep["co_jacobi_residual"], rep["cocycle_residual"])
    return {"max_residual": resid, "tolerance": tol.algebraic,
            "pass": bool(resid <= tol.algebraic), "samples": 0, "details": rep}


def _require_entry(target, name):
    if not isinstance(target, CatalogEntry):
        raise ValueError(f"check {name!r} needs a catalog pair with Iwasawa/Cartan data")
    return target


def _check_coboundary(target, samples, rng, tol, corrupted) -> dict:
    entry = _require_entry(target, "coboundary")
    ea = bi.build_e(entry.mp)
    delta = bi.delta_direct(ea)
    rm = bi.r_matrix(entry, ea)
    rep = bi.check_coboundary(ea, delta, rm["route_b"],
                              scale=2.0 if corrupted else 1.0)
    return {"max_residual": rep["max_residual"], "tolerance": tol.algebraic,
            "pass": bool(rep["max_residual"] <= tol.algebraic), "samples": 0,
            "details": {"route_difference": rm["difference"],
                        "route_sign": rm["relative_sign"],
                        "k_wedge_k0_block_residual": rm["k_wedge_k0_block_residual"]}}


def _check_uniqueness(target, samples, rng, tol, corrupted) -> dict:
    entry = _require_entry(target, "uniqueness")
    ea = bi.build_e(entry.mp)
    rep = bi.check_r_uniqueness(ea, svd_tol=tol.svd, drop_b0_rows=corrupted)
    return {"max_residual": float(rep["kernel_dim"]), "tolerance": 0.0,
            "pass": rep["pass"], "samples": 0, "details": rep}


def _check_manin(target, samples, rng, tol, corrupted) -> dict:
    entry = _require_entry(target, "manin")
    details = {}
    ok = True
    worst = 0.0
    for which in ("g", "gprime"):
        mt = mn.manin_triple(entry, which, corrupt_gstar=corrupted)
        rep = mn.check_manin(mt, tol=tol.algebraic)
        details[which] = rep
        ok = ok and rep["pass"]
        worst = max(worst, rep["isotropy_half_a"], rep["isotropy_half_b"],
                    rep["closure_half_a"], rep["closure_half_b"], rep["form_invariance"])
        if not rep["complementarity_ok"]:
            worst = max(worst, 1.0)
    k0_resid = mn.gstar_k0_abelian_residual(entry)
    ea = bi.build_e(entry.mp)
    transport, sign = mn.gprime_transport_residual(entry, ea.e.structure)
    details["k0_abelian"] = k0_resid
    details["gprime_transport"] = {"residual": transport, "sign": sign}
    details["gprime_block"] = mn.gprime_block_residual(entry)
    worst = max(worst, k0_resid, transport, details["gprime_block"])
    return {"max_residual": worst, "tolerance": tol.algebraic,
            "pass": bool(ok and worst <= tol.algebraic), "samples": 0,
            "details": details}


def _check_deform(target, samples, rng, tol, corrupted) -> dict:
    entry = _require_entry(target, "deform")
    scale = 2.0 if corrupted else 1.0
    plus = mn.deform_bracket(entry, +1.0, cocycle_scale=scale)
    g_model = mn.g_structure_in_model_basis(entry)
    resid_plus = float(np.max(np.abs(plus.structure - g_model)))
    minus = mn.deform_bracket(entry, -1.0, cocycle_scale=scale)
    eigs = mn.killing_eigenvalues(minus)
    neg_def = bool(np.max(eigs) < -tol.algebraic)
    zero = mn.deform_bracket(entry, 0.0)
    ea = bi.build_e(entry.mp)
    resid_zero = float(np.max(np.abs(zero.structure - ea.e.structure)))
    worst = max(resid_plus, resid_zero, 0.0 if neg_def else 1.0)
    return {"max_residual": worst, "tolerance": tol.algebraic,
            "pass": bool(worst <= tol.algebraic), "samples": 0,
            "details": {"plus_reproduces_g": resid_plus,
                        "zero_reproduces_e": resid_zero,
                        "minus_killing_max_eig": float(np.max(eigs)),
                        "minus_negative_definite": neg_def}}


def _check_twist(target, samples, rng, tol, corrupted) -> dict:
    entry = _require_entry(target, "twist")
    rep = mn.twist_check(entry, scale=tol.twist_inner_scale,
                         s_scale=2.0 if corrupted else 1.0)
    dg = mn.cobracket_on_gstar(entry, list(entry.g.realization))
    dgp = mn.cobracket_on_gstar(entry, mn.gprime_half(entry))
    dgc = mn.cobracket_on_gstar(entry, mn.gc_compact_half(entry))
    cprime_g = mn.cprime_residual(entry, dg, dgp, +1.0)
    cprime_gc = mn.cprime_residual(entry, dgc, dgp, -1.0)
    co_j = max(bi.co_jacobi_residual(d) for d in (dg, dgp, dgc))
    worst = max(rep["maurer_cartan_residual"], rep["twist_relation_residual"],
                cprime_g, cprime_gc, co_j)
    return {"max_residual": worst, "tolerance": tol.algebraic,
            "pass": bool(worst <= tol.algebraic), "samples": 0,
            "details": {"maurer_cartan": rep["maurer_cartan_residual"],
                        "twist_relation": rep["twist_relation_residual"],
                        "cprime_g_minus_gprime": cprime_g,
                        "cprime_gc_minus_gprime": cprime_gc,
                        "co_jacobi_all_three": co_j,
                        "inner_scale": tol.twist_inner_scale}}


def _check_semiclassical(target, samples, rng, tol, corrupted) -> dict:
    entry = _require_entry(target, "semiclassical")
    alg = qu.CrossedAlgebra(entry.mp,
                            reorder_correction=0.0 if corrupted else 1.0)
    maxdeg, maxmode = (2, 2) if corrupted else (4, 6)
    rep = qu.verify_semiclassical(alg, maxdeg, maxmode, tol=1e-12)
    resid = max(rep["max_h0_residual"], rep["max_exact_case_residual"])
    cop = qu.Coproduct(alg)
    gens = [alg.t_a(), alg.t_2(), alg.monomial(0, 0, 1), alg.monomial(0, 0, -1)]
    coassoc = max(cop.coassociativity_residual(x) for x in gens)
    hom = max(cop.homomorphism_residual(x, y) for x in gens for y in gens)
    resid = max(resid, coassoc, hom)
    return {"max_residual": resid, "tolerance": tol.algebraic,
            "pass": bool(resid <= tol.algebraic),
            "samples": rep["pairs"],
            "details": {"h0": rep["max_h0_residual"],
                        "exact_cases": rep["max_exact_case_residual"],
                        "maxdeg": maxdeg, "maxmode": maxmode,
                        "coproduct_coassociativity": coassoc,
                        "coproduct_homomorphism": hom}}


def _check_dual_families(target, samples, rng, tol, corrupted) -> dict:
    entry = _require_entry(target, "dual_families")
    resid_rho = rho_intertwiner_residual(s=1.0, rho_sign=-1.0 if corrupted else 1.0)
    ea = bi.build_e(entry.mp)
    delta = bi.delta_direct(ea)
    dual = bi.dual_bracket_structure(delta)
    # e-basis is (psi_a = P1, psi_2 = P2, J); reorder duals to (J*, P1*, P2*)
    perm = [2, 0, 1]
    reordered = dual[np.ix_(perm, perm, perm)]
    from .catalog import e2_dual_bracket_tables

    _, bracket3, _ = e2_dual_bracket_tables()
    scale = 2.0
    resid_scale = float(np.max(np.abs(reordered - scale * bracket3)))
    worst = max(resid_rho, resid_scale)
    return {"max_residual": worst, "tolerance": tol.algebraic,
            "pass": bool(worst <= tol.algebraic), "samples": 0,
            "details": {"rho_intertwiner": resid_rho,
                        "dual_vs_family3_scale": scale,
                        "dual_vs_family3_residual": resid_scale}}


# -- conventions report ---------------------------------------------------------


def _best_sign(computed: np.ndarray, displayed: np.ndarray) -> tuple[float, float]:
    plus = float(np.max(np.abs(computed - displayed)))
    minus = float(np.max(np.abs(computed + displayed)))
    return (1.0, plus) if plus <= minus else (-1.0, minus)


def _su_p1_displayed_bracket_table(entry) -> np.ndarray:
    """The published solvable-part bracket table as c-structure constants."""
    k = entry.mp.dim_c
    p = entry.p
    out = np.zeros((k, k, k))

    def setb(i, j, vec):
        out[i, j] = vec
        out[j, i] = -np.asarray(vec)

    e = np.eye(k)
    setb(0, 1, 2.0 * e[1])                       # [ya, y2] = 2 y2
    for kk in range(p - 1):
        r_idx, i_idx = 2 + 2 * kk, 3 + 2 * kk
        setb(0, r_idx, e[r_idx])                 # [ya, yR_k] = yR_k
        setb(0, i_idx, e[i_idx])                 # [ya, yI_k] = yI_k
        setb(r_idx, i_idx, 2.0 * e[1])           # [yR_k, yI_k] = 2 y2
    return out


def _computed_c_structure(mp: MatchedPair) -> np.ndarray:
    k = mp.dim_c
    out = np.zeros((k, k, k))
    for i in range(k):
        for j in range(k):
            out[i, j] = mp.c_coords(mp.g.bracket_coords(mp.y_basis[i], mp.y_basis[j]))
    return out


def _displayed_delta_table(entry, corrected: bool) -> list[np.ndarray]:
    """Published delta table on k0 as bivector matrices over the psi basis.

    The display's psi_a ^ psi_2 coefficient in delta(y2*) is 1; the defining
    pairing <delta(psi), y (x) y'> = <psi, [y, y']> forces 2 (both computation
    routes in this package agree).  `corrected` selects which to compare with;
    the discrepancy is recorded as an erratum in the conventions report."""
    k = entry.mp.dim_c
    p = entry.p
    out = [np.zeros((k, k)) for _ in range(k)]

    def wedge(i, j):
        m = np.zeros((k, k))
        m[i, j] = 1.0
        m[j, i] = -1.0
        return m

    out[1] = (2.0 if corrected else 1.0) * wedge(0, 1)
    for kk in range(p - 1):
        r_idx, i_idx = 2 + 2 * kk, 3 + 2 * kk
        out[r_idx] = wedge(0, r_idx)
        out[i_idx] = wedge(0, i_idx)
        out[1] = out[1] + 2.0 * wedge(r_idx, i_idx)
    return out


def _adstar_u_residual(entry, rng: Rng, samples: int = 25) -> float:
    """Ad*_U on k0 ~ C^p equals multiplication by det(U) U."""
    mp = entry.mp
    p = entry.p
    worst = 0.0
    # complex coordinates: w_k = psi^I_k + i psi^R_k for k < p, w_p from (psi_a, psi_2)
    def to_complex(v):
        w = np.zeros(p, dtype=complex)
        for kk in range(p - 1):
            w[kk] = v[3 + 2 * kk] + 1j * v[2 + 2 * kk]
        w[p - 1] = v[1] + 1j * v[0]
        return w

    for _ in range(samples):
        a = sample_group_element(mp, rng)
        u = a.matrix[:p, :p]
        k_mat = mp.coadjoint_on_b0(a)
        for i in range(2 * p):
            img = to_complex(k_mat @ np.eye(2 * p)[i])
            expect = np.linalg.det(u) * (u @ to_complex(np.eye(2 * p)[i]))
            worst = max(worst, float(np.max(np.abs(img - expect))))
    return worst


def _r_display_matrices(entry) -> float:
    """The displayed Cartan projections of the solvable basis match P^C_k y_i."""
    p = entry.p
    n = p + 1
    mp = entry.mp

    def unit(i, j):
        m = np.zeros((n, n), dtype=complex)
        m[i, j] = 1.0
        return m

    displayed = {1: 1j * unit(p - 1, p - 1) - 1j * unit(n - 1, n - 1)}
    for kk in range(p - 1):
        displayed[2 + 2 * kk] = unit(p - 1, kk) - unit(kk, p - 1)
        displayed[3 + 2 * kk] = 1j * unit(kk, p - 1) + 1j * unit(p - 1, kk)
    worst = 0.0
    for i in range(mp.dim_c):
        proj = entry.g.matrix_of(entry.cartan.project("k", mp.y_basis[i]))
        expect = displayed.get(i, np.zeros((n, n), dtype=complex))
        worst = max(worst, float(np.max(np.abs(proj - expect))))
    return worst


def conventions_report(entry: CatalogEntry, rng: Rng) -> list[dict]:
    """Global-sign and convention findings for every published table this
    package reproduces, machine-verified at report time."""
    mp = entry.mp
    out = []

    computed_c = _computed_c_structure(mp)
    sign, resid = _best_sign(computed_c, _su_p1_displayed_bracket_table(entry))
    out.append({"table": "solvable bracket table", "sign": sign, "residual": resid,
                "note": "brackets of (ya, y2, yR_k, yI_k)"})

    ea = bi.build_e(mp)
    delta = bi.delta_direct(ea)
    computed_delta = [d.coeffs[:ea.k, :ea.k] for d in delta[:ea.k]]
    disp = _displayed_delta_table(entry, corrected=True)
    sign_d, resid_d = _best_sign(np.array(computed_delta), np.array(disp))
    out.append({
        "table": "cobracket table on the annihilator block", "sign": sign_d,
        "residual": resid_d,
        "note": ("erratum: the published psi_a^psi_2 coefficient of delta(y2*) is 1; "
                 "the defining pairing forces 2 (both computation routes agree); "
                 "compared against the corrected table")})

    rm = bi.r_matrix(entry, ea)
    out.append({"table": "r-matrix", "sign": rm["relative_sign"],
                "residual": rm["difference"],
                "note": "z.delta(z) versus the Cartan-projection sum formula"})
    out.append({"table": "r-matrix display (matrix units)", "sign": 1.0,
                "residual": _r_display_matrices(entry),
                "note": "displayed Cartan projections of the solvable basis"})

    out.append({"table": "coadjoint action on the annihilator", "sign": 1.0,
                "residual": _adstar_u_residual(entry, rng),
                "note": "Ad*_U acts as det(U) U on complex coordinates"})

    if entry.p == 1:
        # planar e(2) tables
        e_struct = ea.e.structure
        displayed_e = np.zeros((3, 3, 3))
        displayed_e[2, 0, 1] = 2.0    # displayed [J, P1] = 2 P2
        displayed_e[0, 2, 1] = -2.0
        displayed_e[2, 1, 0] = -2.0   # displayed [J, P2] = -2 P1
        displayed_e[1, 2, 0] = 2.0
        sign_e, resid_e = _best_sign(e_struct, displayed_e)
        out.append({"table": "planar bracket table [J,P1],[J,P2]", "sign": sign_e,
                    "residual": resid_e,
                    "note": "published table matches with one global sign flip"})

        xt_resid = _xtilde_table_residual(entry)
        out.append({"table": "planar linear coordinate functions", "sign": None,
                    "residual": xt_resid,
                    "note": ("displayed values match <v, Ad_{a^{-1}} y>, while the "
                             "bivector correspondence pins <v, Ad_a y>; recorded, not an error")})
        out.append({"table": "dual bracket vs family-3 table", "sign": 1.0,
                    "residual": rho_intertwiner_residual(),
                    "note": "this cobracket dualizes to 2x the family-3 bracket"})

    out.append({"table": "quantization conventions", "sign": None, "residual": 0.0,
                "note": ("self-adjointness factor i dropped: [t_y, f] = X'_y(f); "
                         "coproduct twist uses the group action itself (the inverse "
                         "fails multiplicativity); deformation parameter is formal")})
    out.append({"table": "involution extension", "sign": None, "residual": 0.0,
                "note": ("Cartan involution extended conjugate-linearly (compact-form "
                         "conjugation x -> -x*); the complex-linear extension fixes "
                         "the annihilator block and cannot give a Manin complement")})
    return out


def _xtilde_table_residual(entry) -> float:
    """Check ytilde(v, a) = <v, Ad_{a^{-1}} y> reproduces the displayed planar table."""
    mp = entry.mp
    worst = 0.0
    for phi in (0.3, 1.1, 2.5):
        a_inv = exp_b(mp, np.array([1.0]), -phi)
        from .group import adjoint_matrix

        ad = adjoint_matrix(mp, a_inv)
        vals = {}
        for (vi, name_v) in ((0, "P1"), (1, "P2")):
            w = mp.b0_to_gstar(np.eye(2)[vi])
            vals[("a", name_v)] = float(w @ (ad @ mp.y_basis[0]))
            vals[("2", name_v)] = float(w @ (ad @ mp.y_basis[1]))
        expect = {("a", "P1"): np.cos(2 * phi), ("a", "P2"): np.sin(2 * phi),
                  ("2", "P1"): -np.sin(2 * phi), ("2", "P2"): np.cos(2 * phi)}
        worst = max(worst, max(abs(vals[k] - expect[k]) for k in expect))
    return worst
