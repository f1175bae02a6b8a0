import numpy as np
import pytest

from poissonlie.catalog import (catalog_names, e2_dual_bracket_tables, get_entry,
                                rho_intertwiner_residual, su11, supq1)
from poissonlie.group import e_mul, sample_e_element
from poissonlie.lie import jacobi_residual
from poissonlie.linalg import Rng


def test_catalog_names_and_lookup():
    assert catalog_names() == ["su11", "su21", "su31", "su41"]
    assert get_entry("su21").p == 2
    with pytest.raises(KeyError):
        get_entry("su99")


def test_all_entries_pass_core_invariants():
    for name in catalog_names():
        entry = get_entry(name)
        assert entry.g.check_jacobi() <= 1e-9
        assert entry.g.realization_residual() <= 1e-9
        for decomp in (entry.mp.decomp, entry.iwasawa, entry.cartan):
            assert decomp.projector_residual() <= 1e-9
        pairing = entry.mp.psi_basis @ entry.mp.y_basis.T
        assert np.max(np.abs(pairing - np.eye(entry.mp.dim_c))) <= 1e-12
        ad_z = entry.g.ad_matrix_coords(entry.z)
        for row in entry.cartan.parts["p"]:
            assert np.max(np.abs(ad_z @ ad_z @ row + row)) <= 1e-9


def test_supq1_range():
    with pytest.raises(ValueError):
        supq1(0)
    with pytest.raises(ValueError):
        supq1(5)


def test_su11_generators_exact():
    g = su11().g
    assert np.array_equal(g.realization[0], np.diag([1j, -1j]))
    assert np.array_equal(g.realization[1], np.array([[0, 1], [1, 0]], dtype=complex))
    assert np.array_equal(g.realization[2], np.array([[1j, -1j], [1j, -1j]]))


def test_su11_z_normalization():
    entry = su11()
    ad_z = entry.g.ad_matrix_coords(entry.z)
    for row in entry.cartan.parts["p"]:
        assert np.max(np.abs(ad_z @ ad_z @ row + row)) <= 1e-9


def test_supq1_z_normalization_on_annihilator():
    # ad*(z)^2 = -1 on the annihilator block, dual form of the normalization
    for p in (2, 3):
        entry = supq1(p)
        mp = entry.mp
        coad = entry.g.coad_matrix_coords(entry.z)
        k_action = mp._Y.T @ coad @ mp._Psi
        assert np.max(np.abs(k_action @ k_action + np.eye(2 * p))) <= 1e-9


def test_planar_group_isomorphism_roundtrip():
    # E -> 2x2 matrices [[v, n], [0, v^{-1}]] with v = e^{i phi}, n = e^{-i phi} z
    entry = su11()
    mp = entry.mp

    def to_matrix(el):
        v = el.a.matrix[0, 0]
        z = el.v[1] + 1j * el.v[0]
        return np.array([[v, np.conj(v) * z], [0, np.conj(v)]])

    rng = Rng(44)
    for _ in range(100):
        g = sample_e_element(mp, rng)
        h = sample_e_element(mp, rng)
        lhs = to_matrix(e_mul(g, h))
        rhs = to_matrix(g) @ to_matrix(h)
        assert np.max(np.abs(lhs - rhs)) <= 1e-9


def test_su11_equals_supq1_one():
    a, b = su11(), supq1(1)
    assert a.g.space.labels == b.g.space.labels
    assert np.max(np.abs(a.g.structure - b.g.structure)) <= 1e-12


def test_supq1_bracket_table():
    for p in (2, 3):
        entry = supq1(p)
        g = entry.g
        labels = list(g.space.labels)
        ya = labels.index("ya")
        y2 = labels.index("y2")
        e = np.eye(g.dim)
        assert np.allclose(g.bracket_coords(e[ya], e[y2]), 2 * e[y2], atol=1e-12)
        for k in range(p - 1):
            yr = labels.index(f"yR_{k+1}")
            yi = labels.index(f"yI_{k+1}")
            assert np.allclose(g.bracket_coords(e[ya], e[yr]), e[yr], atol=1e-12)
            assert np.allclose(g.bracket_coords(e[ya], e[yi]), e[yi], atol=1e-12)
            assert np.allclose(g.bracket_coords(e[yr], e[yi]), 2 * e[y2], atol=1e-12)
            # all other brackets involving y2 vanish
            assert np.max(np.abs(g.bracket_coords(e[y2], e[yr]))) <= 1e-12
            assert np.max(np.abs(g.bracket_coords(e[y2], e[yi]))) <= 1e-12
        for k in range(p - 1):
            for l in range(p - 1):
                r1 = labels.index(f"yR_{k+1}")
                r2 = labels.index(f"yR_{l+1}")
                i1 = labels.index(f"yI_{k+1}")
                i2 = labels.index(f"yI_{l+1}")
                assert np.max(np.abs(g.bracket_coords(e[r1], e[r2]))) <= 1e-12
                assert np.max(np.abs(g.bracket_coords(e[i1], e[i2]))) <= 1e-12
                if k != l:
                    assert np.max(np.abs(g.bracket_coords(e[r1], e[i2]))) <= 1e-12


def test_supq1_restricted_root_spaces_stored():
    entry = supq1(3)
    # iwasawa parts (k, a, n): a is one-dimensional, n carries y2 and the pairs
    assert entry.iwasawa.parts["a"].shape[0] == 1
    assert entry.iwasawa.parts["n"].shape[0] == 2 * 3 - 1
    assert entry.iwasawa.closure_residual("n") <= 1e-9
    # a normalizes n: [a, n] stays in n
    g = entry.g
    a_row = entry.iwasawa.parts["a"][0]
    p_n = entry.iwasawa.projections["n"]
    for row in entry.iwasawa.parts["n"]:
        br = g.bracket_coords(a_row, row)
        assert np.max(np.abs(br - p_n @ br)) <= 1e-9
    # graded root spaces: [g_f1, g_f1] lands in g_2f1
    f1 = entry.root_spaces["f1"]
    f2 = entry.root_spaces["2f1"]
    assert f1.shape[0] == 2 * (3 - 1) and f2.shape[0] == 1
    for r1 in f1:
        for r2 in f1:
            br = g.bracket_coords(r1, r2)
            coeff, *_ = np.linalg.lstsq(f2.T, br, rcond=None)
            assert np.max(np.abs(f2.T @ coeff - br)) <= 1e-9


def test_adstar_u_det_u_action():
    from poissonlie.checks import _adstar_u_residual

    for p in (1, 2, 3):
        assert _adstar_u_residual(supq1(p), Rng(5), samples=25) <= 1e-9


def test_dual_families_tables():
    bracket1, bracket3, rho = e2_dual_bracket_tables(s=1.0)
    assert jacobi_residual(bracket1) <= 1e-12
    assert jacobi_residual(bracket3) <= 1e-12
    # [P1*, P2*]_1 = 0
    assert np.max(np.abs(bracket1[1, 2])) == 0.0
    assert rho_intertwiner_residual(s=1.0) <= 1e-12
    assert rho_intertwiner_residual(s=2.5) <= 1e-12
    assert rho_intertwiner_residual(s=1.0, rho_sign=-1.0) > 1e-3


def test_entry_validation_catches_bad_duals():
    entry = su11()
    entry.psi_mats[0] = entry.psi_mats[0] * 2.0
    from poissonlie.catalog import _validate_entry

    with pytest.raises(ValueError):
        _validate_entry(entry)


def test_gstar_k0_indices():
    entry = supq1(2)
    mats = [entry.gstar.realization[i] for i in entry.gstar_k0_indices]
    assert len(mats) == 4  # complex 2-dim block as a real span
    for m in mats:
        assert np.max(np.abs(m[:, :-1])) == 0.0  # supported on the last column
