"""Hard-coded, validated example pairs: the su(1,1)/U(1) pair with its full
planar-group data and the su(p,1) family for p <= P_CAP.

Catalog matrices are entered exactly as rational/complex-unit expressions; the
only implicit normalization (the scaling of the central element z) is computed
and re-verified rather than hard-coded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import numpy as np

from .config import ALGEBRAIC_TOL, P_CAP
from .lie import IM_TRACE, LieAlgebra, SubspaceDecomposition, from_realization, trace_pairing
from .matched import MatchedPair


def _emb_k(m: np.ndarray) -> np.ndarray:
    """u(p) block M -> [[M, 0], [0, -tr M]] inside su(p,1)."""
    p = m.shape[0]
    out = np.zeros((p + 1, p + 1), dtype=complex)
    out[:p, :p] = m
    out[p, p] = -np.trace(m)
    return out


def _unit(n: int, i: int, j: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=complex)
    out[i, j] = 1.0
    return out


@dataclass(eq=False)
class CatalogEntry:
    name: str
    p: int
    mp: MatchedPair
    iwasawa: SubspaceDecomposition            # parts k, a, n
    cartan: SubspaceDecomposition             # parts k, p
    z: np.ndarray                             # g-coordinates of the central element
    gstar: LieAlgebra                         # upper-triangular dual algebra
    psi_mats: list[np.ndarray]                # matrix representatives of the dual basis
    gstar_k0_indices: list[int]               # gstar basis indices spanning the k0 block
    eta: np.ndarray = field(default=None)     # signature matrix diag(I_p, -1)
    root_spaces: dict = field(default_factory=dict)  # restricted root spaces (rows)

    @property
    def g(self) -> LieAlgebra:
        return self.mp.g


def _su_p1_matrices(p: int):
    """Basis matrices of su(p,1): the compact block first, then the solvable part."""
    n = p + 1
    mats, labels = [], []
    # k = u(p) embedded: real/imag off-diagonal pairs, then imaginary diagonals
    for k in range(p):
        for l in range(k + 1, p):
            mats.append(_emb_k(_unit(p, k, l) - _unit(p, l, k)))
            labels.append(f"kR_{k+1}{l+1}")
            mats.append(_emb_k(1j * (_unit(p, k, l) + _unit(p, l, k))))
            labels.append(f"kI_{k+1}{l+1}")
    for k in range(p):
        mats.append(_emb_k(1j * _unit(p, k, k)))
        labels.append(f"kD_{k+1}")
    dim_k = len(mats)
    # s = a (+) n: y_a, y_2, then the restricted root pairs
    y_a = _unit(n, p - 1, n - 1) + _unit(n, n - 1, p - 1)
    y_2 = 1j * (_unit(n, p - 1, p - 1) - _unit(n, p - 1, n - 1)
                + _unit(n, n - 1, p - 1) - _unit(n, n - 1, n - 1))
    mats.append(y_a)
    labels.append("ya")
    mats.append(y_2)
    labels.append("y2")
    for k in range(p - 1):
        y_r = (-_unit(n, k, p - 1) + _unit(n, k, n - 1)
               + _unit(n, p - 1, k) + _unit(n, n - 1, k))
        y_i = 1j * (_unit(n, k, p - 1) - _unit(n, k, n - 1)
                    + _unit(n, p - 1, k) + _unit(n, n - 1, k))
        mats.append(y_r)
        labels.append(f"yR_{k+1}")
        mats.append(y_i)
        labels.append(f"yI_{k+1}")
    return mats, labels, dim_k


def _gstar_matrices(p: int):
    """Upper-triangular traceless basis with real diagonal: su(p,1)* inside sl(p+1,C)."""
    n = p + 1
    mats, labels, k0_idx = [], [], []
    for i in range(n):
        for j in range(i + 1, n):
            if j == n - 1:
                k0_idx.extend([len(mats), len(mats) + 1])
            mats.append(_unit(n, i, j))
            labels.append(f"E_{i+1}{j+1}")
            mats.append(1j * _unit(n, i, j))
            labels.append(f"iE_{i+1}{j+1}")
    for j in range(p):
        mats.append(_unit(n, j, j) - _unit(n, j + 1, j + 1))
        labels.append(f"D_{j+1}")
    return mats, labels, k0_idx


def _psi_matrices(p: int):
    """Dual basis in k0, ordered like the y-basis: psi_a, psi_2, psi_R, psi_I."""
    n = p + 1
    out = [np.zeros((n, n), dtype=complex) for _ in range(2 * p)]
    out[0][p - 1, n - 1] = 1j            # y_a* = [[0, i e_p], [0, 0]]
    out[1][p - 1, n - 1] = 1.0           # y_2* = [[0, e_p], [0, 0]]
    for k in range(p - 1):
        out[2 + 2 * k][k, n - 1] = 1j    # y_R*_k
        out[3 + 2 * k][k, n - 1] = 1.0   # y_I*_k
    return out


def supq1(p: int) -> CatalogEntry:
    """The su(p,1)/U(p) Iwasawa matched pair, fully decorated."""
    if not (1 <= p <= P_CAP):
        raise ValueError(f"p must be between 1 and {P_CAP}")
    n = p + 1
    mats, labels, dim_k = _su_p1_matrices(p)
    g = from_realization(labels, mats, pairing=IM_TRACE)
    dim = g.dim

    eye = np.eye(dim)
    b_rows = eye[:dim_k]
    c_rows = eye[dim_k:]
    decomp = SubspaceDecomposition(g, {"b": b_rows, "c": c_rows})
    mp = MatchedPair(f"su{p}1", g, decomp, c_rows)

    # Iwasawa (k, a, n) and Cartan (k, p) decompositions
    a_rows = eye[dim_k: dim_k + 1]
    n_rows = eye[dim_k + 1:]
    iwasawa = SubspaceDecomposition(g, {"k": b_rows, "a": a_rows, "n": n_rows})
    p_mats = []
    for k in range(p):
        p_mats.append(_unit(n, k, n - 1) + _unit(n, n - 1, k))
        p_mats.append(1j * (_unit(n, k, n - 1) - _unit(n, n - 1, k)))
    p_rows = np.array([g.coords_of(m) for m in p_mats])
    cartan = SubspaceDecomposition(g, {"k": b_rows, "p": p_rows})

    z_mat = np.diag([1j] * p + [-1j * p]).astype(complex) / (p + 1)
    z = g.coords_of(z_mat)

    gs_mats, gs_labels, k0_idx = _gstar_matrices(p)
    gstar = from_realization(gs_labels, gs_mats, pairing=IM_TRACE)

    # restricted root spaces: the pairs span the simple space, y2 the double
    f1_rows = eye[dim_k + 2:]
    f2_rows = eye[dim_k + 1: dim_k + 2]
    entry = CatalogEntry(
        name=f"su{p}1", p=p, mp=mp, iwasawa=iwasawa, cartan=cartan, z=z,
        gstar=gstar, psi_mats=_psi_matrices(p), gstar_k0_indices=k0_idx,
        eta=np.diag([1.0] * p + [-1.0]).astype(complex),
        root_spaces={"f1": f1_rows, "2f1": f2_rows},
    )
    _validate_entry(entry)
    return entry


def su11() -> CatalogEntry:
    """The su(1,1)/U(1) pair of the planar example (p = 1)."""
    entry = supq1(1)
    entry.name = "su11"
    entry.mp.name = "su11"
    return entry


def _validate_entry(entry: CatalogEntry):
    mp, g = entry.mp, entry.g
    # the realization satisfies the defining relation x* eta + eta x = 0
    for m in g.realization:
        resid = np.max(np.abs(np.conj(m.T) @ entry.eta + entry.eta @ m))
        if resid > ALGEBRAIC_TOL:
            raise ValueError(f"realization matrix violates the signature relation ({resid:.3e})")
    # dual basis against the displayed matrix representatives
    for i, psi_mat in enumerate(entry.psi_mats):
        coords = np.array([trace_pairing(psi_mat, m, IM_TRACE) for m in g.realization])
        if np.max(np.abs(coords - mp.psi_basis[i])) > ALGEBRAIC_TOL:
            raise ValueError(f"dual basis {i} disagrees with its matrix representative")
    # z normalization: ad(z)^2 = -1 on the Cartan complement
    ad_z = g.ad_matrix_coords(entry.z)
    for row in entry.cartan.parts["p"]:
        resid = np.max(np.abs(ad_z @ ad_z @ row + row))
        if resid > ALGEBRAIC_TOL:
            raise ValueError(f"z normalization failed (residual {resid:.3e})")
    # restricted root grading: ad(y_a) acts with eigenvalue 1 on the simple
    # root space and 2 on the double one
    a_row = entry.iwasawa.parts["a"][0]
    for weight, rows in ((1.0, entry.root_spaces["f1"]), (2.0, entry.root_spaces["2f1"])):
        for row in rows:
            resid = np.max(np.abs(g.bracket_coords(a_row, row) - weight * row))
            if resid > ALGEBRAIC_TOL:
                raise ValueError(f"root-space grading failed (residual {resid:.3e})")


_CATALOG = {"su11": lambda: su11()}
for _p in range(2, P_CAP + 1):
    _CATALOG[f"su{_p}1"] = (lambda q: (lambda: supq1(q)))(_p)


def catalog_names() -> list[str]:
    return list(_CATALOG.keys())


def get_entry(name: str) -> CatalogEntry:
    if name not in _CATALOG:
        raise KeyError(f"unknown catalog pair {name!r}; known: {', '.join(_CATALOG)}")
    return _CATALOG[name]()


# -- planar dual-bracket comparison ------------------------------------------


def e2_dual_bracket_tables(s: float = 1.0):
    """The two dual brackets on e(2)* and the intertwiner between them.

    Basis order (J*, P1*, P2*).  Family 1 carries the auxiliary parameter s;
    family 3 is the one induced (up to scale) by this package's cobracket.
    """
    def table_to_structure(table):
        c = np.zeros((3, 3, 3))
        for (i, j), vec in table.items():
            c[i, j] = vec
            c[j, i] = -np.asarray(vec)
        return c

    j_, p1, p2 = 0, 1, 2
    bracket1 = table_to_structure({
        (p1, p2): [0, 0, 0],
        (p1, j_): [0, s, 0],
        (p2, j_): [0, 0, s],
    })
    bracket3 = table_to_structure({
        (p1, p2): [0, 0, 1],
        (p1, j_): [1, 0, 0],
        (p2, j_): [0, 0, 0],
    })
    rho = np.zeros((3, 3))
    rho[:, j_] = [0, -s, 0]     # rho(J*) = -s P1*
    rho[:, p1] = [1, 0, 0]      # rho(P1*) = J*
    rho[:, p2] = [0, 0, 1]      # rho(P2*) = P2*
    return bracket1, bracket3, rho


def rho_intertwiner_residual(s: float = 1.0, rho_sign: float = 1.0) -> float:
    """Max residual of rho([x, y]_1) = [rho(x), rho(y)]_3 over basis pairs."""
    bracket1, bracket3, rho = e2_dual_bracket_tables(s)
    rho = rho_sign * rho
    worst = 0.0
    for i in range(3):
        for j in range(3):
            lhs = rho @ bracket1[i, j]
            rhs = np.einsum("i,j,ijk->k", rho[:, i], rho[:, j], bracket3)
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst
