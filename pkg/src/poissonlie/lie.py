"""Finite-dimensional real Lie algebras with optional complex-matrix realizations.

Structure constants are the source of truth; realizations validate them and
provide coordinates for group-level computations.  Conventions are fixed here:

    ad(x)(y) = [x, y],      <ad*(x)(phi), y> = phi([y, x]),

so the coadjoint matrix is minus the transpose of the adjoint matrix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .config import ALGEBRAIC_TOL
from .linalg import BasedSpace, SpaceMismatchError, Vec

IM_TRACE = "IM_TRACE"
RE_TRACE = "RE_TRACE"


def trace_pairing(x: np.ndarray, y: np.ndarray, spec: str) -> float:
    """Invariant pairing of two complex matrices: Im tr(xy) or Re tr(xy)."""
    t = np.trace(x @ y)
    if spec == IM_TRACE:
        return float(np.imag(t))
    if spec == RE_TRACE:
        return float(np.real(t))
    raise ValueError(f"unknown pairing spec {spec!r}")


class MatrixBasisSolver:
    """Least-squares re-expansion of complex matrices in a fixed real-span basis."""

    def __init__(self, mats: Sequence[np.ndarray]):
        self.mats = [np.asarray(m, dtype=complex) for m in mats]
        self.shape = self.mats[0].shape
        cols = [np.concatenate([m.real.ravel(), m.imag.ravel()]) for m in self.mats]
        self._basis = np.column_stack(cols)
        # economy QR gives a stable repeated solver for tiny systems
        self._q, self._r = np.linalg.qr(self._basis)

    def solve(self, m: np.ndarray) -> tuple[np.ndarray, float]:
        """Return (coords, residual) with m ~ sum_i coords[i] * mats[i]."""
        v = np.concatenate([np.asarray(m, dtype=complex).real.ravel(),
                            np.asarray(m, dtype=complex).imag.ravel()])
        coords = np.linalg.solve(self._r, self._q.T @ v)
        resid = float(np.max(np.abs(self._basis @ coords - v)))
        return coords, resid

    def solve_many(self, mats: np.ndarray) -> tuple[np.ndarray, float]:
        """Batch re-expansion: mats has shape (count, m, m); returns
        (coords with shape (n, count), worst residual)."""
        stack = np.asarray(mats, dtype=complex).reshape(len(mats), -1)
        v = np.concatenate([stack.real, stack.imag], axis=1).T
        coords = np.linalg.solve(self._r, self._q.T @ v)
        resid = float(np.max(np.abs(self._basis @ coords - v)))
        return coords, resid

    def combine(self, coords: np.ndarray) -> np.ndarray:
        out = np.zeros(self.shape, dtype=complex)
        for c, m in zip(coords, self.mats):
            out = out + c * m
        return out


def jacobi_residual(structure: np.ndarray) -> float:
    """Max over basis triples of the Jacobi identity residual."""
    c = structure
    term = (np.einsum("ijl,lkm->ijkm", c, c)
            + np.einsum("jkl,lim->ijkm", c, c)
            + np.einsum("kil,ljm->ijkm", c, c))
    return float(np.max(np.abs(term)))


@dataclass(eq=False)
class LieAlgebra:
    space: BasedSpace
    structure: np.ndarray
    realization: Optional[list[np.ndarray]] = None
    pairing: Optional[str] = None
    _solver: Optional[MatrixBasisSolver] = field(default=None, repr=False)

    def __post_init__(self):
        n = self.space.dim
        c = np.asarray(self.structure, dtype=float)
        if c.shape != (n, n, n):
            raise ValueError(f"structure shape {c.shape} != ({n},{n},{n})")
        if np.max(np.abs(c + np.swapaxes(c, 0, 1))) != 0.0:
            raise ValueError("structure constants are not exactly antisymmetric")
        self.structure = c
        res = jacobi_residual(c)
        if res > ALGEBRAIC_TOL:
            raise ValueError(f"Jacobi identity violated: residual {res:.3e}")
        if self.realization is not None:
            self.realization = [np.asarray(m, dtype=complex) for m in self.realization]
            if len(self.realization) != n:
                raise ValueError("realization must provide one matrix per basis element")
            self._solver = MatrixBasisSolver(self.realization)
            err = self.realization_residual()
            if err > ALGEBRAIC_TOL:
                raise ValueError(f"realization inconsistent with structure constants: {err:.3e}")

    # -- basic operations -------------------------------------------------

    @property
    def dim(self) -> int:
        return self.space.dim

    def bracket(self, x: Vec, y: Vec) -> Vec:
        if x.space != self.space or y.space != self.space:
            raise SpaceMismatchError("vectors not over this algebra's space")
        return Vec(self.space, self.bracket_coords(x.coords, y.coords))

    def bracket_coords(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.structure)

    def ad_matrix_coords(self, x: np.ndarray) -> np.ndarray:
        """Matrix of y -> [x, y]."""
        return np.einsum("i,ijk->kj", x, self.structure)

    def ad_matrix(self, x: Vec) -> np.ndarray:
        if x.space != self.space:
            raise SpaceMismatchError("vector not over this algebra's space")
        return self.ad_matrix_coords(x.coords)

    def coad_matrix_coords(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ad*(x) on dual coordinates: <ad*(x)phi, y> = phi([y, x])."""
        return -self.ad_matrix_coords(x).T

    def coad_matrix(self, x: Vec) -> np.ndarray:
        return -self.ad_matrix(x).T

    def check_jacobi(self) -> float:
        return jacobi_residual(self.structure)

    # -- realization helpers ----------------------------------------------

    def matrix_of(self, coords: np.ndarray) -> np.ndarray:
        if self.realization is None:
            raise ValueError("algebra has no matrix realization")
        return self._solver.combine(np.asarray(coords, dtype=float))

    def coords_of(self, mat: np.ndarray, tol: float = ALGEBRAIC_TOL) -> np.ndarray:
        if self.realization is None:
            raise ValueError("algebra has no matrix realization")
        coords, resid = self._solver.solve(mat)
        if resid > tol:
            raise ValueError(f"matrix is not in the realization span (residual {resid:.3e})")
        return coords

    def realization_residual(self) -> float:
        """Max mismatch between matrix commutators and stored structure constants."""
        worst = 0.0
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                comm = (self.realization[i] @ self.realization[j]
                        - self.realization[j] @ self.realization[i])
                coords, resid = self._solver.solve(comm)
                worst = max(worst, resid, float(np.max(np.abs(coords - self.structure[i, j]))))
        return worst

    def invariant_pairing(self, x: Vec, y: Vec) -> float:
        if self.pairing is None:
            raise ValueError("algebra has no pairing spec")
        return trace_pairing(self.matrix_of(x.coords), self.matrix_of(y.coords), self.pairing)

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        doc = {
            "labels": list(self.space.labels),
            "structure": self.structure.tolist(),
            "pairing": self.pairing,
        }
        if self.realization is not None:
            doc["realization"] = [
                {"re": m.real.tolist(), "im": m.imag.tolist()} for m in self.realization
            ]
        return doc

    @staticmethod
    def from_json_dict(doc: dict) -> "LieAlgebra":
        labels = doc["labels"]
        structure = np.asarray(doc["structure"], dtype=float)
        realization = None
        if doc.get("realization") is not None:
            realization = [
                np.asarray(m["re"], dtype=float) + 1j * np.asarray(m["im"], dtype=float)
                for m in doc["realization"]
            ]
        return LieAlgebra(BasedSpace.make(labels), structure,
                          realization=realization, pairing=doc.get("pairing"))

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "LieAlgebra":
        return LieAlgebra.from_json_dict(json.loads(text))


def from_realization(labels: Sequence[str], mats: Sequence[np.ndarray],
                     pairing: Optional[str] = None) -> LieAlgebra:
    """Build a LieAlgebra by re-expanding matrix commutators in the given basis."""
    solver = MatrixBasisSolver(mats)
    n = len(mats)
    structure = np.zeros((n, n, n))
    for i in range(n):
        for j in range(i + 1, n):
            comm = mats[i] @ mats[j] - mats[j] @ mats[i]
            coords, resid = solver.solve(comm)
            if resid > ALGEBRAIC_TOL:
                raise ValueError(
                    f"commutator [{labels[i]}, {labels[j]}] leaves the span (residual {resid:.3e})")
            structure[i, j] = coords
            structure[j, i] = -coords
    return LieAlgebra(BasedSpace.make(labels), structure,
                      realization=list(mats), pairing=pairing)


@dataclass(eq=False)
class SubspaceDecomposition:
    """Named direct-sum decomposition with projection matrices.

    Parts are given as lists of coordinate vectors in the parent basis.  The
    last projection is defined as identity minus the others so the resolution
    of identity is exact by construction.
    """

    parent: LieAlgebra
    parts: dict[str, np.ndarray]          # name -> (k_part, n) array of basis rows
    projections: dict[str, np.ndarray] = field(init=False)
    condition_number: float = field(init=False)

    def __post_init__(self):
        n = self.parent.dim
        names = list(self.parts.keys())
        self.parts = {k: np.atleast_2d(np.asarray(v, dtype=float)) for k, v in self.parts.items()}
        total = sum(v.shape[0] for v in self.parts.values())
        if total != n:
            raise ValueError(f"parts span {total} dimensions, parent has {n}")
        t = np.column_stack([v for part in self.parts.values() for v in part])
        self.condition_number = float(np.linalg.cond(t))
        if not np.isfinite(self.condition_number) or self.condition_number > 1e12:
            raise ValueError("parts are not independent (change of basis is singular)")
        t_inv = np.linalg.inv(t)
        projections = {}
        offset = 0
        for name in names:
            k = self.parts[name].shape[0]
            sel = np.zeros((n, n))
            sel[offset:offset + k, offset:offset + k] = np.eye(k)
            projections[name] = t @ sel @ t_inv
            offset += k
        # force an exact resolution of identity
        last = names[-1]
        acc = np.zeros((n, n))
        for name in names[:-1]:
            acc = acc + projections[name]
        projections[last] = np.eye(n) - acc
        self.projections = projections

    def projector_residual(self) -> float:
        """Max deviation from P_i P_j = delta_ij P_i and sum P = 1."""
        names = list(self.parts.keys())
        worst = float(np.max(np.abs(sum(self.projections[n] for n in names)
                                    - np.eye(self.parent.dim))))
        for a in names:
            for b in names:
                prod = self.projections[a] @ self.projections[b]
                expect = self.projections[a] if a == b else 0.0
                worst = max(worst, float(np.max(np.abs(prod - expect))))
        return worst

    def closure_residual(self, name: str) -> float:
        """How far the named part is from being a subalgebra."""
        basis = self.parts[name]
        p = self.projections[name]
        worst = 0.0
        for i in range(basis.shape[0]):
            for j in range(basis.shape[0]):
                br = self.parent.bracket_coords(basis[i], basis[j])
                worst = max(worst, float(np.max(np.abs(br - p @ br))))
        return worst

    def project(self, name: str, coords: np.ndarray) -> np.ndarray:
        return self.projections[name] @ coords

    def part_coords(self, name: str, coords: np.ndarray) -> np.ndarray:
        """Coefficients of (the projection of) `coords` in the part's own basis."""
        basis = self.parts[name]
        sol, *_ = np.linalg.lstsq(basis.T, self.project(name, coords), rcond=None)
        return sol


def dual_basis(algebra: LieAlgebra, annihilated: np.ndarray, dualized: np.ndarray,
               tol: float = ALGEBRAIC_TOL) -> np.ndarray:
    """Dual vectors psi^i in the annihilator of `annihilated` with <psi^i, y_j> = delta_ij.

    Rows of `annihilated` and `dualized` are coordinate vectors in the algebra
    basis; returned rows are dual-basis coordinates in the same labelling.
    """
    ann = np.atleast_2d(np.asarray(annihilated, dtype=float))
    dua = np.atleast_2d(np.asarray(dualized, dtype=float))
    n = algebra.dim
    k_ann, k_dua = ann.shape[0], dua.shape[0]
    if k_ann + k_dua != n:
        raise ValueError("annihilated and dualized parts must span the algebra")
    # psi satisfies psi . ann_b = 0 and psi . dua_j = delta_ij
    m = np.vstack([ann, dua])
    cond = float(np.linalg.cond(m))
    if not np.isfinite(cond) or cond > 1.0 / max(tol, 1e-15):
        raise ValueError(f"singular pairing matrix (condition number {cond:.3e})")
    rhs = np.vstack([np.zeros((k_ann, k_dua)), np.eye(k_dua)])
    psi = np.linalg.solve(m, rhs).T
    return psi
