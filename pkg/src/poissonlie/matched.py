"""Matched-pair data: g = b (+) c with projections, dual pair (y_i, psi^i), the
canonical tensor, the induced group action on c and the trivialized anchor map."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional

import numpy as np

from .config import ALGEBRAIC_TOL
from .lie import LieAlgebra, SubspaceDecomposition, dual_basis
from .linalg import BasedSpace, Tensor2

if TYPE_CHECKING:  # pragma: no cover
    from .group import GroupElement


@dataclass(eq=False)
class MatchedPair:
    name: str
    g: LieAlgebra
    decomp: SubspaceDecomposition          # parts "b" and "c", in that order
    y_basis: np.ndarray                    # rows: basis of c in g-coordinates
    psi_basis: np.ndarray = field(init=False)  # rows: dual basis in b0 (dual coords)
    b0_space: BasedSpace = field(init=False)
    e_space: BasedSpace = field(init=False)

    def __post_init__(self):
        if set(self.decomp.parts.keys()) != {"b", "c"}:
            raise ValueError("decomposition must have parts 'b' and 'c'")
        for part in ("b", "c"):
            res = self.decomp.closure_residual(part)
            if res > ALGEBRAIC_TOL:
                raise ValueError(f"part {part!r} is not a subalgebra (residual {res:.3e})")
        self.y_basis = np.atleast_2d(np.asarray(self.y_basis, dtype=float))
        self.psi_basis = dual_basis(self.g, self.decomp.parts["b"], self.y_basis)
        k = self.y_basis.shape[0]
        labels = [f"psi_{i}" for i in range(k)]
        # keep catalog-style labels when the y-basis rows are unit vectors
        y_lbl = self._y_labels()
        if y_lbl is not None:
            labels = [f"psi[{l}]" for l in y_lbl]
        self.b0_space = BasedSpace.make(labels)
        self.e_space = BasedSpace.make(list(self.b0_space.labels) + list(self.b_labels()))
        # cached conversion matrices
        self._Y = self.y_basis.T                      # n x k, columns y_i
        self._Psi = self.psi_basis.T                  # n x k, columns psi^i (dual coords)
        self._B = self.decomp.parts["b"].T            # n x m
        self._T = np.column_stack([self._B, self._Y])
        self._T_inv = np.linalg.inv(self._T)

    def _y_labels(self) -> Optional[list[str]]:
        lbl = []
        for row in self.y_basis:
            nz = np.nonzero(row)[0]
            if len(nz) != 1 or row[nz[0]] != 1.0:
                return None
            lbl.append(self.g.space.labels[nz[0]])
        return lbl

    def b_labels(self) -> list[str]:
        lbl = []
        for row in self.decomp.parts["b"]:
            nz = np.nonzero(row)[0]
            if len(nz) == 1 and row[nz[0]] == 1.0:
                lbl.append(self.g.space.labels[nz[0]])
            else:
                lbl.append(f"b_{len(lbl)}")
        return lbl

    # -- dimensions ---------------------------------------------------------

    @property
    def dim_c(self) -> int:
        return self.y_basis.shape[0]

    @property
    def dim_b(self) -> int:
        return self.decomp.parts["b"].shape[0]

    # -- coordinate conversions ----------------------------------------------

    def b0_to_gstar(self, v: np.ndarray) -> np.ndarray:
        """b0-coordinates (psi basis) -> dual coordinates on all of g."""
        return self._Psi @ np.asarray(v, dtype=float)

    def gstar_to_b0(self, w: np.ndarray) -> np.ndarray:
        """Pair a dual vector against the y-basis: components <w, y_j>."""
        return self._Y.T @ np.asarray(w, dtype=float)

    def b_coords(self, x: np.ndarray) -> np.ndarray:
        """Coefficients of the b-part of x in the b-basis."""
        return (self._T_inv @ np.asarray(x, dtype=float))[: self.dim_b]

    def c_coords(self, x: np.ndarray) -> np.ndarray:
        return (self._T_inv @ np.asarray(x, dtype=float))[self.dim_b:]

    def b_matrix_of(self, xb: np.ndarray) -> np.ndarray:
        """Realization matrix of a b-part coordinate vector."""
        return self.g.matrix_of(self._B @ np.asarray(xb, dtype=float))

    # -- operations -----------------------------------------------------------

    def canonical_tensor(self) -> Tensor2:
        """t = sum_i psi^i (x) y_i in (psi, y) coordinates: the identity matrix."""
        k = self.dim_c
        space = BasedSpace.make([f"t_{i}" for i in range(k)])
        return Tensor2(space, np.eye(k))

    def action_on_c(self, a: "GroupElement") -> np.ndarray:
        """Matrix of P_c Ad_a restricted to c, in the y-basis."""
        from .group import adjoint_matrix

        ad = adjoint_matrix(self, a)
        return self._Psi.T @ ad @ self._Y

    def coadjoint_on_b0(self, a: "GroupElement") -> np.ndarray:
        """Matrix of Ad*_a restricted to b0, in the psi-basis."""
        from .group import coadjoint_matrix

        return self._Y.T @ coadjoint_matrix(self, a) @ self._Psi

    def anchor(self, y: np.ndarray, a: "GroupElement") -> np.ndarray:
        """Right-trivialized anchor value P_b Ad_a y, in b-basis coordinates."""
        from .group import adjoint_matrix

        y = np.asarray(y, dtype=float)
        if y.shape != (self.g.dim,):
            raise ValueError("y must be given in g-coordinates")
        if np.max(np.abs(self.decomp.project("c", y) - y)) > ALGEBRAIC_TOL:
            raise ValueError("y is not in the c-part")
        return self.b_coords(adjoint_matrix(self, a) @ y)

    def invariance_residual(self, a: "GroupElement") -> float:
        """Residual of sum_i Ad*_a psi^i (x) P_c Ad_a y_i = sum_i psi^i (x) y_i."""
        k_mat = self.coadjoint_on_b0(a)
        c_mat = self.action_on_c(a)
        return float(np.max(np.abs(k_mat @ c_mat.T - np.eye(self.dim_c))))

    # -- serialization ----------------------------------------------------------

    def to_json_dict(self) -> dict:
        b_rows = self.decomp.parts["b"]
        return {
            "name": self.name,
            "algebra": self.g.to_json_dict(),
            "b": [list(map(float, row)) for row in b_rows],
            "c": [list(map(float, row)) for row in self.y_basis],
        }

    @staticmethod
    def from_json_dict(doc: dict) -> "MatchedPair":
        g = LieAlgebra.from_json_dict(doc["algebra"])
        b_rows = np.asarray(doc["b"], dtype=float)
        c_rows = np.asarray(doc["c"], dtype=float)
        if b_rows.ndim == 1:  # allow index lists for the basis vectors
            b_rows = np.eye(g.dim)[np.asarray(doc["b"], dtype=int)]
        if c_rows.ndim == 1:
            c_rows = np.eye(g.dim)[np.asarray(doc["c"], dtype=int)]
        decomp = SubspaceDecomposition(g, {"b": b_rows, "c": c_rows})
        return MatchedPair(doc.get("name", "imported"), g, decomp, c_rows)

    @staticmethod
    def from_json(text: str) -> "MatchedPair":
        return MatchedPair.from_json_dict(json.loads(text))
