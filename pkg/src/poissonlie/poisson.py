"""The multiplicative-cocycle candidate on E and the Poisson bracket evaluator.

The right-trivialized bivector is stored as a map g -> Lambda^2 e with
e = b0 (+) b; the translation factors are never materialized.  The bracket
evaluator covers the function classes the construction is defined on:
fiberwise-linear functions of sections and pullbacks of base functions
(trig polynomials when B is the circle)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import ALGEBRAIC_TOL
from .group import EElement, adE, adjoint_matrix, e_mul, exp_b, sample_e_element
from .linalg import Bivector, Rng
from .matched import MatchedPair
from .trig import TrigPoly, fit_trig


def _c_bracket_table(mp: MatchedPair) -> np.ndarray:
    """brackets [y_i, y_j] in g-coordinates, shape (k, k, n), cached per pair."""
    table = getattr(mp, "_c_brackets", None)
    if table is not None:
        return table
    k = mp.dim_c
    out = np.zeros((k, k, mp.g.dim))
    for i in range(k):
        for j in range(i + 1, k):
            br = mp.g.bracket_coords(mp.y_basis[i], mp.y_basis[j])
            out[i, j] = br
            out[j, i] = -br
    mp._c_brackets = out
    return out


def eta0(mp: MatchedPair, g: EElement) -> Bivector:
    """(1/2) sum_ij <v, Ad_a [y_i, y_j]> Ad*_a psi^i ^ Ad*_a psi^j."""
    table = _c_bracket_table(mp)
    k, m = mp.dim_c, mp.dim_b
    ad = adjoint_matrix(mp, g.a)
    w = mp.b0_to_gstar(g.v)
    val = np.einsum("p,ijp->ij", w, np.einsum("pq,ijq->ijp", ad, table))
    k_mat = mp.coadjoint_on_b0(g.a)
    coeffs = np.zeros((k + m, k + m))
    coeffs[:k, :k] = k_mat @ val @ k_mat.T
    return Bivector(mp.e_space, coeffs)


def eta_b(mp: MatchedPair, g: EElement) -> Bivector:
    """sum_i Ad*_a psi^i ^ P_b Ad_a y_i."""
    k, m = mp.dim_c, mp.dim_b
    ad = adjoint_matrix(mp, g.a)
    k_mat = mp.coadjoint_on_b0(g.a)
    z = np.column_stack([mp.b_coords(ad @ mp.y_basis[i]) for i in range(k)])
    coeffs = np.zeros((k + m, k + m))
    coeffs[:k, k:] = k_mat @ z.T
    coeffs[k:, :k] = -z @ k_mat.T
    return Bivector(mp.e_space, coeffs)


def eta(mp: MatchedPair, g: EElement, *, eta_b_sign: float = 1.0) -> Bivector:
    return eta0(mp, g) + eta_b_sign * eta_b(mp, g)


def eta_alternative(mp: MatchedPair, g: EElement) -> Bivector:
    """Expansion of eta0 without group translation of the wedge frame:
    (1/2) <v, [y_i, y_j]> psi^i ^ psi^j  -  Ad*_a psi^i ^ ad*(P_b Ad_a y_i)(v)."""
    table = _c_bracket_table(mp)
    k, m = mp.dim_c, mp.dim_b
    w = mp.b0_to_gstar(g.v)
    val = np.einsum("p,ijp->ij", w, table)
    coeffs = np.zeros((k + m, k + m))
    coeffs[:k, :k] = val
    ad = adjoint_matrix(mp, g.a)
    k_mat = mp.coadjoint_on_b0(g.a)
    for i in range(k):
        x_b = mp.decomp.project("b", ad @ mp.y_basis[i])
        t_i = mp.gstar_to_b0(mp.g.coad_matrix_coords(x_b) @ w)
        u_i = k_mat[:, i]
        coeffs[:k, :k] -= np.outer(u_i, t_i) - np.outer(t_i, u_i)
    return Bivector(mp.e_space, coeffs)


def verify_cocycle(mp: MatchedPair, samples: int, rng: Rng,
                   tol: float = ALGEBRAIC_TOL, radius: float = 1.0,
                   eta_b_sign: float = 1.0) -> dict:
    """Max scaled residual of eta(gh) = eta(g) + (AdE_g (x) AdE_g) eta(h)."""
    if samples < 1:
        raise ValueError("need at least one sample")
    worst = 0.0
    for _ in range(samples):
        g = sample_e_element(mp, rng, radius)
        h = sample_e_element(mp, rng, radius)
        lhs = eta(mp, e_mul(g, h), eta_b_sign=eta_b_sign).coeffs
        a = adE(g)
        pushed = a @ eta(mp, h, eta_b_sign=eta_b_sign).coeffs @ a.T
        base = eta(mp, g, eta_b_sign=eta_b_sign).coeffs
        resid = np.max(np.abs(lhs - base - pushed))
        scale = 1.0 + max(np.max(np.abs(lhs)), np.max(np.abs(base)), np.max(np.abs(pushed)))
        worst = max(worst, float(resid / scale))
    return {
        "pair": mp.name,
        "check": "eta_cocycle",
        "samples": samples,
        "seed": rng.seed,
        "max_residual": worst,
        "tolerance": tol,
        "pass": bool(worst <= tol),
    }


def lambda2_b_block_residual(mp: MatchedPair, g: EElement) -> float:
    """The b x b block of eta(g); the cocycle never produces one."""
    k = mp.dim_c
    return float(np.max(np.abs(eta(mp, g).coeffs[k:, k:])))


# -- Poisson bracket on fiberwise-linear and base functions -------------------


@dataclass(frozen=True)
class LinearFn:
    """ytilde for y in c, given by y-basis coordinates."""

    y: tuple

    @staticmethod
    def make(coords) -> "LinearFn":
        return LinearFn(tuple(float(t) for t in coords))


@dataclass(frozen=True)
class BaseFn:
    """Pullback of a trig polynomial on B = U(1)."""

    f: TrigPoly


def circle_parameter_checks(mp: MatchedPair):
    if mp.dim_b != 1:
        raise ValueError("base functions require B isomorphic to U(1) (dim b = 1)")


def anchor_trig(mp: MatchedPair, y_coords_in_y_basis, max_mode: int = 4,
                samples: int = 32) -> TrigPoly:
    """Anchor coefficient alpha with a(X^L_y)(e^{i phi}) = alpha(phi) * J."""
    circle_parameter_checks(mp)
    y = mp._Y @ np.asarray(y_coords_in_y_basis, dtype=float)
    vals = np.zeros(samples, dtype=complex)
    for m in range(samples):
        phi = 2.0 * np.pi * m / samples
        vals[m] = mp.anchor(y, exp_b(mp, np.array([1.0]), phi))[0]
    return fit_trig(vals, max_mode)


def vector_field_on_base(mp: MatchedPair, y_coords, f: TrigPoly) -> TrigPoly:
    """The anchor field applied to f: alpha_y(phi) * df/dphi."""
    return anchor_trig(mp, y_coords) * f.derivative()


def poisson_bracket(mp: MatchedPair, f1, f2):
    """Bracket rules: {y1~, y2~} = [y1, y2]~, {y~, f} = anchor-derivative, {f, f} = 0."""
    if isinstance(f1, LinearFn) and isinstance(f2, LinearFn):
        br = mp.g.bracket_coords(mp._Y @ np.array(f1.y), mp._Y @ np.array(f2.y))
        return LinearFn.make(mp.c_coords(br))
    if isinstance(f1, LinearFn) and isinstance(f2, BaseFn):
        return BaseFn(vector_field_on_base(mp, np.array(f1.y), f2.f))
    if isinstance(f1, BaseFn) and isinstance(f2, LinearFn):
        return BaseFn((-1.0) * vector_field_on_base(mp, np.array(f2.y), f1.f))
    if isinstance(f1, BaseFn) and isinstance(f2, BaseFn):
        return BaseFn(TrigPoly())
    raise ValueError("unsupported function class for the Poisson evaluator")


def e2_plus_brackets(mp: MatchedPair) -> dict:
    """Brackets pushed to the rotation group double quotient via theta = 2 phi.

    Returns the three displayed brackets in the theta variable plus the
    (V1, V2) = (-ya~, y2~) relabelling.
    """
    circle_parameter_checks(mp)
    y_a = LinearFn.make([1.0, 0.0])
    y_2 = LinearFn.make([0.0, 1.0])
    e_theta = BaseFn(TrigPoly.mode(2))   # e^{i theta} = e^{2 i phi}
    lin = poisson_bracket(mp, y_a, y_2)
    br_a = poisson_bracket(mp, y_a, e_theta).f.halve_modes()
    br_2 = poisson_bracket(mp, y_2, e_theta).f.halve_modes()
    return {
        "lin_lin": lin,                       # expected 2 * y2~
        "a_base_theta": br_a,                 # expected 2 i sin(theta) e^{i theta}
        "two_base_theta": br_2,               # expected 2 i (1 - cos theta) e^{i theta}
        "relabel": {"V1": ("-", "ya"), "V2": ("+", "y2")},
        "omega": -2.0,
    }
