"""Based vector spaces, exterior-square values, seeded sampling and finite differences.

Everything downstream works over small labelled real coordinate spaces; this
module fixes the wedge/pairing conventions once:

    <x ^ y, phi (x) psi> = phi(x) psi(y) - psi(x) phi(y)

so a wedge is stored as the antisymmetric matrix x (x) y - y (x) x and pairing
with a 2-tensor is full coefficient contraction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np


class SpaceMismatchError(ValueError):
    """Operands live over different based spaces."""


@dataclass(frozen=True)
class BasedSpace:
    dim: int
    labels: tuple[str, ...]

    def __post_init__(self):
        if self.dim <= 0:
            raise ValueError("dim must be positive")
        if len(self.labels) != self.dim:
            raise ValueError("labels length must equal dim")
        if len(set(self.labels)) != self.dim:
            raise ValueError("labels must be unique")

    @staticmethod
    def make(labels: Sequence[str]) -> "BasedSpace":
        return BasedSpace(len(labels), tuple(labels))


def _check_same_space(a, b):
    if a.space != b.space:
        raise SpaceMismatchError(f"space mismatch: {a.space.labels} vs {b.space.labels}")


@dataclass(frozen=True, eq=False)
class Vec:
    space: BasedSpace
    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float)
        if c.shape != (self.space.dim,):
            raise ValueError(f"coords shape {c.shape} does not match dim {self.space.dim}")
        object.__setattr__(self, "coords", c)


@dataclass(frozen=True, eq=False)
class Tensor2:
    space: BasedSpace
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        n = self.space.dim
        if c.shape != (n, n):
            raise ValueError(f"coeffs shape {c.shape} does not match ({n}, {n})")
        object.__setattr__(self, "coeffs", c)


@dataclass(frozen=True, eq=False)
class Bivector:
    """Element of the exterior square, stored as an antisymmetric coefficient matrix."""

    space: BasedSpace
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        n = self.space.dim
        if c.shape != (n, n):
            raise ValueError(f"coeffs shape {c.shape} does not match ({n}, {n})")
        # antisymmetrize at construction so the invariant holds exactly
        c = 0.5 * (c - c.T)
        object.__setattr__(self, "coeffs", c)

    def __add__(self, other: "Bivector") -> "Bivector":
        _check_same_space(self, other)
        return Bivector(self.space, self.coeffs + other.coeffs)

    def __sub__(self, other: "Bivector") -> "Bivector":
        _check_same_space(self, other)
        return Bivector(self.space, self.coeffs - other.coeffs)

    def __rmul__(self, scalar: float) -> "Bivector":
        return Bivector(self.space, float(scalar) * self.coeffs)

    def max_norm(self) -> float:
        return float(np.max(np.abs(self.coeffs)))


def wedge(x: Vec, y: Vec) -> Bivector:
    """x ^ y as the antisymmetric tensor x (x) y - y (x) x."""
    _check_same_space(x, y)
    return Bivector(x.space, np.outer(x.coords, y.coords) - np.outer(y.coords, x.coords))


def wedge_coords(space: BasedSpace, x: np.ndarray, y: np.ndarray) -> Bivector:
    return Bivector(space, np.outer(x, y) - np.outer(y, x))


def pair_tensor(t: Bivector | Tensor2, f: Tensor2) -> float:
    """Full contraction sum_ij t_ij f_ij under the duality pairing."""
    if t.coeffs.shape != f.coeffs.shape:
        raise SpaceMismatchError(
            f"tensor shapes differ: {t.coeffs.shape} vs {f.coeffs.shape}")
    return float(np.sum(t.coeffs * f.coeffs))


def finite_diff(curve: Callable[[float], np.ndarray], t0: float, h: float) -> np.ndarray:
    """Central difference with one Richardson extrapolation step: (4 D_{h/2} - D_h)/3."""
    if h <= 0:
        raise ValueError("h must be positive")

    def central(step):
        return (np.asarray(curve(t0 + step)) - np.asarray(curve(t0 - step))) / (2.0 * step)

    d_h = central(h)
    d_h2 = central(h / 2.0)
    return (4.0 * d_h2 - d_h) / 3.0


@dataclass
class Rng:
    """Deterministic 64-bit generator (numpy PCG64) with a recorded seed."""

    seed: int
    _gen: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def uniform(self, low: float, high: float, size=None):
        return self._gen.uniform(low, high, size)

    def integers(self, low: int, high: int) -> int:
        return int(self._gen.integers(low, high))


def sample_vec(rng: Rng, space: BasedSpace, radius: float) -> Vec:
    """Coordinates i.i.d. uniform in [-radius, radius]; deterministic given the seed."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if radius == 0:
        return Vec(space, np.zeros(space.dim))
    return Vec(space, rng.uniform(-radius, radius, space.dim))
