"""Global tolerances and numerical knobs, overridable per run."""

from __future__ import annotations

from dataclasses import dataclass, replace

#: Residual tolerance for identities built from exact arithmetic on catalog data.
ALGEBRAIC_TOL = 1e-9
#: Residual tolerance for finite-difference cross-checks.
FD_TOL = 1e-6
#: Central-difference step used together with one Richardson step.
FD_STEP = 1e-4
#: Singular values below this count as zero in kernel computations.
SVD_TOL = 1e-8
#: Largest p for which the su(p,1) family is constructed.
P_CAP = 4
#: Scale of the inner product on the symmetric part used by the twist element:
#: inner(u, v) = TWIST_INNER_SCALE * Re tr(uv).  Pinned by the Maurer-Cartan
#: equation of the twist; see the conventions report.
TWIST_INNER_SCALE = 0.5

PRNG_NAME = "numpy PCG64"
EXP_METHOD = "scipy.linalg.expm (Pade scaling-and-squaring)"


@dataclass(frozen=True)
class Tolerances:
    algebraic: float = ALGEBRAIC_TOL
    fd: float = FD_TOL
    fd_step: float = FD_STEP
    svd: float = SVD_TOL
    twist_inner_scale: float = TWIST_INNER_SCALE

    def override(self, **kw) -> "Tolerances":
        return replace(self, **kw)


DEFAULT_TOL = Tolerances()
