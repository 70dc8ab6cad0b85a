"""Truncated frame operators and the intertwining identities.

S_phi = sum_n |phi_n><phi_n| and S_Psi = sum_n |Psi_n><Psi_n| are built
from a BiorthogonalSystem up to a finite order.  On the family span these
truncated frames invert each other, map one family onto the other, and
intertwine the number-type operators N = B A and its adjoint.  All checks
are restricted to the span / to finite-support probes, where they hold
exactly in truncation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import fock
from .fock import FockOperator, FockVector
from .pairs import BiorthogonalSystem, PseudoBosonPair

__all__ = [
    "FrameSide",
    "FrameOperator",
    "frame_operator",
    "largest_eigenvalue",
    "smallest_eigenvalue",
    "hermiticity_defect",
    "FrameActionResiduals",
    "frame_action_check",
    "ResolutionResiduals",
    "resolution_check",
    "IntertwiningResiduals",
    "intertwining_check",
]


class FrameSide(enum.Enum):
    PHI = "phi"
    PSI = "psi"


@dataclass(frozen=True)
class FrameOperator:
    matrix: FockOperator
    order: int
    side: FrameSide
    # Column matrix V of the family vectors, so matrix = V V†.  Spectral
    # diagnostics go through the singular values of V: the eigenvalues of
    # V V† are exactly nonnegative there, while eigvalsh noise scales with
    # the (possibly huge) frame norm and can dip below zero.
    factor: np.ndarray = None

    def eigenvalues(self) -> np.ndarray:
        """All eigenvalues, ascending: squared singular values of the
        factor padded with the exact zeros of the rank-deficient part."""
        sq = np.sort(np.linalg.svd(self.factor, compute_uv=False)) ** 2
        dim = self.matrix.space.total_dim
        return np.concatenate([np.zeros(dim - sq.size), sq])

    def apply(self, coeffs: np.ndarray) -> np.ndarray:
        """Apply through the factored form V (V† w), which keeps the
        rounding at the scale of the family coefficients rather than the
        formed matrix entries."""
        return self.factor @ (self.factor.conj().T @ coeffs)


def frame_operator(system: BiorthogonalSystem, side: FrameSide, order: int) -> FrameOperator:
    """Rank-(order+1) frame sum of outer products, numerically Hermitized
    by averaging with its adjoint to strip 1e-16-scale asymmetry."""
    if order >= system.size:
        raise ValueError(f"order {order} exceeds available family size {system.size}")
    vecs = system.phis if side is FrameSide.PHI else system.psis
    space = vecs[0].space
    factor = np.column_stack([v.coeffs for v in vecs[: order + 1]])
    mat = factor @ factor.conj().T
    mat = 0.5 * (mat + mat.conj().T)
    return FrameOperator(FockOperator(space, mat), order, side, factor)


def hermiticity_defect(frame: FrameOperator) -> float:
    m = frame.matrix.matrix
    return float(np.max(np.abs(m - m.conj().T)))


def largest_eigenvalue(frame: FrameOperator) -> float:
    return float(frame.eigenvalues()[-1])


def smallest_eigenvalue(frame: FrameOperator) -> float:
    return float(frame.eigenvalues()[0])


@dataclass(frozen=True)
class FrameActionResiduals:
    phi_residual: float      # ||S_phi Psi_n - phi_n|| / ||phi_n||
    psi_residual: float      # ||S_Psi phi_n - Psi_n|| / ||Psi_n||
    roundtrip_residual: float  # ||S_Psi S_phi Psi_n - Psi_n|| / ||Psi_n||


def frame_action_check(s_phi: FrameOperator, s_psi: FrameOperator,
                       system: BiorthogonalSystem, n: int) -> FrameActionResiduals:
    """S_phi Psi_n = phi_n, S_Psi phi_n = Psi_n, and the roundtrip showing
    the two frames invert each other on the family span.  Residuals are
    relative to the target norms (the frame entries grow with the order)."""
    if n > min(s_phi.order, s_psi.order):
        raise ValueError("index n exceeds the frame order")
    phi, psi = system.phis[n], system.psis[n]
    mapped_phi = s_phi.apply(psi.coeffs)
    mapped_psi = s_psi.apply(phi.coeffs)
    roundtrip = s_psi.apply(mapped_phi)
    return FrameActionResiduals(
        float(np.linalg.norm(mapped_phi - phi.coeffs)) / phi.norm(),
        float(np.linalg.norm(mapped_psi - psi.coeffs)) / psi.norm(),
        float(np.linalg.norm(roundtrip - psi.coeffs)) / psi.norm(),
    )


@dataclass(frozen=True)
class ResolutionResiduals:
    phi_expansion: float  # ||probe - sum <Psi_n, probe> phi_n||
    psi_expansion: float  # ||probe - sum <phi_n, probe> Psi_n||


def resolution_check(system: BiorthogonalSystem, probe: FockVector,
                     order: int) -> ResolutionResiduals:
    """Expansion residuals of a finite-support probe over the family.

    For the gauss-lowering family the phi expansion terminates (the
    inverse Gaussian maps finite support to finite support), so the
    residual vanishes once the order covers the probe support; the
    mirrored expansion converges only as the order grows and is reported,
    not asserted.
    """
    if order >= system.size:
        raise ValueError(f"order {order} exceeds available family size {system.size}")
    phi_sum = np.zeros_like(probe.coeffs)
    psi_sum = np.zeros_like(probe.coeffs)
    for n in range(order + 1):
        phi_sum += fock.inner(system.psis[n], probe) * system.phis[n].coeffs
        psi_sum += fock.inner(system.phis[n], probe) * system.psis[n].coeffs
    return ResolutionResiduals(
        float(np.linalg.norm(probe.coeffs - phi_sum)),
        float(np.linalg.norm(probe.coeffs - psi_sum)),
    )


@dataclass(frozen=True)
class IntertwiningResiduals:
    psi_side: float   # ||S_Psi N phi_n - N† S_Psi phi_n|| / (n ||Psi_n||), interior
    phi_side: float   # ||N S_phi Psi_n - S_phi N† Psi_n|| / (n ||phi_n||), interior
    eigen_residual: float  # ||N phi_n - n phi_n|| / ||phi_n||


def intertwining_check(system: BiorthogonalSystem, pair: PseudoBosonPair,
                       order: int, n: int, margin: int = 2) -> IntertwiningResiduals:
    """S_Psi N = N† S_Psi and N S_phi = S_phi N† on the family span, with
    N = B A.  Residuals are relative and restricted to the interior block
    (the raising part of N† contaminates the top boundary rows of
    truncated series vectors)."""
    if n > order - 1:
        raise ValueError("need n <= order - 1 so N phi_n stays inside the span")
    s_phi = frame_operator(system, FrameSide.PHI, order)
    s_psi = frame_operator(system, FrameSide.PSI, order)
    n_op = fock.compose(pair.B, pair.A)
    frak = fock.adjoint(n_op)
    space = pair.space
    mask = space.interior_mask(margin)

    phi, psi = system.phis[n], system.psis[n]
    scale_psi = max(n, 1) * max(psi.norm(), 1.0)
    scale_phi = max(n, 1) * max(phi.norm(), 1.0)

    lhs1 = s_psi.apply(n_op.matrix @ phi.coeffs)
    rhs1 = frak.matrix @ s_psi.apply(phi.coeffs)
    lhs2 = n_op.matrix @ s_phi.apply(psi.coeffs)
    rhs2 = s_phi.apply(frak.matrix @ psi.coeffs)

    eig = float(np.linalg.norm(n_op.matrix @ phi.coeffs - n * phi.coeffs)) / phi.norm()
    return IntertwiningResiduals(
        float(np.linalg.norm((lhs1 - rhs1)[mask])) / scale_psi,
        float(np.linalg.norm((lhs2 - rhs2)[mask])) / scale_phi,
        eig,
    )
