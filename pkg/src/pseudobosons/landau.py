"""Landau-level structure on the two-factor truncated space.

The composite space carries two commuting ladder pairs (one per tensor
factor), quadrature operators Q_k, P_k, the oscillator Hamiltonians
H_k = A_k† A_k + 1/2, and their non-self-adjoint deformations
h_1(alpha), h_2(beta) obtained from the gauss-lowering / gauss-raising
pairs.  Also here: the single-index incompleteness counterexample and the
two-index biorthonormal family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import fock, pairs
from .fock import FockOperator, FockSpace, FockVector
from .pairs import BiorthogonalSystem, DeformationFamily, FamilyKind, PseudoBosonPair

__all__ = [
    "QuadratureFrame",
    "LandauModel",
    "CounterexampleReport",
    "build_quadratures",
    "hamiltonian",
    "build_model",
    "lift",
    "deformed_hamiltonian",
    "coordinate_form_defect",
    "eigen_residual",
    "single_index_counterexample",
    "two_index_family",
    "swap_factors",
]


def lift(op: FockOperator, factor: int) -> FockOperator:
    """Lift a single-mode operator to the two-factor space by tensoring
    with the identity on the other factor."""
    one = fock.identity(op.space)
    if factor == 1:
        return fock.tensor(op, one)
    if factor == 2:
        return fock.tensor(one, op)
    raise ValueError("factor must be 1 or 2")


@dataclass(frozen=True)
class QuadratureFrame:
    """Canonical pairs (Q1, P1), (Q2, P2) on the composite space, with the
    planar coordinates recoverable as x = Q2 - P1, y = Q1 - P2,
    p_x = (Q1 + P2)/2, p_y = (Q2 + P1)/2."""

    space: FockSpace
    q1: FockOperator
    p1: FockOperator
    q2: FockOperator
    p2: FockOperator

    @property
    def x(self) -> FockOperator:
        return fock.sub(self.q2, self.p1)

    @property
    def y(self) -> FockOperator:
        return fock.sub(self.q1, self.p2)

    @property
    def px(self) -> FockOperator:
        return fock.scale(fock.add(self.q1, self.p2), 0.5)

    @property
    def py(self) -> FockOperator:
        return fock.scale(fock.add(self.q2, self.p1), 0.5)


def build_quadratures(space: FockSpace) -> QuadratureFrame:
    """Q_k = (A_k + A_k†)/sqrt(2), P_k = (A_k - A_k†)/(i sqrt(2))."""
    if space.factors != 2:
        raise ValueError("quadratures live on the two-factor space")
    mode = FockSpace(space.dim, factors=1)
    a = fock.annihilator(mode)
    ad = fock.creator(mode)
    s = 1.0 / math.sqrt(2.0)
    q = fock.scale(fock.add(a, ad), s)
    p = fock.scale(fock.sub(a, ad), -1j * s)
    return QuadratureFrame(space, lift(q, 1), lift(p, 1), lift(q, 2), lift(p, 2))


def hamiltonian(space: FockSpace, k: int) -> FockOperator:
    """H_k = A_k† A_k + 1/2, diagonal with entries n + 1/2 on factor k."""
    if space.factors != 2:
        raise ValueError("hamiltonian lives on the two-factor space")
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    mode = FockSpace(space.dim, factors=1)
    h = FockOperator(mode, np.diag(np.arange(space.dim) + 0.5), trust_margin=0)
    return lift(h, k)


@dataclass(frozen=True)
class LandauModel:
    """The deformed two-mode model: gauss-lowering pair (alpha) on factor 1,
    gauss-raising pair (beta) on factor 2, both lifted to the composite
    space."""

    space: FockSpace
    mode_space: FockSpace
    alpha: complex
    beta: complex
    pair1: PseudoBosonPair
    pair2: PseudoBosonPair
    A1: FockOperator
    B1: FockOperator
    A2: FockOperator
    B2: FockOperator


def build_model(per_factor_dim: int, alpha: complex, beta: complex) -> LandauModel:
    mode = FockSpace(per_factor_dim, factors=1)
    space = FockSpace(per_factor_dim, factors=2)
    fam1 = DeformationFamily(FamilyKind.GAUSS_LOWERING, alpha)
    fam2 = DeformationFamily(FamilyKind.GAUSS_RAISING, beta)
    pair1 = pairs.build_pair(fam1, mode)
    pair2 = pairs.build_pair(fam2, mode)
    return LandauModel(
        space=space,
        mode_space=mode,
        alpha=complex(alpha),
        beta=complex(beta),
        pair1=pair1,
        pair2=pair2,
        A1=lift(pair1.A, 1),
        B1=lift(pair1.B, 1),
        A2=lift(pair2.A, 2),
        B2=lift(pair2.B, 2),
    )


def deformed_hamiltonian(model: LandauModel, which: int) -> FockOperator:
    """h_1(alpha) = B1 A1 + 1/2 or h_2(beta) = B2 A2 + 1/2 on the composite
    space."""
    if which == 1:
        ba = fock.compose(model.B1, model.A1)
    elif which == 2:
        ba = fock.compose(model.B2, model.A2)
    else:
        raise ValueError("which must be 1 or 2")
    return fock.add(ba, fock.scale(fock.identity(model.space), 0.5))


def coordinate_form_defect(model: LandauModel, which: int, margin: int) -> float:
    """Interior defect between B A + 1/2 and its quadratic quadrature form:

        h_1 = (1/2 + a) Q1^2 + (1/2 - a) P1^2 + 2i a Q1 P1 + a
        h_2 = (1/2 - b) Q2^2 + (1/2 + b) P2^2 + 2i b Q2 P2 + b

    checked as an exact operator identity in the quadrature algebra.
    """
    frame = build_quadratures(model.space)
    if which == 1:
        q, p, c = frame.q1, frame.p1, model.alpha
        half_plus, half_minus = 0.5 + c, 0.5 - c
    elif which == 2:
        q, p, c = frame.q2, frame.p2, model.beta
        half_plus, half_minus = 0.5 - c, 0.5 + c
    else:
        raise ValueError("which must be 1 or 2")
    form = fock.add(
        fock.add(fock.scale(fock.compose(q, q), half_plus),
                 fock.scale(fock.compose(p, p), half_minus)),
        fock.add(fock.scale(fock.compose(q, p), 2j * c),
                 fock.scale(fock.identity(model.space), c)),
    )
    return fock.interior_defect(deformed_hamiltonian(model, which), form, margin)


def eigen_residual(op: FockOperator, vec: FockVector, eigenvalue: complex,
                   margin: int = 0) -> float:
    """Relative residual ||op v - lambda v|| / ||v|| restricted to the
    interior block (boundary rows of series-side vectors are
    truncation-contaminated)."""
    image = fock.apply(op, vec)
    target = FockVector(vec.space, eigenvalue * vec.coeffs)
    return fock.interior_residual(image, target, margin) / vec.norm()


@dataclass(frozen=True)
class CounterexampleReport:
    """Overlaps of the antisymmetric-type vector f with the single-index
    family eta_n; max_overlap staying at zero while ||f|| >= 1 witnesses
    the incompleteness of any single-index construction."""

    max_overlap: float
    f_norm: float
    overlaps: np.ndarray


def single_index_counterexample(model: LandauModel, n_max: int) -> CounterexampleReport:
    """Build eta_n = Y^n phi_00 / sqrt(n!) for Y = (B1 + B2)/sqrt(2) and
    f = Psi1 (x) Psi0 - Psi0 (x) Psi1; report max_n |<f, eta_n>| and ||f||."""
    fam1 = model.pair1.family
    fam2 = model.pair2.family
    if not fam1.inside_disk:
        raise pairs.DiskViolationError("counterexample needs |alpha| < 1/2 for the Psi side")

    phi00 = fock.tensor_vec(pairs.vacuum_phi(fam1, model.mode_space),
                            pairs.vacuum_phi(fam2, model.mode_space))
    psi1_0 = pairs.psi_series(fam1, 0, model.mode_space)
    psi1_1 = pairs.psi_series(fam1, 1, model.mode_space)
    psi2_0 = pairs.psi_series(fam2, 0, model.mode_space)
    psi2_1 = pairs.psi_series(fam2, 1, model.mode_space)
    f = FockVector(model.space,
                   np.kron(psi1_1.coeffs, psi2_0.coeffs) - np.kron(psi1_0.coeffs, psi2_1.coeffs))

    y_op = fock.scale(fock.add(model.B1, model.B2), 1.0 / math.sqrt(2.0))
    overlaps = np.empty(n_max + 1)
    eta = phi00
    overlaps[0] = abs(fock.inner(f, eta))
    for n in range(1, n_max + 1):
        eta = FockVector(model.space, (y_op.matrix @ eta.coeffs) / math.sqrt(n))
        overlaps[n] = abs(fock.inner(f, eta))
    return CounterexampleReport(float(np.max(overlaps)), f.norm(), overlaps)


def two_index_family(model: LandauModel, n_max: int, m_max: int) -> BiorthogonalSystem:
    """Two-index families phi_{n,m} = phi_n^(1) (x) phi_m^(2) and the
    analogous Psi_{n,m}, with pairing over the lexicographic (n, m) order."""
    fam1 = model.pair1.family
    fam2 = model.pair2.family
    phis1 = [pairs.phi_closed_form(fam1, n, model.mode_space) for n in range(n_max + 1)]
    psis1 = [pairs.psi_series(fam1, n, model.mode_space) for n in range(n_max + 1)]
    phis2 = [pairs.phi_closed_form(fam2, m, model.mode_space) for m in range(m_max + 1)]
    psis2 = [pairs.psi_series(fam2, m, model.mode_space) for m in range(m_max + 1)]
    phis = [fock.tensor_vec(p1, p2) for p1 in phis1 for p2 in phis2]
    psis = [fock.tensor_vec(s1, s2) for s1 in psis1 for s2 in psis2]
    return pairs.pairing_matrix(phis, psis)


def swap_factors(op: FockOperator) -> FockOperator:
    """Conjugate an operator by the tensor-factor swap permutation."""
    if op.space.factors != 2:
        raise ValueError("swap_factors needs a two-factor operator")
    d = op.space.dim
    perm = np.arange(d * d).reshape(d, d).T.ravel()
    return FockOperator(op.space, op.matrix[np.ix_(perm, perm)], trust_margin=op.trust_margin)
