"""Deformed ladder-operator pairs and their biorthonormal eigenfamilies.

Two one-parameter deformations of the harmonic ladder pair (a, a†) are
provided:

* gauss-lowering:  A = a,            B = a† + 2*alpha*a
* gauss-raising:   A = a - 2*beta*a†, B = a†

Both satisfy [A, B] = 1 with B != A† for nonzero parameter.  The phi
family is B^n phi0 / sqrt(n!), the Psi family the analogous ladder on the
adjoint side; one side of each family is an ascending Gaussian series
that exists only inside the disk |parameter| < 1/2 and carries a
certified truncation tail bound.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import fock
from .fock import FockOperator, FockSpace, FockVector

__all__ = [
    "FamilyKind",
    "DeformationFamily",
    "PseudoBosonPair",
    "BiorthogonalSystem",
    "DiskViolationError",
    "build_pair",
    "vacuum_phi",
    "vacuum_psi",
    "phi_ladder",
    "psi_ladder",
    "phi_closed_form",
    "psi_series",
    "tail_bound_psi",
    "pairing_matrix",
    "build_system",
    "assumption_report",
    "AssumptionReport",
    "radius_scan",
    "SeriesClassification",
    "CONVERGENT",
    "DIVERGENT",
]

CONVERGENT = "convergent"
DIVERGENT = "divergent"


class DiskViolationError(ValueError):
    """Raised when a series-side construction is requested outside the
    |parameter| < 1/2 convergence disk."""


class FamilyKind(enum.Enum):
    GAUSS_LOWERING = "gauss-lowering"
    GAUSS_RAISING = "gauss-raising"


@dataclass(frozen=True)
class DeformationFamily:
    kind: FamilyKind
    parameter: complex = 0.0

    def __post_init__(self):
        p = complex(self.parameter)
        object.__setattr__(self, "parameter", p)
        if not (math.isfinite(p.real) and math.isfinite(p.imag)):
            raise ValueError("deformation parameter must be finite")

    @property
    def inside_disk(self) -> bool:
        return abs(self.parameter) < 0.5


@dataclass(frozen=True)
class PseudoBosonPair:
    family: DeformationFamily
    A: FockOperator
    B: FockOperator
    space: FockSpace


@dataclass(frozen=True)
class BiorthogonalSystem:
    """Paired families with their pairing matrix <Psi_n, phi_m> and the
    Riesz diagnostic sequence omega_n = ||phi_n|| * ||Psi_n||."""

    phis: tuple
    psis: tuple
    pairing: np.ndarray
    omega: np.ndarray

    @property
    def size(self) -> int:
        return len(self.phis)

    def pairing_defect(self) -> float:
        """Max entrywise deviation of the pairing matrix from the identity."""
        n = self.pairing.shape[0]
        return float(np.max(np.abs(self.pairing - np.eye(n))))


def build_pair(family: DeformationFamily, space: FockSpace) -> PseudoBosonPair:
    if space.factors != 1:
        raise ValueError("pairs are single-mode; lift to tensor spaces explicitly")
    a = fock.annihilator(space)
    ad = fock.creator(space)
    p = family.parameter
    if family.kind is FamilyKind.GAUSS_LOWERING:
        A = a
        B = fock.add(ad, fock.scale(a, 2 * p))
    else:
        A = fock.sub(a, fock.scale(ad, 2 * p))
        B = ad
    return PseudoBosonPair(family, A, B, space)


def _raising_series(space: FockSpace, n: int, c: complex) -> FockVector:
    """exp(c a†^2) Phi_n truncated at the space dimension, with a certified
    tail bound.  Caller enforces |c| < 1/2.  Coefficient magnitudes are
    accumulated in log domain; (2k+n)! is never materialized."""
    D = space.dim
    if not 0 <= n < D:
        raise ValueError(f"index {n} out of range for dim {D}")
    coeffs = np.zeros(D, dtype=complex)
    r = abs(c)
    theta = cmath.phase(c) if r > 0 else 0.0
    k_max = (D - 1 - n) // 2
    lg_n = math.lgamma(n + 1)
    for k in range(k_max + 1):
        if k > 0 and r == 0:
            break
        log_mag = 0.5 * (math.lgamma(n + 2 * k + 1) - lg_n) - math.lgamma(k + 1)
        if k > 0:
            log_mag += k * math.log(r)
        coeffs[n + 2 * k] = math.exp(log_mag) * cmath.exp(1j * k * theta)
    return FockVector(space, coeffs, tail_bound=_tail_or_inf(r, n, k_max))


def _raising_tail_sq(r: float, n: int, k_last: int) -> float:
    """Upper bound on the squared-norm tail sum_{k > k_last} r^{2k} (2k+n)!/(k!^2 n!).

    The term ratio r_k = r^2 (2k+n+1)(2k+n+2)/(k+1)^2 is monotone in k
    (decreasing for n >= 1, increasing towards 4 r^2 for n = 0), so
    q0 := max(r_{k_last}, 4 r^2) dominates every later ratio and the tail
    is bounded by the geometric series t_{k_last} * (q0 + q0^2 + ...).
    """
    if r == 0:
        return 0.0
    u = k_last + 1.0
    q0 = r * r * max(4.0, (2.0 + (n - 1) / u) * (2.0 + n / u))
    if q0 >= 1.0:
        raise DiskViolationError(
            f"truncation too small to reach the geometric regime "
            f"(bounding ratio {q0:.4f} >= 1 at k={k_last}, |parameter|={r})")
    log_t = (2 * k_last * math.log(r) - 2 * math.lgamma(k_last + 1)
             + math.lgamma(2 * k_last + n + 1) - math.lgamma(n + 1))
    return math.exp(log_t) * q0 / (1.0 - q0)


def _tail_or_inf(r: float, n: int, k_last: int) -> float:
    """Tail-norm certificate, or inf when the truncation ends before the
    geometric regime (near-boundary parameters with high n)."""
    try:
        return math.sqrt(_raising_tail_sq(r, n, max(k_last, 0)))
    except DiskViolationError:
        return math.inf


def _lowering_series(space: FockSpace, n: int, c: complex) -> FockVector:
    """exp(c a^2) Phi_n: an exact finite sum on {n, n-2, ...}."""
    D = space.dim
    if not 0 <= n < D:
        raise ValueError(f"index {n} out of range for dim {D}")
    coeffs = np.zeros(D, dtype=complex)
    lg_n = math.lgamma(n + 1)
    for k in range(n // 2 + 1):
        mag = math.exp(0.5 * (lg_n - math.lgamma(n - 2 * k + 1)) - math.lgamma(k + 1))
        coeffs[n - 2 * k] = (c ** k) * mag
        if c == 0:
            break
    return FockVector(space, coeffs, tail_bound=0.0)


def _require_disk(family: DeformationFamily, side: str):
    if not family.inside_disk:
        p = abs(family.parameter)
        raise DiskViolationError(
            f"{side} construction for {family.kind.value} needs |parameter| < 1/2; "
            f"got |parameter| = {p:g} (norm series term ratio tends to 4|p|^2 = {4 * p * p:g})")


def vacuum_phi(family: DeformationFamily, space: FockSpace) -> FockVector:
    """Kernel vector of A: Phi_0 for gauss-lowering, exp(beta a†^2) Phi_0
    (requires the disk) for gauss-raising."""
    if family.kind is FamilyKind.GAUSS_LOWERING:
        return fock.basis_state(space, 0)
    _require_disk(family, "phi vacuum")
    return _raising_series(space, 0, family.parameter)


def vacuum_psi(family: DeformationFamily, space: FockSpace) -> FockVector:
    """Kernel vector of B†: the descending exp(-conj(alpha) a†^2)-type series
    for gauss-lowering (requires the disk), Phi_0 for gauss-raising."""
    if family.kind is FamilyKind.GAUSS_RAISING:
        return fock.basis_state(space, 0)
    _require_disk(family, "Psi vacuum")
    return _raising_series(space, 0, -family.parameter.conjugate())


def phi_ladder(pair: PseudoBosonPair, n_max: int) -> list:
    """phi_n = B^n phi_0 / sqrt(n!) for n = 0..n_max, by repeated ladder
    application.  Tail bounds on the series side are refreshed from the
    closed-form remainder at each level."""
    if n_max > pair.space.dim - 2:
        raise ValueError(f"n_max {n_max} too large for trust band at dim {pair.space.dim}")
    vecs = [vacuum_phi(pair.family, pair.space)]
    raising_side = pair.family.kind is FamilyKind.GAUSS_RAISING
    for n in range(1, n_max + 1):
        nxt = fock.apply(pair.B, vecs[-1])
        coeffs = nxt.coeffs / math.sqrt(n)
        tail = 0.0
        if raising_side:
            tail = _tail_or_inf(abs(pair.family.parameter), n, (pair.space.dim - 1 - n) // 2)
        vecs.append(FockVector(pair.space, coeffs, tail_bound=tail))
    return vecs


def psi_ladder(pair: PseudoBosonPair, n_max: int) -> list:
    """Psi_n = (A†)^n Psi_0 / sqrt(n!), the adjoint-side ladder."""
    if n_max > pair.space.dim - 2:
        raise ValueError(f"n_max {n_max} too large for trust band at dim {pair.space.dim}")
    vecs = [vacuum_psi(pair.family, pair.space)]
    a_dag = fock.adjoint(pair.A)
    raising_side = pair.family.kind is FamilyKind.GAUSS_LOWERING
    for n in range(1, n_max + 1):
        nxt = fock.apply(a_dag, vecs[-1])
        coeffs = nxt.coeffs / math.sqrt(n)
        tail = 0.0
        if raising_side:
            tail = _tail_or_inf(abs(pair.family.parameter), n, (pair.space.dim - 1 - n) // 2)
        vecs.append(FockVector(pair.space, coeffs, tail_bound=tail))
    return vecs


def phi_closed_form(family: DeformationFamily, n: int, space: FockSpace) -> FockVector:
    """Closed-form phi_n: the finite descending Gaussian sum for
    gauss-lowering, the ascending series (inside the disk) for gauss-raising."""
    if family.kind is FamilyKind.GAUSS_LOWERING:
        return _lowering_series(space, n, family.parameter)
    _require_disk(family, "phi series")
    return _raising_series(space, n, family.parameter)


def psi_series(family: DeformationFamily, n: int, space: FockSpace) -> FockVector:
    """Closed-form Psi_n: ascending series (inside the disk) for
    gauss-lowering, exact finite descending sum for gauss-raising."""
    if family.kind is FamilyKind.GAUSS_LOWERING:
        _require_disk(family, "Psi series")
        return _raising_series(space, n, -family.parameter.conjugate())
    return _lowering_series(space, n, -family.parameter.conjugate())


def tail_bound_psi(family: DeformationFamily, n: int, space: FockSpace) -> float:
    """Certified bound on the squared-norm of the series tail discarded by
    the truncation (Psi side for gauss-lowering, phi side for gauss-raising)."""
    _require_disk(family, "tail bound")
    k_last = (space.dim - 1 - n) // 2
    if k_last < 0:
        raise ValueError(f"index {n} out of range for dim {space.dim}")
    return _raising_tail_sq(abs(family.parameter), n, k_last)


def pairing_matrix(phis, psis) -> BiorthogonalSystem:
    """Assemble the BiorthogonalSystem with pairing[n, m] = <Psi_n, phi_m>."""
    if len(phis) != len(psis):
        raise ValueError("phi and Psi lists must have equal length")
    if not phis:
        raise ValueError("empty family")
    size = len(phis)
    pairing = np.empty((size, size), dtype=complex)
    for i, psi in enumerate(psis):
        for j, phi in enumerate(phis):
            pairing[i, j] = fock.inner(psi, phi)
    omega = np.array([phi.norm() * psi.norm() for phi, psi in zip(phis, psis)])
    return BiorthogonalSystem(tuple(phis), tuple(psis), pairing, omega)


def build_system(family: DeformationFamily, space: FockSpace, n_max: int) -> BiorthogonalSystem:
    """Closed-form phi and Psi families up to n_max with their pairing."""
    phis = [phi_closed_form(family, n, space) for n in range(n_max + 1)]
    psis = [psi_series(family, n, space) for n in range(n_max + 1)]
    return pairing_matrix(phis, psis)


@dataclass(frozen=True)
class AssumptionReport:
    """Numerical evidence for the four structural assumptions.

    Assumption 1: A kills phi_0 and all ||B^n phi_0|| are finite.
    Assumption 2: B† kills Psi_0 and all ||(A†)^n Psi_0|| are finite.
    Assumption 3: finite-support probes are reconstructed from the family.
    Assumption 4 (Riesz): sup omega_n < infinity would be forced; sustained
    growth of omega_n is failure evidence.
    """

    family: DeformationFamily
    a1_vacuum_residual: float
    phi_norms: np.ndarray
    a2_vacuum_residual: float
    psi_norms: np.ndarray
    reconstruction_residuals: np.ndarray
    omega: np.ndarray

    @property
    def omega_growth(self) -> float:
        return float(self.omega[-1] / self.omega[0])

    @property
    def riesz_failure_evidence(self) -> bool:
        return self.omega_growth > 10.0


def assumption_report(family: DeformationFamily, space: FockSpace, n_max: int) -> AssumptionReport:
    pair = build_pair(family, space)
    phis = phi_ladder(pair, n_max)
    psis = psi_ladder(pair, n_max)

    a1 = fock.apply(pair.A, phis[0]).norm()
    a2 = fock.apply(fock.adjoint(pair.B), psis[0]).norm()
    phi_norms = np.array([v.norm() for v in phis])
    psi_norms = np.array([v.norm() for v in psis])
    omega = phi_norms * psi_norms

    # Finite-support probes: low basis states plus one fixed random vector.
    support = min(8, n_max)
    rng = np.random.default_rng(20101212)
    probes = [fock.basis_state(space, j) for j in range(support + 1)]
    coeffs = np.zeros(space.total_dim, dtype=complex)
    coeffs[: support + 1] = rng.standard_normal(support + 1) + 1j * rng.standard_normal(support + 1)
    coeffs /= np.linalg.norm(coeffs)
    probes.append(FockVector(space, coeffs))

    residuals = []
    for probe in probes:
        recon = np.zeros(space.total_dim, dtype=complex)
        for phi, psi in zip(phis, psis):
            recon += fock.inner(psi, probe) * phi.coeffs
        residuals.append(float(np.linalg.norm(probe.coeffs - recon)))

    return AssumptionReport(
        family=family,
        a1_vacuum_residual=a1,
        phi_norms=phi_norms,
        a2_vacuum_residual=a2,
        psi_norms=psi_norms,
        reconstruction_residuals=np.array(residuals),
        omega=omega,
    )


@dataclass(frozen=True)
class SeriesClassification:
    parameter: complex
    classification: str
    limit_ratio: float
    blow_up_index: int | None = None


def radius_scan(family: DeformationFamily, n: int, parameters) -> list:
    """Classify the norm series sum_k |p|^{2k} (2k+n)!/(k!^2 n!) for each
    parameter.

    The term ratio tends to 4|p|^2, so the series converges iff |p| < 1/2
    (at |p| = 1/2 the terms decay like 1/sqrt(pi k) and the sum still
    diverges).  For divergent parameters the blow-up index is the first
    term count at which the log-domain partial sum exceeds 1e12; near the
    boundary the partial sums grow too slowly to reach it and the index is
    left as None.
    """
    del family  # the classification depends on |parameter| only
    results = []
    blow_up_log = math.log(1e12)
    k_cap = 5000
    for p in parameters:
        r = abs(complex(p))
        limit_ratio = 4.0 * r * r
        if limit_ratio < 1.0:
            results.append(SeriesClassification(complex(p), CONVERGENT, limit_ratio))
            continue
        blow_up = None
        log_sum = 0.0  # k = 0 term is 1
        log_t = 0.0
        for k in range(1, k_cap + 1):
            log_t += 2 * math.log(r) + math.log(2 * k + n - 1) + math.log(2 * k + n) - 2 * math.log(k)
            log_sum = max(log_sum, log_t) + math.log1p(math.exp(-abs(log_sum - log_t)))
            if log_sum > blow_up_log:
                blow_up = k
                break
        results.append(SeriesClassification(complex(p), DIVERGENT, limit_ratio, blow_up))
    return results
