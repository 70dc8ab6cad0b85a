"""No-go analysis for nonlinear ladder deformations.

For A = a - alpha a†^p with B = a† - beta (p >= 2), a formal kernel
vector of A has coefficients obeying

    c_{m+1} sqrt(m+1) = alpha c_{m-p} sqrt(m! / (m-p)!),

with c_1 = ... = c_p = 0, so the nonzero coefficients sit at multiples of
p + 1 and their squared magnitudes grow factorially: the norm series
converges only at alpha = 0.  The dual family A = a - alpha, B = a† -
beta a^m fails the adjoint-side vacuum condition through the same
recurrence with beta conjugated.  Coefficients are handled purely in log
domain; (3k)! and friends are never materialized.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import fock
from .fock import FockSpace
from .pairs import CONVERGENT, DIVERGENT

__all__ = [
    "NogoKind",
    "NogoFamily",
    "KernelRecurrence",
    "ClassifyResult",
    "NogoCommutatorReport",
    "solve_kernel",
    "classify",
    "nogo_commutator_check",
]


class NogoKind(enum.Enum):
    POWER_RAISING = "power-raising"       # A = a - alpha a†^p, B = a† - beta
    DUAL_POWER_LOWERING = "dual-power-lowering"  # A = a - alpha, B = a† - beta a^m


@dataclass(frozen=True)
class NogoFamily:
    """Nonlinear deformation family.  For POWER_RAISING, ``alpha`` is the
    a†^power coefficient and ``beta`` a constant shift in B; for
    DUAL_POWER_LOWERING, ``beta`` is the a^power coefficient and ``alpha``
    a constant shift in A."""

    kind: NogoKind
    power: int
    alpha: complex = 0.0
    beta: complex = 0.0

    def __post_init__(self):
        if self.power < 2:
            raise ValueError("the no-go analysis needs power >= 2 "
                             "(power 1 is a benign linear deformation)")
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))

    @property
    def recurrence_parameter(self) -> complex:
        """The scalar driving the kernel recurrence: alpha for the raising
        family, conj(beta) for the dual (adjoint-side) family."""
        if self.kind is NogoKind.POWER_RAISING:
            return self.alpha
        return self.beta.conjugate()


@dataclass(frozen=True)
class KernelRecurrence:
    """Log-domain trace of the formal kernel vector coefficients.

    ``indices[k]`` is the basis index of the k-th nonzero coefficient
    (multiples of power+1), ``log_sq_coeffs[k]`` is log |c|^2 there, and
    ``ratios[k]`` the successive squared-magnitude ratio."""

    family: NogoFamily
    indices: np.ndarray
    log_sq_coeffs: np.ndarray
    ratios: np.ndarray
    classification: str
    blow_up_index: int | None


def solve_kernel(family: NogoFamily, k_max: int,
                 blow_up_threshold: float = 1e12) -> KernelRecurrence:
    """First ``k_max`` nonzero kernel coefficients (plus c_0 = 1) in log
    domain, with the squared-ratio trace and the blow-up index of the
    log-domain norm partial sums."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    p = family.power
    param = family.recurrence_parameter
    r = abs(param)
    step = p + 1

    if r == 0:
        return KernelRecurrence(family, np.array([0]), np.array([0.0]),
                                np.array([]), CONVERGENT, None)

    indices = np.arange(k_max + 1) * step
    log_sq = np.empty(k_max + 1)
    ratios = np.empty(k_max)
    log_sq[0] = 0.0
    log_sum = 0.0
    blow_up = None
    log_threshold = math.log(blow_up_threshold)
    for k in range(k_max):
        j, j_next = k * step, (k + 1) * step
        log_ratio = (2 * math.log(r)
                     + math.lgamma(j_next) - math.lgamma(j + 1)
                     - math.log(j_next))
        ratios[k] = math.exp(log_ratio) if log_ratio < 700 else math.inf
        log_sq[k + 1] = log_sq[k] + log_ratio
        log_sum = max(log_sum, log_sq[k + 1]) + math.log1p(
            math.exp(-abs(log_sum - log_sq[k + 1])))
        if blow_up is None and log_sum > log_threshold:
            blow_up = k + 1
    return KernelRecurrence(family, indices, log_sq, ratios, DIVERGENT, blow_up)


@dataclass(frozen=True)
class ClassifyResult:
    classification: str
    crossing_index: int | None  # first k with squared-term ratio > 1
    blow_up_index: int | None
    limit_unbounded: bool       # the ratio keeps increasing past the crossing


def classify(rec: KernelRecurrence) -> ClassifyResult:
    """Certify the norm-series classification from the exact ratio trace.

    Divergence requires the squared-term ratio to exceed 1 from some index
    onward with an increasing trend; for the p = 2 family the ratio is
    |alpha|^2 (3k+1)(3k+2)/(3k+3), unbounded in k.  Raises if the computed
    window ends before the ratio crossing.
    """
    if rec.classification == CONVERGENT:
        return ClassifyResult(CONVERGENT, None, None, False)
    if len(rec.ratios) < 10:
        raise ValueError("need at least 10 recurrence terms for the ratio trend")
    above = np.nonzero(rec.ratios > 1.0)[0]
    if above.size == 0:
        r = abs(rec.family.recurrence_parameter)
        p = rec.family.power
        estimate = math.ceil((1.0 / r ** 2) ** (1.0 / (p - 1)) / (p + 1))
        raise ValueError(
            f"inconclusive window: no ratio crossing within {len(rec.ratios)} terms; "
            f"the crossing is expected near k = {estimate}")
    crossing = int(above[0])
    tail = rec.ratios[crossing:]
    increasing = bool(np.all(np.diff(tail) > 0))
    return ClassifyResult(DIVERGENT, crossing, rec.blow_up_index, increasing)


@dataclass(frozen=True)
class NogoCommutatorReport:
    commutator_defect: float  # interior defect of [A, B] against the identity
    adjoint_gap: float        # max entrywise |A† - B|


def nogo_commutator_check(family: NogoFamily, space: FockSpace) -> NogoCommutatorReport:
    """Confirm [A, B] = 1 on the interior while A† != B: the pseudo-bosonic
    commutator survives the nonlinear deformation even though the vacuum
    assumptions fail."""
    if space.factors != 1:
        raise ValueError("the no-go families are single-mode")
    p = family.power
    a = fock.annihilator(space)
    ad = fock.creator(space)
    one = fock.identity(space)
    power_op = ad if family.kind is NogoKind.POWER_RAISING else a
    nonlinear = one
    for _ in range(p):
        nonlinear = fock.compose(nonlinear, power_op)
    if family.kind is NogoKind.POWER_RAISING:
        A = fock.sub(a, fock.scale(nonlinear, family.alpha))
        B = fock.sub(ad, fock.scale(one, family.beta))
    else:
        A = fock.sub(a, fock.scale(one, family.alpha))
        B = fock.sub(ad, fock.scale(nonlinear, family.beta))
    defect = fock.interior_defect(fock.commutator(A, B), one, p + 1)
    gap = float(np.max(np.abs(fock.adjoint(A).matrix - B.matrix)))
    return NogoCommutatorReport(defect, gap)
