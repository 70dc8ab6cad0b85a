"""End-to-end acceptance suite.

Each test covers one numbered criterion, prints a single PASS/FAIL line,
and asserts at the frozen tolerance.  Shared heavy objects (the D = 96
biorthogonal systems) are built once per module.
"""

import math

import numpy as np
import pytest

from pseudobosons import fock, intertwine, landau, nogo, pairs
from pseudobosons.fock import FockSpace, FockVector
from pseudobosons.intertwine import FrameSide
from pseudobosons.nogo import NogoFamily, NogoKind
from pseudobosons.pairs import (
    CONVERGENT,
    DIVERGENT,
    DeformationFamily,
    FamilyKind,
)

GL = FamilyKind.GAUSS_LOWERING
GR = FamilyKind.GAUSS_RAISING


def report(number, label, passed):
    print(f"criterion {number:2d} ({label}): {'PASS' if passed else 'FAIL'}")
    assert passed, f"criterion {number} ({label}) failed"


@pytest.fixture(scope="module")
def gl_system():
    return pairs.build_system(DeformationFamily(GL, 0.3), FockSpace(96), 24)


@pytest.fixture(scope="module")
def gr_system():
    return pairs.build_system(DeformationFamily(GR, 0.2), FockSpace(96), 16)


def test_criterion_01_commutators():
    space = FockSpace(64)
    one = fock.identity(space)
    worst = 0.0
    for kind in (GL, GR):
        for p in (0.0, 0.15, 0.3, 0.45):
            pair = pairs.build_pair(DeformationFamily(kind, p), space)
            comm = fock.commutator(pair.A, pair.B)
            worst = max(worst, fock.interior_defect(comm, one, 2))
    nogo_worst = 0.0
    for p in (2, 3):
        fam = NogoFamily(NogoKind.POWER_RAISING, p, alpha=0.5)
        rep = nogo.nogo_commutator_check(fam, space)
        nogo_worst = max(nogo_worst, rep.commutator_defect)
    report(1, "commutator suite", worst <= 1e-12 and nogo_worst <= 1e-12)


def test_criterion_02_biorthonormality(gl_system, gr_system):
    single = max(gl_system.pairing_defect(), gr_system.pairing_defect())
    model = landau.build_model(48, 0.3, 0.2)
    two = landau.two_index_family(model, 6, 6).pairing_defect()
    report(2, "biorthonormality", single <= 1e-10 and two <= 1e-9)


def test_criterion_03_spectra(gl_system, gr_system):
    worst_phi = 0.0
    worst_psi = 0.0
    space = FockSpace(96)
    for fam, system in ((DeformationFamily(GL, 0.3), gl_system),
                        (DeformationFamily(GR, 0.2), gr_system)):
        pair = pairs.build_pair(fam, space)
        h = fock.add(fock.compose(pair.B, pair.A),
                     fock.scale(fock.identity(space), 0.5))
        h_adj = fock.adjoint(h)
        for n in range(17):
            worst_phi = max(worst_phi, landau.eigen_residual(
                h, system.phis[n], n + 0.5, margin=2))
            worst_psi = max(worst_psi, landau.eigen_residual(
                h_adj, system.psis[n], n + 0.5, margin=2))
    report(3, "deformed spectra", worst_phi <= 1e-9 and worst_psi <= 1e-8)


def test_criterion_04_coordinate_form():
    model = landau.build_model(24, 0.3, 0.2)
    worst = max(landau.coordinate_form_defect(model, 1, 4),
                landau.coordinate_form_defect(model, 2, 4))
    report(4, "coordinate-form identity", worst <= 1e-10)


def test_criterion_05_norm_closed_form():
    space = FockSpace(96)
    ok = True
    for alpha in (0.1, 0.2, 0.3):
        fam = DeformationFamily(GL, alpha)
        tail = pairs.tail_bound_psi(fam, 0, space)
        trunc = pairs.psi_series(fam, 0, space).norm() ** 2
        closed = (1.0 - 4.0 * alpha * alpha) ** -0.5
        # the certified tail is far below the float summation noise, so the
        # comparison carries a machine-rounding allowance
        ok = ok and tail <= 1e-10 and abs(trunc - closed) <= tail + 1e-12
        if alpha == 0.3:
            ok = ok and abs(closed - 1.25) <= 1e-15 and abs(trunc - 1.25) <= 1e-12
    report(5, "vacuum norm closed form", ok)


def test_criterion_06_convergence_disk():
    fam = DeformationFamily(GL, 0.0)
    results = pairs.radius_scan(fam, 0, [0.1, 0.3, 0.45, 0.49, 0.5, 0.55, 1.0])
    labels = [r.classification for r in results]
    report(6, "convergence disk", labels == [CONVERGENT] * 4 + [DIVERGENT] * 3)


def test_criterion_07_nogo_recurrence():
    rec = nogo.solve_kernel(NogoFamily(NogoKind.POWER_RAISING, 2, alpha=1.0), 10)
    mags = np.exp(0.5 * rec.log_sq_coeffs)
    ok = (abs(mags[1] - math.sqrt(6.0) / 3.0) <= 1e-10 * mags[1]
          and abs(mags[2] - math.sqrt(720.0) / 18.0) <= 1e-10 * mags[2])

    for alpha, k_max in ((0.01, 3400), (0.1, 100), (1.0, 20)):
        fam = NogoFamily(NogoKind.POWER_RAISING, 2, alpha=alpha)
        result = nogo.classify(nogo.solve_kernel(fam, k_max))
        bound = math.ceil(1.0 / (3.0 * alpha * alpha)) + 5
        ok = ok and result.classification == DIVERGENT
        ok = ok and result.crossing_index <= bound
    zero = nogo.classify(nogo.solve_kernel(
        NogoFamily(NogoKind.POWER_RAISING, 2, alpha=0.0), 10))
    ok = ok and zero.classification == CONVERGENT

    # brute force: null vector of the truncated kernel matrix at D = 40
    alpha, dim = 0.3, 40
    space = FockSpace(dim)
    ad = fock.creator(space)
    A = fock.sub(fock.annihilator(space),
                 fock.scale(fock.compose(ad, ad), alpha))
    _, _, vh = np.linalg.svd(A.matrix[: dim - 1, :])
    null = vh[-1].conj()
    null = null / null[0]
    rec = nogo.solve_kernel(NogoFamily(NogoKind.POWER_RAISING, 2, alpha=alpha),
                            (dim - 1) // 3)
    for k, idx in enumerate(rec.indices):
        expected = math.exp(0.5 * rec.log_sq_coeffs[k])
        ok = ok and abs(abs(null[idx]) - expected) <= 1e-8 * expected
    report(7, "no-go kernel recurrence", ok)


def test_criterion_08_single_index_incompleteness():
    ok = True
    for alpha in (0.0, 0.15, 0.3):
        for beta in (0.0, 0.15, 0.3):
            model = landau.build_model(32, alpha, beta)
            rep = landau.single_index_counterexample(model, 12)
            ok = ok and rep.max_overlap <= 1e-9 and rep.f_norm >= 1.0
    report(8, "2D incompleteness counterexample", ok)


def test_criterion_09_frames_and_intertwining(gl_system):
    space = FockSpace(96)
    fam = DeformationFamily(GL, 0.3)
    pair = pairs.build_pair(fam, space)
    s_phi = intertwine.frame_operator(gl_system, FrameSide.PHI, 24)
    s_psi = intertwine.frame_operator(gl_system, FrameSide.PSI, 24)

    herm = max(intertwine.hermiticity_defect(s_phi),
               intertwine.hermiticity_defect(s_psi))
    min_eig = min(intertwine.smallest_eigenvalue(s_phi),
                  intertwine.smallest_eigenvalue(s_psi))

    action = 0.0
    itw = 0.0
    for n in range(13):
        res = intertwine.frame_action_check(s_phi, s_psi, gl_system, n)
        action = max(action, res.phi_residual, res.psi_residual,
                     res.roundtrip_residual)
        res2 = intertwine.intertwining_check(gl_system, pair, 24, n, margin=2)
        itw = max(itw, res2.psi_side, res2.phi_side, res2.eigen_residual)

    rng = np.random.default_rng(20101212)
    coeffs = np.zeros(96, dtype=complex)
    coeffs[:9] = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    coeffs /= np.linalg.norm(coeffs)
    probes = [fock.basis_state(space, j) for j in range(9)]
    probes.append(FockVector(space, coeffs))
    recon = max(intertwine.resolution_check(gl_system, probe, 24).phi_expansion
                for probe in probes)

    report(9, "frames and intertwining",
           herm <= 1e-12 and min_eig >= -1e-10 and action <= 1e-9
           and itw <= 1e-9 and recon <= 1e-9)


def test_criterion_10_riesz_failure_evidence(gl_system):
    omega = gl_system.omega
    nondecreasing = bool(np.all(omega[2:] >= omega[:-2] * (1.0 - 1e-12)))
    growth = float(omega[24] / omega[0])
    lam4 = intertwine.largest_eigenvalue(
        intertwine.frame_operator(gl_system, FrameSide.PHI, 4))
    lam24 = intertwine.largest_eigenvalue(
        intertwine.frame_operator(gl_system, FrameSide.PHI, 24))
    report(10, "Riesz-failure evidence",
           nondecreasing and growth >= 10.0 and lam24 >= 10.0 * lam4)
