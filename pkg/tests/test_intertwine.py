import math

import numpy as np
import pytest

from pseudobosons import fock, intertwine, pairs
from pseudobosons.fock import FockSpace, FockVector
from pseudobosons.intertwine import FrameSide
from pseudobosons.pairs import DeformationFamily, FamilyKind

GL = FamilyKind.GAUSS_LOWERING
GR = FamilyKind.GAUSS_RAISING


def gl_system(dim=96, n_max=24, alpha=0.3):
    return pairs.build_system(DeformationFamily(GL, alpha), FockSpace(dim), n_max)


def test_undeformed_frame_is_projector():
    system = pairs.build_system(DeformationFamily(GL, 0.0), FockSpace(16), 7)
    s = intertwine.frame_operator(system, FrameSide.PHI, 7)
    expected = np.zeros((16, 16))
    expected[:8, :8] = np.eye(8)
    assert np.max(np.abs(s.matrix.matrix - expected)) == 0.0
    eigs = s.eigenvalues()
    assert np.allclose(eigs, [0.0] * 8 + [1.0] * 8)
    assert intertwine.largest_eigenvalue(s) == pytest.approx(1.0)
    assert intertwine.smallest_eigenvalue(s) == 0.0


def test_frame_matrix_matches_outer_product_sum():
    system = gl_system(dim=32, n_max=6)
    s = intertwine.frame_operator(system, FrameSide.PSI, 6)
    direct = np.zeros((32, 32), dtype=complex)
    for n in range(7):
        v = system.psis[n].coeffs
        direct += np.outer(v, v.conj())
    assert np.max(np.abs(s.matrix.matrix - direct)) <= 1e-12 * np.max(np.abs(direct))


def test_frame_hermitian_and_psd():
    system = gl_system()
    for side in FrameSide:
        s = intertwine.frame_operator(system, side, 24)
        assert intertwine.hermiticity_defect(s) <= 1e-12
        assert intertwine.smallest_eigenvalue(s) >= -1e-10


def test_frame_trace_matches_eigenvalue_sum():
    system = gl_system(dim=48, n_max=10)
    s = intertwine.frame_operator(system, FrameSide.PSI, 10)
    trace = float(np.trace(s.matrix.matrix).real)
    assert sum(s.eigenvalues()) == pytest.approx(trace, rel=1e-12)


def test_frame_action_maps_families_onto_each_other():
    system = gl_system()
    s_phi = intertwine.frame_operator(system, FrameSide.PHI, 24)
    s_psi = intertwine.frame_operator(system, FrameSide.PSI, 24)
    for n in range(13):
        res = intertwine.frame_action_check(s_phi, s_psi, system, n)
        assert res.phi_residual <= 1e-9
        assert res.psi_residual <= 1e-9
        assert res.roundtrip_residual <= 1e-9


def test_frame_action_index_guard():
    system = gl_system(dim=32, n_max=6)
    s_phi = intertwine.frame_operator(system, FrameSide.PHI, 6)
    s_psi = intertwine.frame_operator(system, FrameSide.PSI, 6)
    with pytest.raises(ValueError):
        intertwine.frame_action_check(s_phi, s_psi, system, 7)


def test_resolution_hand_expansion():
    # Phi_2 = phi_2 - alpha sqrt(2) phi_0 for the gauss-lowering family,
    # so the phi expansion of Phi_2 terminates at order 2
    space = FockSpace(32)
    system = pairs.build_system(DeformationFamily(GL, 0.3), space, 8)
    probe = fock.basis_state(space, 2)
    res = intertwine.resolution_check(system, probe, 2)
    assert res.phi_expansion <= 1e-14
    manual = (system.phis[2].coeffs - 0.3 * math.sqrt(2.0) * system.phis[0].coeffs)
    assert np.max(np.abs(manual - probe.coeffs)) <= 1e-14


def test_resolution_random_finite_support_probe():
    space = FockSpace(96)
    system = pairs.build_system(DeformationFamily(GL, 0.3), space, 16)
    rng = np.random.default_rng(7)
    coeffs = np.zeros(96, dtype=complex)
    coeffs[:9] = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    coeffs /= np.linalg.norm(coeffs)
    res = intertwine.resolution_check(system, FockVector(space, coeffs), 16)
    assert res.phi_expansion <= 1e-9


def test_resolution_order_guard():
    system = gl_system(dim=32, n_max=4)
    with pytest.raises(ValueError):
        intertwine.resolution_check(system, fock.basis_state(FockSpace(32), 0), 5)


def test_intertwining_residuals():
    space = FockSpace(96)
    fam = DeformationFamily(GL, 0.3)
    system = pairs.build_system(fam, space, 24)
    pair = pairs.build_pair(fam, space)
    for n in range(13):
        res = intertwine.intertwining_check(system, pair, 24, n, margin=2)
        assert res.psi_side <= 1e-9
        assert res.phi_side <= 1e-9
        assert res.eigen_residual <= 1e-9


def test_intertwining_undeformed_is_exact():
    space = FockSpace(32)
    fam = DeformationFamily(GL, 0.0)
    system = pairs.build_system(fam, space, 10)
    pair = pairs.build_pair(fam, space)
    res = intertwine.intertwining_check(system, pair, 10, 4, margin=2)
    assert res.psi_side <= 1e-14
    assert res.phi_side <= 1e-14
    assert res.eigen_residual == 0.0


def test_intertwining_index_guard():
    space = FockSpace(32)
    fam = DeformationFamily(GL, 0.2)
    system = pairs.build_system(fam, space, 8)
    pair = pairs.build_pair(fam, space)
    with pytest.raises(ValueError):
        intertwine.intertwining_check(system, pair, 8, 8)


def test_frame_eigenvalue_growth_with_order():
    system = gl_system()
    lam4 = intertwine.largest_eigenvalue(
        intertwine.frame_operator(system, FrameSide.PHI, 4))
    lam24 = intertwine.largest_eigenvalue(
        intertwine.frame_operator(system, FrameSide.PHI, 24))
    assert lam24 >= 10.0 * lam4


def test_frame_order_guard():
    system = gl_system(dim=32, n_max=4)
    with pytest.raises(ValueError):
        intertwine.frame_operator(system, FrameSide.PHI, 5)
