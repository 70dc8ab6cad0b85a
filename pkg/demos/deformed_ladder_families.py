"""Walk through a deformed ladder pair and its biorthonormal families.

Builds the gauss-lowering pair (A, B) = (a, a† + 2 alpha a) on a truncated
Fock space, checks the commutator and the pairing matrix, and compares the
truncated vacuum norm against its closed form.
"""

import numpy as np

from pseudobosons import fock, pairs
from pseudobosons.fock import FockSpace
from pseudobosons.pairs import DeformationFamily, FamilyKind


def main():
    alpha = 0.3
    space = FockSpace(96)
    family = DeformationFamily(FamilyKind.GAUSS_LOWERING, alpha)
    pair = pairs.build_pair(family, space)

    comm = fock.commutator(pair.A, pair.B)
    print("commutator defect on the interior block:",
          fock.interior_defect(comm, fock.identity(space), 2))
    gap = np.max(np.abs(fock.adjoint(pair.A).matrix - pair.B.matrix))
    print("max |A† - B| (nonzero: the pair is not self-adjoint):", gap)

    system = pairs.build_system(family, space, 16)
    print("biorthonormality defect max |<Psi_n, phi_m> - delta|:",
          system.pairing_defect())

    psi0 = system.psis[0]
    closed = (1.0 - 4.0 * alpha * alpha) ** -0.5
    print("||Psi_0||^2 truncated:", psi0.norm() ** 2)
    print("closed form (1 - 4 alpha^2)^(-1/2):", closed)
    print("certified squared-norm tail bound:",
          pairs.tail_bound_psi(family, 0, space))

    print("omega_n = ||phi_n|| ||Psi_n|| for n = 0..16:")
    print(np.array2string(system.omega, precision=3))
    print("omega_16 / omega_0 =", system.omega[-1] / system.omega[0],
          "-> the families cannot form Riesz bases")

    for scan in pairs.radius_scan(family, 0, [0.1, 0.3, 0.49, 0.5, 0.55]):
        print(f"|parameter| = {abs(scan.parameter):.2f}: {scan.classification}"
              f" (limit term ratio {scan.limit_ratio:.3f})")


if __name__ == "__main__":
    main()
