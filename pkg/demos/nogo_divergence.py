"""Why nonlinear ladder deformations admit no normalizable vacuum.

For A = a - alpha a†^2 the kernel recurrence places nonzero coefficients
at indices 0, 3, 6, ... with squared magnitudes whose successive ratios
grow without bound, so the norm series diverges for every alpha != 0.
The commutator [A, B] = 1 still holds: the failure is in the vacuum
assumption, not the algebra.
"""

import math

import numpy as np

from pseudobosons import fock, nogo
from pseudobosons.fock import FockSpace
from pseudobosons.nogo import NogoFamily, NogoKind


def main():
    family = NogoFamily(NogoKind.POWER_RAISING, 2, alpha=0.3)

    rep = nogo.nogo_commutator_check(family, FockSpace(32))
    print("commutator defect:", rep.commutator_defect,
          " adjoint gap:", rep.adjoint_gap)

    rec = nogo.solve_kernel(family, 60)
    print("first kernel coefficients |c_j| at j = 0, 3, 6, 9:")
    for k in range(4):
        print(f"  j = {rec.indices[k]}: {math.exp(0.5 * rec.log_sq_coeffs[k]):.6f}")
    print("squared-term ratios r_k (crossing 1 seals the divergence):")
    print(np.array2string(rec.ratios[:12], precision=3))

    result = nogo.classify(rec)
    print("classification:", result.classification,
          " ratio crossing at k =", result.crossing_index,
          " norm partial sums pass 1e12 at k =", result.blow_up_index)

    # brute-force cross-check: null vector of the truncated kernel matrix
    dim = 40
    space = FockSpace(dim)
    ad = fock.creator(space)
    A = fock.sub(fock.annihilator(space),
                 fock.scale(fock.compose(ad, ad), 0.3))
    _, _, vh = np.linalg.svd(A.matrix[: dim - 1, :])
    null = vh[-1] / vh[-1][0]
    print("truncated-kernel null vector agrees at j = 3:",
          abs(null[3]), "vs", math.exp(0.5 * rec.log_sq_coeffs[1]))


if __name__ == "__main__":
    main()
