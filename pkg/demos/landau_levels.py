"""Two-factor model: deformed Landau-level Hamiltonians and the
single-index counterexample.

h_1(alpha) = B1 A1 + 1/2 and h_2(beta) = B2 A2 + 1/2 keep the n + 1/2
spectrum of the oscillator Hamiltonians while becoming non-self-adjoint,
and each equals an explicit quadratic form in the quadratures.  A
two-index family diagonalizes both; no single-index family can span the
space, which the antisymmetric witness f makes concrete.
"""

from pseudobosons import fock, landau


def main():
    model = landau.build_model(24, 0.3, 0.2)

    print("coordinate-form defect h_1:",
          landau.coordinate_form_defect(model, 1, margin=4))
    print("coordinate-form defect h_2:",
          landau.coordinate_form_defect(model, 2, margin=4))

    system = landau.two_index_family(model, 4, 4)
    print("two-index biorthonormality defect:", system.pairing_defect())

    h1 = landau.deformed_hamiltonian(model, 1)
    h2 = landau.deformed_hamiltonian(model, 2)
    print("eigen residuals of phi_{n,m} under (h_1, h_2):")
    for n in range(3):
        for m in range(3):
            vec = system.phis[n * 5 + m]
            r1 = landau.eigen_residual(h1, vec, n + 0.5, margin=4)
            r2 = landau.eigen_residual(h2, vec, m + 0.5, margin=4)
            print(f"  (n, m) = ({n}, {m}): {r1:.2e}, {r2:.2e}")

    report = landau.single_index_counterexample(model, 12)
    print("witness norm ||f|| =", report.f_norm)
    print("max_n |<f, eta_n>| =", report.max_overlap,
          "-> f is invisible to every single-index family")

    h1_swapped = landau.swap_factors(landau.hamiltonian(model.space, 1))
    gap = abs(h1_swapped.matrix - landau.hamiltonian(model.space, 2).matrix).max()
    print("factor-swap symmetry of the oscillator Hamiltonians:", gap)


if __name__ == "__main__":
    main()
