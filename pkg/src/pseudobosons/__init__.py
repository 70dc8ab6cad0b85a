"""Numerical pseudo-boson toolkit on truncated Fock spaces.

Deformed ladder pairs with [A, B] = 1 and B != A†, their biorthonormal
eigenfamilies and frame operators, the non-self-adjoint Landau-level
Hamiltonians they diagonalize, and the divergence analysis showing that
nonlinear ladder deformations admit no normalizable vacuum.
"""

from . import cli, fock, intertwine, landau, nogo, pairs

__all__ = ["fock", "pairs", "landau", "intertwine", "nogo", "cli"]
__version__ = "0.1.0"
