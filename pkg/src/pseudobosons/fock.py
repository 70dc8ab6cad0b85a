"""Truncated Fock-space core: number basis, ladder operators, dense algebra.

Everything lives on a D-dimensional truncation of the number basis
(D^d for d tensor factors).  Ladder matrices are exact except near the
truncation boundary; the contaminated band is tracked through a
``trust_margin`` on each operator, and identity checks restrict to the
interior block via :func:`interior_defect`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "FockSpace",
    "FockVector",
    "FockOperator",
    "annihilator",
    "creator",
    "identity",
    "basis_state",
    "apply",
    "compose",
    "add",
    "sub",
    "scale",
    "adjoint",
    "commutator",
    "inner",
    "norm",
    "tensor",
    "tensor_vec",
    "interior_defect",
    "interior_residual",
]


@dataclass(frozen=True)
class FockSpace:
    """Truncated number-state space: ``factors`` copies of a D-level mode.

    The composite index of the two-factor state (n, m) is n*dim + m
    (first factor varies slowest).
    """

    dim: int
    factors: int = 1

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError(f"dim must be >= 2, got {self.dim}")
        if self.factors not in (1, 2):
            raise ValueError(f"factors must be 1 or 2, got {self.factors}")

    @property
    def total_dim(self) -> int:
        return self.dim ** self.factors

    def composite_index(self, index) -> int:
        """Flatten a multi-index (int or tuple of per-factor ints)."""
        if np.isscalar(index):
            index = (int(index),)
        index = tuple(int(i) for i in index)
        if len(index) != self.factors:
            raise ValueError(f"expected {self.factors} index components, got {len(index)}")
        flat = 0
        for i in index:
            if not 0 <= i < self.dim:
                raise ValueError(f"index component {i} out of range [0, {self.dim})")
            flat = flat * self.dim + i
        return flat

    def interior_mask(self, margin: int) -> np.ndarray:
        """Boolean mask of composite indices whose every factor index is
        below dim - margin (the truncation-clean block)."""
        if margin < 0:
            raise ValueError("margin must be nonnegative")
        if margin >= self.dim:
            raise ValueError(f"margin {margin} leaves no interior at dim {self.dim}")
        keep = np.arange(self.dim) < self.dim - margin
        mask = keep
        for _ in range(self.factors - 1):
            mask = np.kron(mask, keep)
        return mask.astype(bool)


@dataclass(frozen=True)
class FockVector:
    """Coefficient vector in the (composite) number basis.

    ``tail_bound`` is a certified upper bound on the norm of the discarded
    infinite tail; 0 means the represented vector is supported entirely
    below the truncation.  It is a certificate attached by series
    constructors; generic arithmetic carries it through unchanged.
    """

    space: FockSpace
    coeffs: np.ndarray
    tail_bound: float = 0.0

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        object.__setattr__(self, "coeffs", c)
        if c.shape != (self.space.total_dim,):
            raise ValueError(f"coefficient length {c.shape} does not match space dim {self.space.total_dim}")
        if self.tail_bound < 0:
            raise ValueError("tail_bound must be nonnegative")

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))


@dataclass(frozen=True)
class FockOperator:
    """Dense operator on a truncated Fock space.

    Rows/columns within ``trust_margin`` of the boundary band are
    truncation-contaminated; identity checks should exclude them.
    """

    space: FockSpace
    matrix: np.ndarray
    trust_margin: int = 0

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", m)
        n = self.space.total_dim
        if m.shape != (n, n):
            raise ValueError(f"matrix shape {m.shape} does not match space dim {n}")
        if not 0 <= self.trust_margin < n:
            raise ValueError(f"trust_margin {self.trust_margin} out of range")

    # Thin arithmetic sugar; the module-level functions are the real API.
    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __mul__(self, c):
        return scale(self, c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, FockVector):
            return apply(self, other)
        return compose(self, other)


def _require_same_space(a, b):
    if a.space != b.space:
        raise ValueError("operands live on different Fock spaces")


def annihilator(space: FockSpace) -> FockOperator:
    """Lowering operator a, entry sqrt(n) at (n-1, n).  Exact under truncation."""
    if space.factors != 1:
        raise ValueError("annihilator is single-mode; build multi-mode operators via tensor")
    offdiag = np.sqrt(np.arange(1, space.dim))
    return FockOperator(space, np.diag(offdiag, 1), trust_margin=0)


def creator(space: FockSpace) -> FockOperator:
    """Raising operator a†.  The top state is killed by truncation, so one
    boundary row is contaminated."""
    if space.factors != 1:
        raise ValueError("creator is single-mode; build multi-mode operators via tensor")
    offdiag = np.sqrt(np.arange(1, space.dim))
    return FockOperator(space, np.diag(offdiag, -1), trust_margin=1)


def identity(space: FockSpace) -> FockOperator:
    return FockOperator(space, np.eye(space.total_dim), trust_margin=0)


def basis_state(space: FockSpace, index) -> FockVector:
    """Unit coordinate vector at the given (multi-)index."""
    coeffs = np.zeros(space.total_dim, dtype=complex)
    coeffs[space.composite_index(index)] = 1.0
    return FockVector(space, coeffs, tail_bound=0.0)


def apply(op: FockOperator, vec: FockVector) -> FockVector:
    _require_same_space(op, vec)
    return FockVector(op.space, op.matrix @ vec.coeffs, tail_bound=vec.tail_bound)


def compose(op1: FockOperator, op2: FockOperator) -> FockOperator:
    """Matrix product op1 @ op2; the contaminated band grows additively."""
    _require_same_space(op1, op2)
    return FockOperator(op1.space, op1.matrix @ op2.matrix,
                        trust_margin=min(op1.trust_margin + op2.trust_margin,
                                         op1.space.total_dim - 1))


def add(op1: FockOperator, op2: FockOperator) -> FockOperator:
    _require_same_space(op1, op2)
    return FockOperator(op1.space, op1.matrix + op2.matrix,
                        trust_margin=max(op1.trust_margin, op2.trust_margin))


def sub(op1: FockOperator, op2: FockOperator) -> FockOperator:
    _require_same_space(op1, op2)
    return FockOperator(op1.space, op1.matrix - op2.matrix,
                        trust_margin=max(op1.trust_margin, op2.trust_margin))


def scale(op: FockOperator, c: complex) -> FockOperator:
    return FockOperator(op.space, c * op.matrix, trust_margin=op.trust_margin)


def adjoint(op: FockOperator) -> FockOperator:
    return FockOperator(op.space, op.matrix.conj().T, trust_margin=op.trust_margin)


def commutator(op1: FockOperator, op2: FockOperator) -> FockOperator:
    return sub(compose(op1, op2), compose(op2, op1))


def inner(u: FockVector, v: FockVector) -> complex:
    """Scalar product, conjugate-linear in the first argument."""
    _require_same_space(u, v)
    return complex(np.vdot(u.coeffs, v.coeffs))


def norm(v: FockVector) -> float:
    return v.norm()


def tensor(op_a: FockOperator, op_b: FockOperator) -> FockOperator:
    """Kronecker product under the n*D + m composite-index convention."""
    if op_a.space.factors != 1 or op_b.space.factors != 1:
        raise ValueError("tensor expects single-factor operands")
    if op_a.space.dim != op_b.space.dim:
        raise ValueError("tensor factors must share the per-factor dimension")
    space = FockSpace(op_a.space.dim, factors=2)
    return FockOperator(space, np.kron(op_a.matrix, op_b.matrix),
                        trust_margin=max(op_a.trust_margin, op_b.trust_margin))


def tensor_vec(u: FockVector, v: FockVector) -> FockVector:
    if u.space.factors != 1 or v.space.factors != 1:
        raise ValueError("tensor_vec expects single-factor operands")
    if u.space.dim != v.space.dim:
        raise ValueError("tensor factors must share the per-factor dimension")
    space = FockSpace(u.space.dim, factors=2)
    # ||u (x) v - u0 (x) v0|| <= tu*||v|| + tv*||u|| + tu*tv for tails tu, tv.
    tail = u.tail_bound * v.norm() + v.tail_bound * u.norm() + u.tail_bound * v.tail_bound
    return FockVector(space, np.kron(u.coeffs, v.coeffs), tail_bound=tail)


def interior_defect(op: FockOperator, expected: FockOperator, margin: int) -> float:
    """Max absolute entrywise deviation over the truncation-clean block.

    The interior excludes every row/column with some factor index within
    ``margin`` of the boundary.
    """
    _require_same_space(op, expected)
    mask = op.space.interior_mask(margin)
    block = (op.matrix - expected.matrix)[np.ix_(mask, mask)]
    if block.size == 0:
        raise ValueError("margin leaves an empty interior block")
    return float(np.max(np.abs(block)))


def interior_residual(u: FockVector, v: FockVector, margin: int = 0) -> float:
    """Norm of u - v restricted to the interior block."""
    _require_same_space(u, v)
    mask = u.space.interior_mask(margin)
    return float(np.linalg.norm((u.coeffs - v.coeffs)[mask]))
