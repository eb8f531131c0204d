"""Hilbert-Schmidt geometry on spaces of square complex matrices.

Operators are plain ``numpy`` arrays of complex dtype. An operator subspace is
stored as a stack of Hilbert-Schmidt orthonormal matrices with shape
``(k, d, d)``; ``k == 0`` is a valid, empty subspace.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

#: exactness checks on closed-form constructions
STRUCTURAL_TOL = 1e-10
#: relative residual norm below which a Gram-Schmidt candidate is dropped
RANK_DROP_TOL = 1e-8


class DimensionError(ValueError):
    """Raised when operands have incompatible shapes."""


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-d array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


@dataclass(frozen=True)
class OperatorSubspace:
    """Orthonormal basis of a subspace of d x d operators."""

    basis: np.ndarray  # shape (k, d, d)

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=complex)
        if b.ndim != 3 or b.shape[1] != b.shape[2]:
            raise DimensionError(f"basis must have shape (k, d, d), got {b.shape}")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def d(self) -> int:
        return self.basis.shape[1]

    def __len__(self) -> int:
        return self.basis.shape[0]

    def __iter__(self):
        return iter(self.basis)

    @classmethod
    def empty(cls, d: int) -> "OperatorSubspace":
        return cls(np.zeros((0, d, d), dtype=complex))

    def gram(self) -> np.ndarray:
        v = self.vectors()
        return v.conj() @ v.T

    def vectors(self) -> np.ndarray:
        """Row-major flattening, one row per basis element."""
        return self.basis.reshape(len(self), self.d * self.d)

    def combine(self, coeffs) -> np.ndarray:
        """Return ``sum_i coeffs[i] * basis[i]``."""
        return np.tensordot(np.asarray(coeffs, dtype=complex), self.basis, axes=1)

    def project(self, m) -> np.ndarray:
        """Orthogonal projection of ``m`` onto the subspace."""
        m = as_matrix(m)
        if len(self) == 0:
            return np.zeros_like(m)
        coeffs = self.vectors().conj() @ m.ravel()
        return self.combine(coeffs)


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product ``Tr(a^dagger b)``."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def hs_norm(a) -> float:
    return float(np.linalg.norm(as_matrix(a)))


def gram_matrix(ops: Sequence[np.ndarray]) -> np.ndarray:
    """Matrix of pairwise inner products ``G[a, b] = Tr(U_a^dagger U_b)``."""
    if len(ops) == 0:
        return np.zeros((0, 0), dtype=complex)
    v = np.stack([as_matrix(u).ravel() for u in ops])
    return v.conj() @ v.T


def gram_schmidt_hs(generators: Iterable, tol: float = RANK_DROP_TOL, d: int | None = None) -> OperatorSubspace:
    """Orthonormalize operators with modified Gram-Schmidt plus one re-orthogonalization pass.

    Candidates whose residual norm falls below ``tol`` times their original
    norm are treated as linearly dependent and dropped.

    Parameters
    ----------
    generators : iterable of (d, d) arrays
    tol : float
        Relative drop tolerance.
    d : int, optional
        Operator dimension, needed only to build an empty result from an empty
        input.
    """
    gens = [as_matrix(g) for g in generators]
    if not gens:
        if d is None:
            raise DimensionError("empty generator list needs an explicit dimension")
        return OperatorSubspace.empty(d)
    shape = gens[0].shape
    if shape[0] != shape[1]:
        raise DimensionError(f"operators must be square, got {shape}")
    for g in gens:
        if g.shape != shape:
            raise DimensionError(f"shape mismatch: {g.shape} vs {shape}")

    basis: list[np.ndarray] = []
    for g in gens:
        scale = np.linalg.norm(g)
        if scale == 0.0:
            continue
        v = g.ravel().copy()
        for _ in range(2):
            for q in basis:
                v -= np.vdot(q, v) * q
        nrm = np.linalg.norm(v)
        if nrm < tol * scale:
            continue
        basis.append(v / nrm)
    n = shape[0]
    if not basis:
        return OperatorSubspace.empty(n)
    return OperatorSubspace(np.stack(basis).reshape(-1, n, n))


def matrix_units(d: int) -> list[np.ndarray]:
    units = []
    for j in range(d):
        for k in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[j, k] = 1.0
            units.append(e)
    return units


def orthogonal_complement(sub: OperatorSubspace) -> OperatorSubspace:
    """Orthonormal basis of the Hilbert-Schmidt complement of ``sub``."""
    d = sub.d
    k = len(sub)
    if k == d * d:
        return OperatorSubspace.empty(d)
    full = gram_schmidt_hs(list(sub.basis) + matrix_units(d), d=d)
    comp = full.basis[k:]
    if len(sub) + len(comp) != d * d:
        # the input was not orthonormal; orthonormalize it first and retry
        clean = gram_schmidt_hs(sub.basis, d=d)
        full = gram_schmidt_hs(list(clean.basis) + matrix_units(d), d=d)
        comp = full.basis[len(clean):]
    return OperatorSubspace(comp)


def singular_values(m) -> np.ndarray:
    """Singular values in non-increasing order."""
    return np.linalg.svd(as_matrix(m), compute_uv=False)


def projection_residual(a: OperatorSubspace, b: OperatorSubspace) -> float:
    """Largest norm of a basis element of either subspace left over after
    projecting onto the other one. Zero iff the spans coincide."""
    if a.d != b.d:
        raise DimensionError(f"dimension mismatch: {a.d} vs {b.d}")
    worst = 0.0
    for x, y in ((a, b), (b, a)):
        for m in x:
            worst = max(worst, hs_norm(m - y.project(m)))
    return worst
