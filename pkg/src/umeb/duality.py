"""Operator <-> state correspondence and Schmidt data.

A bipartite pure state on C^d (x) C^d is a length ``d*d`` complex vector whose
entry ``j*d + k`` is the amplitude of ``|j, k>``. An operator ``U`` acts on the
second factor: ``|U> = (I (x) U)|Phi>``, so ``amplitude(j, k) = U[k, j] / sqrt(d)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.stats import unitary_group

from .opspace import as_matrix

NORM_TOL = 1e-10
ME_TOL = 1e-8


class NormalizationError(ValueError):
    pass


@dataclass(frozen=True)
class SchmidtData:
    coefficients: np.ndarray
    entropy_bits: float

    def rank(self, tol: float = 1e-10) -> int:
        return int(np.sum(self.coefficients > tol))


class EntanglementCheck(NamedTuple):
    is_maximal: bool
    deviation: float

    def __bool__(self):
        return self.is_maximal


def local_dim(state) -> int:
    n = np.asarray(state).size
    d = int(round(np.sqrt(n)))
    if d * d != n:
        raise ValueError(f"state length {n} is not a perfect square")
    return d


def as_state(state) -> np.ndarray:
    s = np.asarray(state, dtype=complex).ravel()
    local_dim(s)
    return s


def coefficient_matrix(state) -> np.ndarray:
    """``C[j, k]`` = amplitude of ``|j, k>``."""
    s = as_state(state)
    d = local_dim(s)
    return s.reshape(d, d)


def max_entangled_reference(d: int) -> np.ndarray:
    """``|Phi> = sum_j |j, j> / sqrt(d)``."""
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    return np.eye(d, dtype=complex).ravel() / np.sqrt(d)


def embed_operator(u, tol: float = NORM_TOL) -> np.ndarray:
    """Map ``U`` to ``(I (x) U)|Phi>``; requires ``Tr(U^dagger U) = d``."""
    u = as_matrix(u)
    d = u.shape[0]
    if u.shape != (d, d):
        raise ValueError(f"operator must be square, got {u.shape}")
    norm2 = float(np.vdot(u, u).real)
    if abs(norm2 - d) > tol * d:
        raise NormalizationError(f"Tr(U^dagger U) = {norm2!r}, expected {d}")
    return u.T.ravel() / np.sqrt(d)


def extract_operator(state) -> np.ndarray:
    """Inverse of :func:`embed_operator`."""
    c = coefficient_matrix(state)
    return np.sqrt(c.shape[0]) * c.T


def _entropy_bits(probs: np.ndarray) -> float:
    p = probs[probs > 0]
    return float(max(0.0, -np.sum(p * np.log2(p))))


def schmidt(state) -> SchmidtData:
    c = np.linalg.svd(coefficient_matrix(state), compute_uv=False)
    return SchmidtData(coefficients=c, entropy_bits=_entropy_bits(c**2))


def is_maximally_entangled(state, tol: float = ME_TOL) -> EntanglementCheck:
    """Check that every Schmidt coefficient equals ``1/sqrt(d)`` within ``tol``.

    The returned tuple is truthy on success and carries the largest deviation.
    """
    s = as_state(state)
    d = local_dim(s)
    coeffs = schmidt(s).coefficients
    dev = float(np.max(np.abs(coeffs - 1.0 / np.sqrt(d))))
    return EntanglementCheck(dev <= tol, dev)


def swap_factors(state) -> np.ndarray:
    return coefficient_matrix(state).T.ravel().copy()


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary."""
    return unitary_group.rvs(d, random_state=rng)


def random_state(d: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal(d * d) + 1j * rng.standard_normal(d * d)
    return z / np.linalg.norm(z)
