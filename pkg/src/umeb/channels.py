"""Complement states and the channels they define.

Choi convention: ``rho = (I (x) L)(|Phi><Phi|)``, so that the embedded state
of a unitary ``U`` is the Choi state of ``X -> U X U^dagger`` and

    L(X) = d * Tr_A[(X^T (x) I) rho].

``Tr_B rho = I/d`` is trace preservation, ``Tr_A rho = I/d`` is unitality.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constructions import CertificationError, UmebCandidate, icosahedron_umeb
from .duality import extract_operator
from .opspace import OperatorSubspace, as_matrix, gram_schmidt_hs, projection_residual
from .optimize import OptimizerConfig, best_of, multistart
from .verifier import EVIDENCE, PROOF, complement_of, gram_check, max_entanglement_in_subspace, skew_certificate, subspace_is_skew

SUPPORT_TOL = 1e-10


def bipartite_dim(rho) -> int:
    n = np.asarray(rho).shape[0]
    d = int(round(np.sqrt(n)))
    if d * d != n:
        raise ValueError(f"dimension {n} is not a square")
    return d


def check_density(rho, tol: float = 1e-10) -> np.ndarray:
    rho = as_matrix(rho)
    if rho.shape[0] != rho.shape[1]:
        raise CertificationError(f"density matrix must be square, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise CertificationError("density matrix is not Hermitian")
    tr = np.trace(rho)
    if abs(tr - 1) > tol:
        raise CertificationError(f"trace is {tr!r}, expected 1")
    lo = float(np.linalg.eigvalsh(rho).min())
    if lo < -tol:
        raise CertificationError(f"negative eigenvalue {lo:.3g}")
    return rho


def complement_state(candidate: UmebCandidate) -> np.ndarray:
    """Normalized projector onto the orthogonal complement of the embedded states."""
    d, n = candidate.d, candidate.n
    if n >= d * d:
        raise ValueError("a full basis has an empty complement")
    report = gram_check(candidate)
    if not report.passes():
        raise CertificationError(f"candidate fails the Gram check: {report}")
    states = candidate.states()
    proj = np.eye(d * d) - states.T @ states.conj()
    return proj / (d * d - n)


def marginals(rho) -> tuple[np.ndarray, np.ndarray]:
    """Reduced states ``(rho_A, rho_B) = (Tr_B rho, Tr_A rho)``."""
    rho = as_matrix(rho)
    d = bipartite_dim(rho)
    t = rho.reshape(d, d, d, d)
    return np.einsum("ikjk->ij", t), np.einsum("kikj->ij", t)


def entropy_bits(rho) -> float:
    evals = np.linalg.eigvalsh(as_matrix(rho))
    p = evals[evals > 1e-15]
    return float(max(0.0, -np.sum(p * np.log2(p))))


def asymptotic_eoa(rho) -> float:
    """Regularized entanglement of assistance, ``min(S(rho_A), S(rho_B))`` in bits."""
    ra, rb = marginals(rho)
    return min(entropy_bits(ra), entropy_bits(rb))


@dataclass(frozen=True)
class EoaBound:
    bits: float
    tag: str  # PROOF or EVIDENCE


def one_copy_eoa_upper_bound(candidate: UmebCandidate, cfg=None) -> EoaBound:
    """Upper bound on the one-copy entanglement of assistance of the complement state.

    Any decomposition of the complement state uses pure states from its
    range, so the largest entanglement found there bounds the average. A skew
    complement in odd ``d`` has Schmidt coefficients in equal pairs with one
    zero, which caps the entropy at ``log2(d - 1)`` exactly.
    """
    if candidate.n == candidate.d**2:
        return EoaBound(0.0, PROOF)
    comp = complement_of(candidate)
    if skew_certificate(candidate, comp):
        return EoaBound(float(np.log2(candidate.d - 1)), PROOF)
    results = multistart(comp, OptimizerConfig.from_mapping(cfg), "entropy")
    return EoaBound(best_of(results)[1].value, EVIDENCE)


def channel_apply(rho_cj, x) -> np.ndarray:
    rho_cj, x = as_matrix(rho_cj), as_matrix(x)
    d = bipartite_dim(rho_cj)
    if x.shape != (d, d):
        raise ValueError(f"input has shape {x.shape}, expected {(d, d)}")
    t = rho_cj.reshape(d, d, d, d)
    # d * sum_{j,j'} X^T[j', j] rho[(j,k),(j',k')]
    return d * np.einsum("ab,akbl->kl", x, t)


def support(rho, tol: float = SUPPORT_TOL) -> OperatorSubspace:
    """Range of ``rho`` as an orthonormal operator subspace."""
    rho = as_matrix(rho)
    d = bipartite_dim(rho)
    evals, evecs = np.linalg.eigh(rho)
    ops = [extract_operator(evecs[:, i]) / np.sqrt(d) for i in np.flatnonzero(evals > tol)]
    return gram_schmidt_hs(ops, d=d)


@dataclass(frozen=True)
class ChannelReport:
    trace_preserving_residual: float
    unital_residual: float
    support_dim: int
    support_max_entanglement: float
    mixture_of_unitaries_possible: bool
    certificate: str | None

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def channel_report(rho_cj, cfg=None) -> ChannelReport:
    """Marginal residuals and the mixture-of-unitaries obstruction for a Choi state.

    A mixture of unitary channels has a Choi state that is a mixture of
    maximally entangled states, all lying in its support. No maximally
    entangled state in the support rules the mixture out.
    """
    cfg = OptimizerConfig.from_mapping(cfg)
    rho = check_density(rho_cj)
    d = bipartite_dim(rho)
    ra, rb = marginals(rho)
    eye = np.eye(d) / d
    sup = support(rho)
    best = max_entanglement_in_subspace(sup, cfg).best_value
    possible = best >= 1 - cfg.tol
    cert = None
    if not possible:
        cert = PROOF if subspace_is_skew(sup) else EVIDENCE
    return ChannelReport(
        trace_preserving_residual=float(np.linalg.norm(ra - eye)),
        unital_residual=float(np.linalg.norm(rb - eye)),
        support_dim=len(sup),
        support_max_entanglement=best,
        mixture_of_unitaries_possible=bool(possible),
        certificate=cert,
    )


def antisymmetric_subspace(d: int) -> OperatorSubspace:
    """States ``(|jk> - |kj>)/sqrt(2)`` mapped to operators."""
    ops = []
    for j in range(d):
        for k in range(j + 1, d):
            psi = np.zeros(d * d, dtype=complex)
            psi[j * d + k] = 1 / np.sqrt(2)
            psi[k * d + j] = -1 / np.sqrt(2)
            ops.append(extract_operator(psi) / np.sqrt(d))
    return gram_schmidt_hs(ops, d=d)


def landau_streater_equivalence(candidate: UmebCandidate | None = None, tol: float = 1e-9) -> bool:
    """Is the range of the complement state the antisymmetric subspace of C^3 (x) C^3?"""
    candidate = icosahedron_umeb() if candidate is None else candidate
    if candidate.d != 3:
        raise ValueError(f"only defined for d = 3, got d = {candidate.d}")
    sup = support(complement_state(candidate))
    return projection_residual(sup, antisymmetric_subspace(3)) < tol


def werner_holevo(x) -> np.ndarray:
    """``(Tr X * I - X^T) / (d - 1)``."""
    x = as_matrix(x)
    d = x.shape[0]
    return (np.trace(x) * np.eye(d) - x.T) / (d - 1)

