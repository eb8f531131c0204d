"""Certification of unextendible maximally entangled bases.

Numerical results are labeled ``EVIDENCE``. Only two arguments produce a
``PROOF`` label: an odd-dimensional skew-symmetric complement and the
``d^2 - 1`` completion.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.linalg import polar

from .constructions import (
    I2,
    PAULIS,
    SX,
    SY,
    SZ,
    CertificationError,
    UmebCandidate,
    complete_deficit_one,
    kron,
)
from .duality import is_maximally_entangled, random_unitary, schmidt
from .opspace import (
    STRUCTURAL_TOL,
    OperatorSubspace,
    gram_matrix,
    gram_schmidt_hs,
    orthogonal_complement,
    projection_residual,
)
from .optimize import OptimizerConfig, best_of, multistart

GRAM_TOL = 1e-8
PROOF = "PROOF"
EVIDENCE = "EVIDENCE"


class StructuralError(ValueError):
    pass


@dataclass(frozen=True)
class GramReport:
    d: int
    n: int
    max_offdiag: float
    max_diag_dev: float
    max_unitarity_defect: float

    def passes(self, tol: float = GRAM_TOL) -> bool:
        return max(self.max_offdiag, self.max_diag_dev, self.max_unitarity_defect) < tol

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "max_offdiag": self.max_offdiag,
            "max_diag_dev": self.max_diag_dev,
            "max_unitarity_defect": self.max_unitarity_defect,
            "passes": self.passes(),
        }


@dataclass(frozen=True)
class UnextendibilityReport:
    complement_dim: int
    best_value: float
    best_state: np.ndarray
    best_entropy_bits: float
    restarts: int
    converged_restarts: int
    structural_certificate: str | None = None
    values: tuple[float, ...] = field(default=(), repr=False)

    def extendable(self, tol: float = 1e-6) -> bool:
        return self.best_value >= 1 - tol

    def to_dict(self) -> dict:
        vals = np.asarray(self.values)
        return {
            "complement_dim": self.complement_dim,
            "best_value": self.best_value,
            "best_entropy_bits": self.best_entropy_bits,
            "best_state": [[float(a.real), float(a.imag)] for a in self.best_state],
            "restarts": self.restarts,
            "converged_restarts": self.converged_restarts,
            "restarts_within_1e-6_of_best": int(np.sum(vals >= self.best_value - 1e-6)) if len(vals) else 0,
            "structural_certificate": self.structural_certificate,
        }


class Certificate(NamedTuple):
    holds: bool
    residual: float
    detail: str = ""

    def __bool__(self):
        return self.holds


def gram_check(candidate: UmebCandidate) -> GramReport:
    d = candidate.d
    g = gram_matrix(candidate.members)
    off = g - np.diag(np.diag(g))
    eye = np.eye(d)
    unit = max(float(np.linalg.norm(u @ u.conj().T - eye)) for u in candidate.members)
    return GramReport(
        d=d,
        n=candidate.n,
        max_offdiag=float(np.max(np.abs(off))) if candidate.n > 1 else 0.0,
        max_diag_dev=float(np.max(np.abs(np.diag(g) - d))),
        max_unitarity_defect=unit,
    )


def complement_of(candidate: UmebCandidate) -> OperatorSubspace:
    report = gram_check(candidate)
    if not report.passes():
        raise CertificationError(f"candidate fails the Gram check: {report}")
    return orthogonal_complement(gram_schmidt_hs(candidate.members, d=candidate.d))


def subspace_is_skew(sub: OperatorSubspace) -> Certificate:
    sym = max((float(np.linalg.norm(b + b.T)) for b in sub), default=0.0)
    odd = sub.d % 2 == 1
    return Certificate(odd and len(sub) > 0 and sym < STRUCTURAL_TOL, sym, f"d={'odd' if odd else 'even'}")


def skew_certificate(candidate: UmebCandidate, complement: OperatorSubspace | None = None) -> Certificate:
    """Proof of unextendibility when ``d`` is odd and the complement is skew-symmetric.

    Every operator in such a complement satisfies ``U^T = -U``, hence
    ``det U = (-1)^d det U = 0`` and ``U`` is not unitary.
    """
    return subspace_is_skew(complement_of(candidate) if complement is None else complement)


# TILES complement -------------------------------------------------------------


@dataclass(frozen=True)
class TilesComplementParams:
    """``U = sum A[alpha, beta] sigma_alpha (x) sigma_beta`` with
    ``A = [[a, a, b], [d, g, b], [d, c, c]]`` and ``g = -2(a + b + c + d)``."""

    a: complex
    b: complex
    c: complex
    d: complex

    @property
    def g(self) -> complex:
        return -2 * (self.a + self.b + self.c + self.d)

    def vector(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d], dtype=complex)

    def coefficient_matrix(self) -> np.ndarray:
        a, b, c, d, g = self.a, self.b, self.c, self.d, self.g
        return np.array([[a, a, b], [d, g, b], [d, c, c]], dtype=complex)

    def operator(self) -> np.ndarray:
        A = self.coefficient_matrix()
        return sum(A[i, j] * kron(PAULIS[i], PAULIS[j]) for i in range(3) for j in range(3))


def tiles_family_basis() -> list[np.ndarray]:
    """Operators of the parametrized family at ``(a, b, c, d) = e_1, ..., e_4``."""
    return [TilesComplementParams(*np.eye(4)[k]).operator() for k in range(4)]


def tiles_form_check(candidate: UmebCandidate, complement: OperatorSubspace | None = None) -> Certificate:
    """Does the complement coincide with the parametrized TILES family?"""
    if candidate.d != 4 or candidate.n != 12:
        raise StructuralError(f"expected d=4, n=12, got d={candidate.d}, n={candidate.n}")
    comp = complement_of(candidate) if complement is None else complement
    if len(comp) != 4:
        raise StructuralError(f"complement has dimension {len(comp)}, expected 4")
    family = gram_schmidt_hs(tiles_family_basis())
    res = projection_residual(comp, family)
    return Certificate(res < 1e-9, res)


# Pauli-pair probes Tr(U U^dagger P (x) Q), indexed by (mu, nu) in {I, X, Y, Z}^2.
_PAULI4 = (I2, SX, SY, SZ)
PAULI_PAIRS = tuple((mu, nu) for mu in range(4) for nu in range(4))

K_OPERATOR = kron(SY, SX + SZ) + kron(SX + SZ, SY) - kron(SY, SY)


def _sesquilinear(op_of_uu) -> np.ndarray:
    """Matrix F with ``op_of_uu(U U^dagger) = sum_kl x_k conj(x_l) F[k, l]`` on the family."""
    basis = tiles_family_basis()
    return np.array([[op_of_uu(ek @ el.conj().T) for el in basis] for ek in basis])


def _aux_targets() -> list[np.ndarray]:
    """Sesquilinear matrices of ``(g+a) conj(b), (g+b) conj(c), (g+c) conj(d), (g+d) conj(a)``."""
    targets = []
    for i in range(4):
        q = np.zeros((4, 4), dtype=complex)
        lin = np.full(4, -2.0)
        lin[i] += 1.0  # g + x_i
        q[:, (i + 1) % 4] = lin
        targets.append(q)
    return targets


@lru_cache(maxsize=1)
def aux_pauli_coefficients() -> np.ndarray:
    """Coefficients ``c[i, (mu, nu)]`` such that
    ``sum c[i, p] Tr(U U^dagger P_p) = (g + x_i) conj(x_{i+1})`` for every member of the family.

    The sixteen Pauli-pair traces span all sesquilinear forms in ``(a, b, c, d)``
    so the combination exists and is unique; it needs ``Y`` factors as well as
    ``I, X, Z``.
    """
    forms = np.array(
        [_sesquilinear(lambda m, p=p: np.trace(m @ kron(_PAULI4[p[0]], _PAULI4[p[1]]))).ravel() for p in PAULI_PAIRS]
    ).T
    coeffs = np.linalg.solve(forms, np.array([t.ravel() for t in _aux_targets()]).T)
    return coeffs.T


def pauli_pair_traces(u: np.ndarray) -> np.ndarray:
    uu = u @ u.conj().T
    return np.array([np.trace(uu @ kron(_PAULI4[mu], _PAULI4[nu])) for mu, nu in PAULI_PAIRS])


@dataclass(frozen=True)
class TilesProbe:
    params: TilesComplementParams
    aux_values: np.ndarray  # combinations of Pauli-pair traces
    aux_targets: np.ndarray  # (g+a)b*, (g+b)c*, (g+c)d*, (g+d)a*
    norm_residual: float  # Tr(U^dagger U) - 8 (|a|^2+|b|^2+|c|^2+|d|^2+|g|^2/2)
    k_trace: complex  # Tr(U U^dagger K)
    cross_target: float  # |a+b+c+d|^2 - (|a|^2+|b|^2+|c|^2+|d|^2)


def tiles_identity_probe(params: TilesComplementParams) -> TilesProbe:
    u = params.operator()
    x = params.vector()
    g = params.g
    traces = pauli_pair_traces(u)
    aux_values = aux_pauli_coefficients() @ traces
    nxt = np.roll(x, -1)
    aux_targets = (g + x) * nxt.conj()
    sq = float(np.sum(np.abs(x) ** 2))
    norm_residual = float(np.trace(u.conj().T @ u).real - 8 * (sq + abs(g) ** 2 / 2))
    k_trace = complex(np.trace(u @ u.conj().T @ K_OPERATOR))
    cross_target = float(abs(np.sum(x)) ** 2 - sq)
    return TilesProbe(params, aux_values, aux_targets, norm_residual, k_trace, cross_target)


PROBE_REFERENCE = TilesComplementParams(1, 1, 0, 0)


def fit_probe_constants(reference: TilesComplementParams = PROBE_REFERENCE) -> tuple[complex, complex]:
    """``(kappa_aux, kappa_k)`` from one evaluation at the reference point."""
    p = tiles_identity_probe(reference)
    i = int(np.argmax(np.abs(p.aux_targets)))
    return p.aux_values[i] / p.aux_targets[i], p.k_trace / p.cross_target


def tiles_moment_matrix() -> np.ndarray:
    """The unique X with ``sum_kl X[k, l] E_k E_l^dagger = I`` over the family basis.

    A unitary ``U = sum x_k E_k`` would force ``x x^dagger = X``; X has full
    rank, so no member of the family is unitary.
    """
    basis = tiles_family_basis()
    lhs = np.array([(ek @ el.conj().T).ravel() for ek in basis for el in basis]).T
    return np.linalg.solve(lhs, np.eye(4, dtype=complex).ravel()).reshape(4, 4)


# numerical unextendibility -----------------------------------------------------


def max_entanglement_in_subspace(sub: OperatorSubspace, cfg=None) -> UnextendibilityReport:
    """Maximize ``sqrt(d) * s_min`` over unit states of ``sub``.

    A value of one (within ``cfg.tol``) exhibits a maximally entangled state in
    the subspace. Anything lower is numerical evidence only.
    """
    cfg = OptimizerConfig.from_mapping(cfg)
    if len(sub) == 0:
        raise ValueError("subspace is empty")
    results = multistart(sub, cfg, "min_schmidt")
    _, best = best_of(results)
    op = sub.combine(best.coeffs)
    state = op.T.ravel()
    return UnextendibilityReport(
        complement_dim=len(sub),
        best_value=min(best.value, 1.0),
        best_state=state,
        best_entropy_bits=schmidt(state).entropy_bits,
        restarts=cfg.restarts,
        converged_restarts=sum(r.converged for r in results),
        values=tuple(r.value for r in results),
    )


def verify_unextendibility(candidate: UmebCandidate, cfg=None) -> tuple[UnextendibilityReport, str]:
    """Run the optimizer on the complement and attach any structural certificate.

    Returns the report and the label ``PROOF`` or ``EVIDENCE``.
    """
    comp = complement_of(candidate)
    cert = None
    if skew_certificate(candidate, comp):
        cert = "skew_odd"
    elif candidate.d == 4 and candidate.n == 12:
        try:
            if tiles_form_check(candidate, comp):
                cert = "tiles_form"
        except StructuralError:
            pass
    report = max_entanglement_in_subspace(comp, cfg)
    report = UnextendibilityReport(**{**report.__dict__, "structural_certificate": cert})
    return report, PROOF if cert == "skew_odd" else EVIDENCE


# d = 2 -------------------------------------------------------------------------


def qubit_triple(alpha: complex, beta: complex, left, right) -> UmebCandidate:
    members = (I2, SZ, alpha * SX + beta * SY)
    return UmebCandidate(2, tuple(left @ u @ right for u in members), "qubit_triple")


def random_alpha_beta(rng) -> tuple[complex, complex]:
    """Random pair for which ``alpha X + beta Y`` is unitary: a real unit
    vector times a common phase."""
    t, g = rng.uniform(0, 2 * np.pi, size=2)
    phase = np.exp(1j * g)
    return complex(phase * np.cos(t)), complex(phase * np.sin(t))


def qubit_extendability_property(trials: int, seed: int = 7, tol: float = 1e-8) -> bool:
    """Every dressed triple ``{V W, V Z W, V (alpha X + beta Y) W}`` completes
    to a fourth maximally entangled state."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        v, w = random_unitary(2, rng), random_unitary(2, rng)
        alpha, beta = random_alpha_beta(rng)
        psi = complete_deficit_one(qubit_triple(alpha, beta, v, w))
        if not is_maximally_entangled(psi, tol):
            return False
    return True


# search ------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchConfig:
    max_rounds: int = 5000
    gram_tol: float = GRAM_TOL
    optimizer: OptimizerConfig = OptimizerConfig()


@dataclass(frozen=True)
class SearchResult:
    candidate: UmebCandidate | None
    members: tuple[np.ndarray, ...]
    gram_residual: float
    rounds: int
    converged: bool
    report: UnextendibilityReport | None


def _orthogonal_part(target: np.ndarray, others: list[np.ndarray]) -> np.ndarray:
    if not others:
        return target
    q = gram_schmidt_hs(others)
    return target - q.project(target)


def _offdiag_residual(ops) -> float:
    g = gram_matrix(ops)
    return float(np.max(np.abs(g - np.diag(np.diag(g))))) if len(ops) > 1 else 0.0


def search_umeb(d: int, n: int, cfg: SearchConfig | None = None, seed: int = 0) -> SearchResult:
    """Look for ``n`` orthogonal unitaries on C^d and test their complement.

    Phase one replaces each member in turn by the unitary polar factor of its
    component orthogonal to the other members, until the largest off-diagonal
    Gram entry drops below ``cfg.gram_tol``. Phase two maximizes entanglement
    over the complement.
    """
    cfg = cfg or SearchConfig()
    # d = 2, n = 3 stays allowed: it is the qubit non-existence check
    if n == d * d - 1 and d > 2:
        raise ValueError(
            f"n = d^2 - 1 = {n} is excluded: the complement of d^2 - 1 orthonormal "
            "maximally entangled states is itself maximally entangled"
        )
    if not 2 <= n <= max(d * d - 2, 3):
        raise ValueError(f"need 2 <= n <= d^2 - 2 = {d * d - 2}, got n = {n}")
    rng = np.random.default_rng(seed)
    members = [random_unitary(d, rng) for _ in range(n)]
    residual = _offdiag_residual(members)
    rounds = 0
    while residual >= cfg.gram_tol and rounds < cfg.max_rounds:
        for a in range(n):
            part = _orthogonal_part(members[a], members[:a] + members[a + 1 :])
            if np.linalg.norm(part) < 1e-12:
                part = random_unitary(d, rng)
            members[a] = polar(part)[0]
        rounds += 1
        residual = _offdiag_residual(members)
    members_t = tuple(members)
    if residual >= cfg.gram_tol:
        return SearchResult(None, members_t, residual, rounds, False, None)
    candidate = UmebCandidate(d, members_t, f"search_d{d}_n{n}_seed{seed}")
    report = max_entanglement_in_subspace(complement_of(candidate), cfg.optimizer)
    return SearchResult(candidate, members_t, residual, rounds, True, report)
