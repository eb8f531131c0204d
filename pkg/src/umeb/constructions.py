"""Explicit unextendible maximally entangled bases and completion helpers."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .duality import embed_operator, is_maximally_entangled
from .opspace import STRUCTURAL_TOL, as_matrix, gram_matrix

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SX, SY, SZ)


class CertificationError(ValueError):
    """A candidate fails a precondition required by an operation."""


@dataclass(frozen=True)
class UmebCandidate:
    """``n`` operators on C^d, each normalized to ``Tr(U^dagger U) = d``."""

    d: int
    members: tuple[np.ndarray, ...]
    label: str = ""

    def __post_init__(self):
        members = tuple(as_matrix(u) for u in self.members)
        for u in members:
            u.setflags(write=False)
        object.__setattr__(self, "members", members)
        n = len(members)
        if not 1 <= n <= self.d**2:
            raise ValueError(f"need 1 <= n <= d^2 = {self.d**2}, got n = {n}")
        for a, u in enumerate(members):
            if u.shape != (self.d, self.d):
                raise ValueError(f"member {a} has shape {u.shape}, expected {(self.d, self.d)}")
            norm2 = float(np.vdot(u, u).real)
            if abs(norm2 - self.d) > STRUCTURAL_TOL * self.d:
                raise ValueError(f"member {a}: Tr(U^dagger U) = {norm2!r}, expected {self.d}")

    @property
    def n(self) -> int:
        return len(self.members)

    def states(self) -> np.ndarray:
        """Embedded states, one per row."""
        return np.stack([embed_operator(u) for u in self.members])

    def dressed(self, left, right) -> "UmebCandidate":
        """``{V U_a W}``; Gram data and unextendibility are invariant."""
        left, right = as_matrix(left), as_matrix(right)
        return UmebCandidate(self.d, tuple(left @ u @ right for u in self.members), self.label)


@dataclass(frozen=True)
class IcosahedronParams:
    phi: float = (1 + np.sqrt(5)) / 2
    norm: float = field(default=np.sqrt(1 + ((1 + np.sqrt(5)) / 2) ** 2))
    cos_theta: float = -7 / 8
    sin_theta: float = np.sqrt(15) / 8

    @property
    def phase(self) -> complex:
        return complex(self.cos_theta, self.sin_theta)

    def orthogonality_defect(self) -> float:
        """``Tr(U_a^dagger U_b)`` for ``a != b`` written as a function of ``cos(theta)``.

        With ``|<psi_a|psi_b>|^2 = 1/5`` this is ``3 - 2(1 - c) + 2(1 - c)/5``,
        which vanishes exactly at ``c = -7/8``.
        """
        one_minus_c = 1 - self.cos_theta
        return 3 - 2 * one_minus_c + 2 * one_minus_c / 5


ICOSAHEDRON = IcosahedronParams()


def icosahedron_vectors(params: IcosahedronParams = ICOSAHEDRON) -> np.ndarray:
    """The six icosahedron diagonals in R^3, one per row."""
    phi, nrm = params.phi, params.norm
    e = np.eye(3)
    rows = []
    for j in range(3):
        for sign in (1, -1):
            rows.append((e[j] + sign * phi * e[(j + 1) % 3]) / nrm)
    return np.array(rows)


def icosahedron_umeb(params: IcosahedronParams = ICOSAHEDRON) -> UmebCandidate:
    """Six symmetric unitaries ``I - (1 - e^{i theta}) |psi_j><psi_j|`` on C^3."""
    factor = 1 - params.phase
    members = tuple(np.eye(3) - factor * np.outer(v, v) for v in icosahedron_vectors(params))
    return UmebCandidate(3, members, "icosahedron")


def pauli_vector(u) -> np.ndarray:
    """``sigma(u) = u_x X + u_y Y + u_z Z``."""
    u = np.asarray(u, dtype=float)
    if u.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {u.shape}")
    return u[0] * SX + u[1] * SY + u[2] * SZ


def kron(*ops) -> np.ndarray:
    return reduce(np.kron, ops)


# (u_a, v_a) for the five product members, U_a = sigma(u_a) (x) sigma(v_a)
_TILES_PRODUCT_VECTORS = (
    ((1, 0, 0), (1 / np.sqrt(2), -1 / np.sqrt(2), 0)),
    ((1 / np.sqrt(2), -1 / np.sqrt(2), 0), (0, 0, 1)),
    ((0, 0, 1), (0, -1 / np.sqrt(2), 1 / np.sqrt(2))),
    ((0, -1 / np.sqrt(2), 1 / np.sqrt(2)), (1, 0, 0)),
    ((1 / np.sqrt(3),) * 3, (1 / np.sqrt(3),) * 3),
)


def tiles_umeb() -> UmebCandidate:
    """Twelve unitaries on C^4 = C^2 (x) C^2.

    Order: the five TILES products, then ``I(x)I``, ``I(x)X, I(x)Y, I(x)Z``,
    ``X(x)I, Y(x)I, Z(x)I``.
    """
    members = [kron(pauli_vector(u), pauli_vector(v)) for u, v in _TILES_PRODUCT_VECTORS]
    members.append(kron(I2, I2))
    members.extend(kron(I2, p) for p in PAULIS)
    members.extend(kron(p, I2) for p in PAULIS)
    return UmebCandidate(4, tuple(members), "tiles")


def qubit_fourth_member(alpha: complex, beta: complex, tol: float = STRUCTURAL_TOL) -> np.ndarray:
    """Completion of ``{I, Z, alpha X + beta Y}`` to an orthogonal unitary basis.

    Returns ``conj(beta) X - conj(alpha) Y``. The third member is unitary only
    when ``alpha * conj(beta)`` is real, i.e. the pair is a real unit vector up
    to a common phase; other inputs are rejected.
    """
    norm2 = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(norm2 - 1) > tol:
        raise ValueError(f"|alpha|^2 + |beta|^2 = {norm2!r}, expected 1")
    if abs((alpha * np.conj(beta)).imag) > tol:
        raise ValueError("alpha X + beta Y is not unitary: alpha * conj(beta) must be real")
    return np.conj(beta) * SX - np.conj(alpha) * SY


def clock_shift_basis(d: int) -> UmebCandidate:
    """Generalized Pauli operators ``X^a Z^b`` (index ``a*d + b``)."""
    omega = np.exp(2j * np.pi / d)
    shift = np.roll(np.eye(d, dtype=complex), 1, axis=0)
    clock = np.diag(omega ** np.arange(d))
    members = tuple(
        np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)
        for a in range(d)
        for b in range(d)
    )
    return UmebCandidate(d, members, f"clock_shift_{d}")


def fix_phase(state: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the largest-magnitude amplitude is real positive.

    Near-ties (relative 1e-12) go to the lowest index, so flat states get a
    reproducible phase.
    """
    mag = np.abs(state)
    k = int(np.flatnonzero(mag >= mag.max() * (1 - 1e-12))[0])
    out = state * (abs(state[k]) / state[k])
    out[k] = abs(state[k])
    return out


def check_orthonormal_me(candidate: UmebCandidate, tol: float = 1e-8) -> None:
    """Raise :class:`CertificationError` naming the first offending member or pair."""
    for a, u in enumerate(candidate.members):
        check = is_maximally_entangled(embed_operator(u), tol)
        if not check:
            raise CertificationError(f"member {a} is not maximally entangled (deviation {check.deviation:.3g})")
    gram = gram_matrix(candidate.members) / candidate.d
    off = np.abs(gram - np.eye(candidate.n))
    a, b = np.unravel_index(int(np.argmax(off)), off.shape)
    if off[a, b] > tol:
        raise CertificationError(f"members {a} and {b} are not orthonormal (|<Psi_a|Psi_b>| = {abs(gram[a, b]):.3g})")


def complete_deficit_one(candidate: UmebCandidate, tol: float = 1e-8) -> np.ndarray:
    """The state spanning the complement of ``d^2 - 1`` orthonormal maximally
    entangled states.

    The complement is a single ray and it is always maximally entangled, since
    ``I - sum_a |Psi_a><Psi_a|`` has maximally mixed marginals.
    """
    d = candidate.d
    if candidate.n != d * d - 1:
        raise CertificationError(f"need n = d^2 - 1 = {d * d - 1} members, got {candidate.n}")
    check_orthonormal_me(candidate, tol)
    states = candidate.states()
    residual = np.eye(d * d) - states.T @ states.conj()
    evals, evecs = np.linalg.eigh(residual)
    rank = int(np.sum(evals > 0.5))
    if rank != 1 or np.any(np.abs(evals[:-1]) > 1e-6):
        raise ArithmeticError(f"residual projector has rank {rank}, expected 1")
    psi = fix_phase(evecs[:, -1])
    return psi / np.linalg.norm(psi)
