"""Multi-start optimization of Schmidt-coefficient functionals over an operator subspace.

A point of the search space is a unit coefficient vector ``x`` in C^k; it
names the operator ``M(x) = sum_i x_i B_i`` of Hilbert-Schmidt norm one whose
singular values are the Schmidt coefficients of the corresponding state.
Coefficients are handled as a real vector ``z`` in R^{2k} and normalized on
the fly, so scipy's unconstrained minimizers can be used directly.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np
from scipy.optimize import minimize

from .opspace import OperatorSubspace

LOG_FLOOR = 1e-12
_LN2 = np.log(2.0)


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 100
    max_iters: int = 500
    tol: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if not 0 < self.tol < 1:
            raise ValueError("tol must lie in (0, 1)")

    @classmethod
    def from_mapping(cls, cfg) -> "OptimizerConfig":
        if cfg is None:
            return cls()
        if isinstance(cfg, cls):
            return cfg
        return cls(**{k: cfg[k] for k in ("restarts", "max_iters", "tol", "seed") if k in cfg})

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class RestartResult:
    coeffs: np.ndarray
    singular_values: np.ndarray
    value: float
    converged: bool


# Each functional maps singular values s (sum s^2 = 1) to (loss, dloss/ds).
SVFunctional = Callable[[np.ndarray], "tuple[float, np.ndarray]"]


def neg_log_det(s):
    sc = np.maximum(s, LOG_FLOOR)
    return -float(np.sum(np.log(sc))), -np.where(s > LOG_FLOOR, 1.0 / sc, 0.0)


def neg_soft_min(p: float) -> SVFunctional:
    """``-(sum s_i^-p)^(-1/p)``, which tends to ``-min s`` as ``p`` grows."""

    def f(s):
        sc = np.maximum(s, LOG_FLOOR)
        m = sc.min()
        q = (sc / m) ** (-p)
        total = q.sum()
        val = m * total ** (-1.0 / p)
        return -float(val), -val * q / total / sc

    return f


def neg_entropy_bits(s):
    s2 = s**2
    pos = s > 0
    logs = np.zeros_like(s)
    logs[pos] = np.log2(s2[pos])
    h = -float(np.sum(s2 * logs))
    dh = -(2 * s * logs + np.where(pos, 2 * s / _LN2, 0.0))
    return -h, -dh


class _Problem:
    def __init__(self, sub: OperatorSubspace):
        self.basis = sub.basis
        self.k = len(sub)

    def coeffs(self, z):
        x = z[: self.k] + 1j * z[self.k :]
        return x / np.linalg.norm(x)

    def operator(self, x):
        return np.tensordot(x, self.basis, axes=1)

    def svals(self, z):
        return np.linalg.svd(self.operator(self.coeffs(z)), compute_uv=False)

    def sval_jacobian(self, z):
        """Singular values and their gradients with respect to ``z``, shape (d, 2k)."""
        r = np.linalg.norm(z)
        x = self.coeffs(z)
        u, s, vh = np.linalg.svd(self.operator(x))
        # ds_i = Re(u_i^H dM v_i)
        w = np.einsum("ai,jab,ib->ij", u.conj(), self.basis, vh.conj())
        gx = np.concatenate([w.real, -w.imag], axis=1)
        xr = np.concatenate([x.real, x.imag])
        return s, (gx - np.outer(gx @ xr, xr)) / r

    def fun(self, functional: SVFunctional):
        def f(z):
            s, jac = self.sval_jacobian(z)
            val, ds = functional(s)
            return val, ds @ jac

        return f


def _lbfgs(problem, functional, z, max_iters):
    res = minimize(problem.fun(functional), z, jac=True, method="L-BFGS-B", options={"maxiter": max_iters})
    return res.x / np.linalg.norm(res.x), res.success


def _polish_min(problem, z, max_iters):
    """Epigraph form: maximize t subject to s_i(z) >= t and |z| = 1."""

    def cons(v):
        return problem.svals(v[:-1]) - v[-1]

    def cons_jac(v):
        s, jac = problem.sval_jacobian(v[:-1])
        return np.hstack([jac, -np.ones((len(s), 1))])

    start = np.append(z, problem.svals(z).min())
    grad = np.zeros_like(start)
    grad[-1] = -1.0
    res = minimize(
        lambda v: -v[-1],
        start,
        jac=lambda v: grad,
        constraints=[
            {"type": "ineq", "fun": cons, "jac": cons_jac},
            {"type": "eq", "fun": lambda v: v[:-1] @ v[:-1] - 1.0, "jac": lambda v: np.append(2 * v[:-1], 0.0)},
        ],
        method="SLSQP",
        options={"maxiter": max_iters, "ftol": 1e-14},
    )
    z_new = res.x[:-1] / np.linalg.norm(res.x[:-1])
    # SLSQP can wander off when the active set changes; never accept a worse point
    if problem.svals(z_new).min() < problem.svals(z).min():
        return z, res.success
    return z_new, res.success


def _ascend_min(problem, z, max_iters):
    z, _ = _lbfgs(problem, neg_log_det, z, max_iters)
    for p in (8.0, 64.0, 512.0):
        z, _ = _lbfgs(problem, neg_soft_min(p), z, max_iters)
    return _polish_min(problem, z, max_iters)


def _ascend_entropy(problem, z, max_iters):
    return _lbfgs(problem, neg_entropy_bits, z, max_iters)


def starting_points(k: int, restarts: int, seed: int) -> np.ndarray:
    """Uniform points on the unit sphere of C^k as rows of real 2k-vectors."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((restarts, 2 * k))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def multistart(sub: OperatorSubspace, cfg: OptimizerConfig, objective: str = "min_schmidt") -> list[RestartResult]:
    """Run every restart and return them in restart order.

    ``objective`` is ``"min_schmidt"`` (value ``sqrt(d) * s_min``) or
    ``"entropy"`` (value in bits).
    """
    if len(sub) == 0:
        raise ValueError("cannot optimize over an empty subspace")
    problem = _Problem(sub)
    d = sub.d
    ascend = {"min_schmidt": _ascend_min, "entropy": _ascend_entropy}[objective]
    results = []
    for z0 in starting_points(problem.k, cfg.restarts, cfg.seed):
        z, ok = ascend(problem, z0, cfg.max_iters)
        s = problem.svals(z)
        if objective == "min_schmidt":
            value = float(np.sqrt(d) * s.min())
        else:
            value = -neg_entropy_bits(s)[0]
        results.append(RestartResult(problem.coeffs(z), s, value, bool(ok)))
    return results


def best_of(results: list[RestartResult]) -> tuple[int, RestartResult]:
    """Highest value; ties go to the lowest restart index."""
    idx = max(range(len(results)), key=lambda i: (results[i].value, -i))
    return idx, results[idx]
