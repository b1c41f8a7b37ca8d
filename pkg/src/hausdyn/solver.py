"""Saddle-path policy function and an independent extended-path check.

The policy is found by undetermined coefficients: guessing
``q_hat = phi_h h_hat + phi_R R_hat + phi_n n_hat`` and matching terms in the
demand equation gives a quadratic in ``phi_h`` and, once the stable root is
selected, two linear equations for the exogenous loadings.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import spsolve

from hausdyn.errors import Indeterminacy, NoConvergence, NoStableRoot, SolverError
from hausdyn.linear import LinearSystem

UNIT_ROOT_TOL = 1e-10


@dataclass(frozen=True)
class PolicyFunction:
    phi_h: float
    phi_R: float
    phi_n: float
    closed_loop_h_root: float

    def price(self, h_hat, R_hat, n_hat):
        """Price deviation implied by the state; accepts scalars or arrays."""
        return self.phi_h * h_hat + self.phi_R * R_hat + self.phi_n * n_hat


def block_roots(sys: LinearSystem) -> np.ndarray:
    """Eigenvalues of the (h_hat, q_hat) transition, sorted by modulus."""
    roots = np.linalg.eigvals(sys.block_matrix())
    return roots[np.argsort(np.abs(roots))]


def count_explosive(sys: LinearSystem) -> int:
    return int(np.sum(np.abs(block_roots(sys)) > 1.0 + UNIT_ROOT_TOL))


def _quadratic_roots(a: float, b: float, c: float) -> list[complex]:
    if a == 0.0:
        return [-c / b]
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        s = complex(0.0, math.sqrt(-disc))
        return [(-b + s) / (2.0 * a), (-b - s) / (2.0 * a)]
    # cancellation-free form
    t = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    return [t / a, c / t] if t != 0.0 else [0.0, 0.0]


def solve_saddle_path(sys: LinearSystem) -> PolicyFunction:
    """Solve for the unique stable linear policy.

    Raises
    ------
    NoStableRoot
        Both roots of the stock/price block are explosive.
    Indeterminacy
        Both roots are stable, or a root sits within 1e-10 of the unit circle.
    """
    roots = block_roots(sys)
    moduli = np.abs(roots)
    n_stable = int(np.sum(moduli < 1.0 - UNIT_ROOT_TOL))
    n_explosive = int(np.sum(moduli > 1.0 + UNIT_ROOT_TOL))
    if n_explosive == 2:
        raise NoStableRoot(f"no stable root: block roots {roots.tolist()}", roots)
    if n_stable != 1 or n_explosive != 1:
        raise Indeterminacy(f"saddle path not unique: block roots {roots.tolist()}", roots)

    w1, w2 = sys.w1, sys.w2
    candidates = _quadratic_roots(w2 * sys.a_hq, w2 * sys.a_hh - 1.0, -w1)
    closed = [sys.a_hh + sys.a_hq * phi for phi in candidates]
    stable = [
        (phi, lam) for phi, lam in zip(candidates, closed) if abs(lam) < 1.0 - UNIT_ROOT_TOL
    ]
    if len(stable) != 1:
        raise SolverError(
            f"quadratic root selection disagrees with block roots: {closed}", closed
        )
    phi_h, lam = stable[0]
    phi_h, lam = float(np.real(phi_h)), float(np.real(lam))

    den_R = 1.0 - w2 * (sys.rho_R + sys.a_hq * phi_h)
    den_n = 1.0 - w2 * (sys.rho_n + sys.a_hq * phi_h)
    if den_R == 0.0 or den_n == 0.0:
        raise SolverError("singular exogenous loading equation", roots)
    phi_R = sys.d_qR / den_R
    phi_n = w2 * phi_h * sys.a_hn / den_n
    return PolicyFunction(phi_h=phi_h, phi_R=phi_R, phi_n=phi_n, closed_loop_h_root=lam)


def functional_residual(policy: PolicyFunction, sys: LinearSystem, states) -> np.ndarray:
    """Demand-equation residual when the policy is used today and next period.

    ``states`` is an array of shape (N, 3) in (h_hat, R_hat, n_hat) order.
    """
    states = np.atleast_2d(np.asarray(states, dtype=float))
    h, R, n = states[:, 0], states[:, 1], states[:, 2]
    q = policy.price(h, R, n)
    h_next = sys.a_hh * h + sys.a_hq * q + sys.a_hn * n
    q_next = policy.price(h_next, sys.rho_R * R, sys.rho_n * n)
    return q - (sys.d_qh * h + sys.d_qq1 * q_next + sys.d_qR * R)


@dataclass(frozen=True)
class ExtendedPath:
    q_hat: np.ndarray
    h_hat: np.ndarray
    truncation: int


def _stacked_solve(sys: LinearSystem, h0: float, R_path, n_path, T: int):
    # unknowns: q_0..q_{T-1}, h_1..h_T ; terminal q_T = 0
    rows, cols, vals = [], [], []
    rhs = np.zeros(2 * T)

    def q_idx(t):
        return t

    def h_idx(t):
        return T + t - 1

    for t in range(T):
        # demand: q_t - d_qh h_t - d_qq1 q_{t+1} = d_qR_next R_{t+1}
        rows.append(t), cols.append(q_idx(t)), vals.append(1.0)
        if t == 0:
            rhs[t] += sys.d_qh * h0
        else:
            rows.append(t), cols.append(h_idx(t)), vals.append(-sys.d_qh)
        if t + 1 < T:
            rows.append(t), cols.append(q_idx(t + 1)), vals.append(-sys.d_qq1)
        rhs[t] += sys.d_qR_next * R_path[t + 1]

        # stock: h_{t+1} - a_hh h_t - a_hq q_t = a_hn n_t
        e = T + t
        rows.append(e), cols.append(h_idx(t + 1)), vals.append(1.0)
        if t == 0:
            rhs[e] += sys.a_hh * h0
        else:
            rows.append(e), cols.append(h_idx(t)), vals.append(-sys.a_hh)
        rows.append(e), cols.append(q_idx(t)), vals.append(-sys.a_hq)
        rhs[e] += sys.a_hn * n_path[t]

    A = sparse.csc_matrix((vals, (rows, cols)), shape=(2 * T, 2 * T))
    x = spsolve(A, rhs)
    q = x[:T]
    h = np.concatenate([[h0], x[T:]])
    return q, h


def extended_path(
    sys: LinearSystem,
    initial_state,
    horizon: int,
    truncation: int | None = None,
    tol: float = 1e-8,
    max_doublings: int = 4,
) -> ExtendedPath:
    """Perfect-foresight path from ``initial_state`` with no further shocks.

    Expectations are replaced by the realized exogenous paths and the
    two-point boundary problem (given ``h_hat[0]``, ``q_hat[T] = 0``) is
    solved as one stacked sparse linear system.  The truncation ``T`` is
    doubled until two successive solves agree to ``tol`` over the first
    ``horizon`` periods.

    Parameters
    ----------
    initial_state : sequence of 3 floats
        ``(h_hat[0], R_hat[0], n_hat[0])``.
    horizon : int
        Number of leading periods returned.
    truncation : int, optional
        Initial terminal date; at least ``horizon + 200`` (the default).
    max_doublings : int
        Doublings attempted before giving up with NoConvergence.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if truncation is None:
        truncation = horizon + 200
    if truncation < horizon + 200:
        raise ValueError("truncation must be at least horizon + 200")
    h0, R0, n0 = (float(v) for v in initial_state)

    def solve(T):
        t = np.arange(T + 1)
        R_path = R0 * sys.rho_R**t
        n_path = n0 * sys.rho_n**t
        return _stacked_solve(sys, h0, R_path, n_path, T)

    T = truncation
    q_prev, h_prev = solve(T)
    for _ in range(max_doublings):
        T *= 2
        q, h = solve(T)
        change = max(
            np.max(np.abs(q[:horizon] - q_prev[:horizon])),
            np.max(np.abs(h[:horizon] - h_prev[:horizon])),
        )
        if change < tol:
            return ExtendedPath(q_hat=q[:horizon].copy(), h_hat=h[:horizon].copy(), truncation=T)
        q_prev, h_prev = q, h
    raise NoConvergence(
        f"path still changed by {change:.3e} after doubling truncation to {T} (tol {tol:g})"
    )
