"""Greedy factorization of orthogonal matrices into few reflections.

The driver repeatedly peels off the single reflection closest to the working
matrix: the minimizer of ||V - (I - 2uu^T)||_F over unit u is the bottom
eigenvector of the symmetric part (V + V^T)/2. Peeling stops once the
accumulated product matches the input, and the number of factors used is
provably the smallest possible for exact members.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    HouseholderProduct,
    Reflector,
    _fixed_subspace_dim,
    check_orthogonal,
    symmetric_eigendecomposition,
    symmetric_part,
)

SYM_INPUT_RTOL = 1e-8  # per-n symmetry slack accepted by symmetric_decompose
QR_SKIP_RTOL = 1e-12   # per-sqrt(n) slack for "column already reduced"
RADICAND_NOISE = 64.0  # times n*eps: radicands below this are numerical zero


@dataclass(frozen=True)
class TraceRow:
    """Snapshot of one greedy iteration.

    trace and dim_e1 describe the working matrix the iteration started from;
    lambda_min is the minimized eigenvalue of its symmetric part; residual is
    the approximation error after appending the iteration's reflector.
    """

    iteration: int
    residual: float
    lambda_min: float
    trace: float
    dim_e1: int


@dataclass(frozen=True)
class DecompositionTrace:
    """Per-iteration records plus the final state of a greedy run.

    termination is "converged", "m_cap" (caller's factor budget exhausted), or
    "n_cap" (dimension bound reached). final_trace and final_dim_e1 describe
    the working matrix after the last iteration, so consecutive rows and the
    final state together cover every iteration's trace/eigenspace transition.
    """

    rows: tuple[TraceRow, ...]
    m: int
    final_residual: float
    final_trace: float
    final_dim_e1: int
    termination: str


def nearest_reflector(V) -> tuple[Reflector, float]:
    """Closest single reflection to an orthogonal matrix and its distance.

    The minimizer is I - 2uu^T with u a bottom eigenvector of the symmetric
    part; the distance has the closed form
    sqrt(2n - 2 tr(V) + 4 lambda_min((V + V^T)/2)), clamped at zero.
    """
    M = check_orthogonal(V)
    n = M.shape[0]
    spectrum = symmetric_eigendecomposition(symmetric_part(M))
    reflector = Reflector(spectrum.eigenvectors[:, 0])
    squared = 2.0 * n - 2.0 * np.trace(M) + 4.0 * spectrum.eigenvalues[0]
    return reflector, float(np.sqrt(max(squared, 0.0)))


def greedy_decompose(
    V,
    max_m: int | None = None,
    eps: float = 1e-6,
) -> tuple[HouseholderProduct, DecompositionTrace]:
    """Factor an orthogonal matrix into a short product of reflections.

    Args:
        V: orthogonal matrix (validated).
        max_m: factor budget; defaults to n. The effective cap is min(max_m, n).
        eps: stop once ||product - V||_F <= eps.

    Returns:
        The factors in application order (their product approximates V) and a
        DecompositionTrace with one row per completed iteration.

    When V is exactly a product of p <= max_m reflections and eps is at
    exact-recovery scale (<= 1e-6), the run converges with exactly p factors,
    and p is minimal; min_factors provides the independent count.
    """
    M = check_orthogonal(V)
    n = M.shape[0]
    if max_m is None:
        max_m = n
    if max_m < 0:
        raise ValueError("max_m must be nonnegative")
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    cap = min(max_m, n)

    working = M.copy()          # H_k ... H_1 V, converges to I
    accumulated = np.eye(n)     # H_1 ... H_k, converges to V
    factors: list[Reflector] = []
    rows: list[TraceRow] = []
    residual = float(np.linalg.norm(accumulated - M, "fro"))
    while residual > eps and len(factors) < cap:
        pre_trace = float(np.trace(working))
        pre_dim = _fixed_subspace_dim(working)
        spectrum = symmetric_eigendecomposition(symmetric_part(working))
        lambda_min = float(spectrum.eigenvalues[0])
        reflector = Reflector(spectrum.eigenvectors[:, 0])
        u = reflector.u
        working -= 2.0 * np.outer(u, u @ working)
        accumulated -= 2.0 * np.outer(accumulated @ u, u)
        factors.append(reflector)
        residual = float(np.linalg.norm(accumulated - M, "fro"))
        rows.append(TraceRow(len(factors) - 1, residual, lambda_min, pre_trace, pre_dim))

    if residual <= eps:
        termination = "converged"
    elif max_m < n:
        termination = "m_cap"
    else:
        termination = "n_cap"
    trace = DecompositionTrace(
        rows=tuple(rows),
        m=len(factors),
        final_residual=residual,
        final_trace=float(np.trace(working)),
        final_dim_e1=_fixed_subspace_dim(working),
        termination=termination,
    )
    return HouseholderProduct(n, tuple(factors)), trace


def symmetric_decompose(V) -> HouseholderProduct:
    """Factor a symmetric orthogonal matrix into mutually orthogonal reflections.

    Such a matrix has eigenvalues +-1; the factors are its eigenvectors with
    eigenvalue -1, in ascending eigen-index order (they commute, so any fixed
    order works). The factor count is exactly that eigenvalue's multiplicity.
    """
    M = check_orthogonal(V)
    n = M.shape[0]
    if np.linalg.norm(M - M.T, "fro") > SYM_INPUT_RTOL * n:
        raise ValueError("input is not symmetric")
    spectrum = symmetric_eigendecomposition(symmetric_part(M))
    negative = np.flatnonzero(spectrum.eigenvalues < 0.0)
    factors = tuple(Reflector(spectrum.eigenvectors[:, i]) for i in negative)
    return HouseholderProduct(n, factors)


def qr_baseline(V) -> tuple[HouseholderProduct, np.ndarray]:
    """Column-wise Householder QR of an orthogonal matrix.

    Returns reflectors and the +-1 diagonal r with V = H_1 ... H_k diag(r).
    A column that is already in reduced form contributes no reflector, but no
    global factor minimization is attempted: generic inputs use one reflector
    per column even when far fewer would do.
    """
    M = check_orthogonal(V)
    n = M.shape[0]
    R = M.copy()
    factors: list[Reflector] = []
    for j in range(n):
        x = R[j:, j]
        e1 = np.zeros(n - j)
        e1[0] = 1.0
        if np.linalg.norm(x - e1) <= QR_SKIP_RTOL * np.sqrt(n):
            continue
        sign = 1.0 if x[0] >= 0.0 else -1.0
        v = x + sign * np.linalg.norm(x) * e1  # sign chosen to avoid cancellation
        v /= np.linalg.norm(v)
        R[j:, :] -= 2.0 * np.outer(v, v @ R[j:, :])
        direction = np.zeros(n)
        direction[j:] = v
        factors.append(Reflector(direction))
    return HouseholderProduct(n, tuple(factors)), np.diag(R).copy()


def residual_upper_bound(V, m: int) -> float:
    """A priori bound on the greedy residual after m factors.

    Evaluates sqrt(2*(n - tr(V) - 2*floor(m/2) + sum of the m smallest
    eigenvalues of (V + V^T)/2)). Radicands within numerical noise of zero are
    clamped to zero. The bound is not tight for odd m.
    """
    M = check_orthogonal(V)
    n = M.shape[0]
    if not 0 <= m <= n:
        raise ValueError(f"m must be in [0, {n}], got {m}")
    eigenvalues = symmetric_eigendecomposition(symmetric_part(M)).eigenvalues
    radicand = 2.0 * (n - np.trace(M) - 2 * (m // 2) + eigenvalues[:m].sum())
    if radicand <= RADICAND_NOISE * n * np.finfo(float).eps:
        return 0.0
    return float(np.sqrt(radicand))


def min_factors(V) -> int:
    """Smallest number of reflection factors representing V exactly.

    Equals n minus the dimension of the fixed subspace of V; greedy_decompose
    at exact-recovery eps terminates with exactly this many factors.
    """
    M = check_orthogonal(V)
    return M.shape[0] - _fixed_subspace_dim(M)
