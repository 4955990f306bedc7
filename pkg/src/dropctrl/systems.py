"""Switched linear system model and signal-dependent system matrices.

The plant is x(t+1) = A x(t) + sigma(t) B u(t) with output y(t) = C x(t)
emitted only when sigma(t) = 1.  For a fixed dropout signal the model is
linear time varying, and reachability/observability are decided by the
rank of signal-masked block matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .signals import Signal

__all__ = [
    "SwitchedLinearSystem",
    "Trajectory",
    "Gramian",
    "simulate",
    "controllability_matrix",
    "observability_matrix",
    "reachability_gramian",
    "numerical_rank",
    "first_full_rank_time",
]

# A must be invertible for the model to be meaningful at every horizon
_INVERTIBILITY_RTOL = 1e-12


def _as_matrix(M, name: str) -> np.ndarray:
    arr = np.array(M, dtype=float)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a 2-D matrix, got shape {arr.shape}")
    return arr


class SwitchedLinearSystem:
    """Matrices (A, B, C) with A square and invertible."""

    __slots__ = ("A", "B", "C")

    def __init__(self, A, B, C):
        A = _as_matrix(A, "A")
        B = _as_matrix(B, "B")
        C = _as_matrix(C, "C")
        n = A.shape[0]
        if A.shape != (n, n):
            raise ValueError(f"A must be square, got {A.shape}")
        if B.shape[0] != n:
            raise ValueError(f"B must have {n} rows, got {B.shape}")
        if C.shape[1] != n:
            raise ValueError(f"C must have {n} columns, got {C.shape}")
        sv = np.linalg.svd(A, compute_uv=False)
        if sv[-1] <= _INVERTIBILITY_RTOL * max(sv[0], 1.0):
            raise ValueError("A is singular to working precision")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C", C)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[1]

    @property
    def p(self) -> int:
        return self.C.shape[0]

    def __setattr__(self, name, value):
        raise AttributeError("SwitchedLinearSystem is immutable")

    def __repr__(self):
        return f"SwitchedLinearSystem(n={self.n}, m={self.m}, p={self.p})"


@dataclass
class Trajectory:
    """States x(0..T) and outputs y(0..T-1); outputs are None at dropouts."""

    states: np.ndarray  # (T+1, n)
    outputs: list  # length T, entries (p,) arrays or None


@dataclass
class Gramian:
    """Finite-horizon reachability Gramian for one dropout signal."""

    W: np.ndarray
    horizon: int

    def __post_init__(self):
        W = np.asarray(self.W, dtype=float)
        scale = max(1.0, float(np.abs(W).max(initial=0.0)))
        if np.abs(W - W.T).max(initial=0.0) > 1e-9 * scale:
            raise ValueError("Gramian must be symmetric")
        eigs = np.linalg.eigvalsh((W + W.T) / 2.0)
        if eigs.size and eigs[0] < -1e-9 * scale:
            raise ValueError("Gramian must be positive semidefinite")
        self.W = (W + W.T) / 2.0


def simulate(sys: SwitchedLinearSystem, s: Signal, x0, u) -> Trajectory:
    """Roll the dropout-masked dynamics forward over the signal."""
    T = len(s)
    x0 = np.asarray(x0, dtype=float).reshape(sys.n)
    u = np.asarray(u, dtype=float)
    if u.ndim == 1:
        u = u.reshape(-1, sys.m)
    if u.shape != (T, sys.m):
        raise ValueError(f"expected {T} inputs of dimension {sys.m}, got {u.shape}")
    states = np.empty((T + 1, sys.n))
    states[0] = x0
    outputs: list = []
    for t in range(T):
        if s[t]:
            outputs.append(sys.C @ states[t])
            states[t + 1] = sys.A @ states[t] + sys.B @ u[t]
        else:
            outputs.append(None)
            states[t + 1] = sys.A @ states[t]
    return Trajectory(states=states, outputs=outputs)


def controllability_matrix(sys: SwitchedLinearSystem, s: Signal) -> np.ndarray:
    """Blocks [s(0) A^{T-1} B, ..., s(T-2) A B, s(T-1) B], shape n x (m T).

    Maps the stacked input vector to x(T) from zero initial state.  Powers
    are built by iterated multiplication; horizons stay small.
    """
    T = len(s)
    blocks = [None] * T
    P = sys.B
    for i in range(T - 1, -1, -1):
        blocks[i] = s[i] * P
        if i > 0:
            P = sys.A @ P
    return np.hstack(blocks)


def observability_matrix(sys: SwitchedLinearSystem, s: Signal) -> np.ndarray:
    """Stacked rows s(i) C A^i for i = 0..T-1, shape (p T) x n."""
    T = len(s)
    blocks = []
    M = sys.C
    for i in range(T):
        blocks.append(s[i] * M)
        if i < T - 1:
            M = M @ sys.A
    return np.vstack(blocks)


def reachability_gramian(sys: SwitchedLinearSystem, s: Signal) -> Gramian:
    """W = sum over successful steps of A^{T-1-i} B B' (A^{T-1-i})'."""
    Cm = controllability_matrix(sys, s)
    W = Cm @ Cm.T
    return Gramian(W=(W + W.T) / 2.0, horizon=len(s))


def numerical_rank(M, tol: float | None = None) -> int:
    """Count of singular values above tol (default max(dim) * eps * s_max)."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.size == 0:
        return 0
    sv = np.linalg.svd(M, compute_uv=False)
    if tol is None:
        tol = max(M.shape) * np.finfo(float).eps * sv[0]
    return int(np.count_nonzero(sv > tol))


def first_full_rank_time(
    sys: SwitchedLinearSystem, s: Signal, tol: float | None = None
) -> int | None:
    """Least t with the observability matrix over s(0..t) of full column rank.

    Returns None when no prefix achieves rank n (estimation infeasible for
    this signal at this horizon).
    """
    n = sys.n
    rows: list[np.ndarray] = []
    successes = 0
    M = sys.C
    for t in range(len(s)):
        if s[t]:
            rows.append(M)
            successes += 1
            # rank cannot reach n before p * successes >= n
            if successes * sys.p >= n and numerical_rank(np.vstack(rows), tol) == n:
                return t
        if t < len(s) - 1:
            M = M @ sys.A
    return None
