"""Finite-horizon LQR under dropout-masked actuation.

The backward difference Riccati recursion carries the signal: at a
dropout step the quadratic correction term vanishes and the update is the
pure Lyapunov step Q + A'PA.  Gains designed for the ideal loop can be
replayed through a lossy channel to price the degradation of a fixed
controller.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signals import Signal
from .systems import SwitchedLinearSystem

__all__ = [
    "LqrWeights",
    "RiccatiSolution",
    "GainSchedule",
    "riccati_backward",
    "lqr_cost",
    "lti_gains",
    "degraded_cost",
]

_SYM_TOL = 1e-10


def _check_symmetric(M: np.ndarray, name: str) -> np.ndarray:
    scale = max(1.0, float(np.abs(M).max(initial=0.0)))
    if np.abs(M - M.T).max(initial=0.0) > _SYM_TOL * scale:
        raise ValueError(f"{name} must be symmetric")
    return (M + M.T) / 2.0


class LqrWeights:
    """Stage weights Q >= 0, R > 0, terminal Q_f > 0 and horizon T."""

    __slots__ = ("Q", "R", "Qf", "T")

    def __init__(self, Q, R, Qf, T: int):
        Q = _check_symmetric(np.atleast_2d(np.asarray(Q, dtype=float)), "Q")
        R = _check_symmetric(np.atleast_2d(np.asarray(R, dtype=float)), "R")
        Qf = _check_symmetric(np.atleast_2d(np.asarray(Qf, dtype=float)), "Qf")
        if Q.shape != Qf.shape:
            raise ValueError("Q and Qf must have equal shape")
        tolQ = _SYM_TOL * max(1.0, float(np.abs(Q).max(initial=0.0)))
        if np.linalg.eigvalsh(Q)[0] < -tolQ:
            raise ValueError("Q must be positive semidefinite")
        if np.linalg.eigvalsh(R)[0] <= _SYM_TOL * max(1.0, float(np.abs(R).max())):
            raise ValueError("R must be positive definite")
        if np.linalg.eigvalsh(Qf)[0] <= _SYM_TOL * max(1.0, float(np.abs(Qf).max())):
            raise ValueError("Qf must be positive definite")
        if T < 1:
            raise ValueError("horizon T must be >= 1")
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "Qf", Qf)
        object.__setattr__(self, "T", int(T))

    @classmethod
    def identity(cls, n: int, m: int, T: int) -> "LqrWeights":
        return cls(np.eye(n), np.eye(m), np.eye(n), T)

    def __setattr__(self, name, value):
        raise AttributeError("LqrWeights is immutable")


@dataclass
class RiccatiSolution:
    """Cost-to-go matrices P(0..T); P(T) equals the terminal weight."""

    P: np.ndarray  # (T+1, n, n)

    def __post_init__(self):
        self.P = np.asarray(self.P, dtype=float)


@dataclass
class GainSchedule:
    """Feedback gains K(0..T-1) for u(t) = K(t) x(t)."""

    K: np.ndarray  # (T, m, n)

    def __post_init__(self):
        self.K = np.asarray(self.K, dtype=float)


def riccati_backward(sys: SwitchedLinearSystem, s: Signal, w: LqrWeights) -> RiccatiSolution:
    """Backward recursion from P(T) = Qf with the correction gated by the signal."""
    T = len(s)
    if T != w.T:
        raise ValueError(f"signal length {T} != weight horizon {w.T}")
    A, B = sys.A, sys.B
    n = sys.n
    P = np.empty((T + 1, n, n))
    P[T] = w.Qf
    for t in range(T - 1, -1, -1):
        Pn = P[t + 1]
        step = w.Q + A.T @ Pn @ A
        if s[t]:
            BtP = B.T @ Pn
            gain = np.linalg.solve(w.R + BtP @ B, BtP @ A)
            step = step - (A.T @ Pn @ B) @ gain
        P[t] = (step + step.T) / 2.0
    return RiccatiSolution(P=P)


def lqr_cost(sol: RiccatiSolution, x0) -> float:
    x0 = np.asarray(x0, dtype=float).ravel()
    return float(x0 @ sol.P[0] @ x0)


def lti_gains(sys: SwitchedLinearSystem, w: LqrWeights) -> GainSchedule:
    """Optimal gains for the dropout-free loop, K(t) = -(R+B'PB)^{-1} B'PA."""
    sol = riccati_backward(sys, Signal.ones(w.T), w)
    A, B = sys.A, sys.B
    K = np.empty((w.T, sys.m, sys.n))
    for t in range(w.T):
        BtP = B.T @ sol.P[t + 1]
        K[t] = -np.linalg.solve(w.R + BtP @ B, BtP @ A)
    return GainSchedule(K=K)


def degraded_cost(
    sys: SwitchedLinearSystem, gains: GainSchedule, s: Signal, w: LqrWeights, x0
) -> float:
    """Cost of replaying the ideal-loop gains through a lossy channel.

    Rolls x(t+1) = (A + s(t) B K(t)) x(t) and accumulates
    x'(Q + K'RK)x at each stage plus the terminal x'Qf x; the controller
    never re-plans after a dropout.
    """
    T = len(s)
    if T != w.T or gains.K.shape[0] != T:
        raise ValueError("signal, weights and gain schedule horizons must match")
    x = np.asarray(x0, dtype=float).ravel()
    cost = 0.0
    for t in range(T):
        K = gains.K[t]
        cost += float(x @ (w.Q + K.T @ w.R @ K) @ x)
        if s[t]:
            x = (sys.A + sys.B @ K) @ x
        else:
            x = sys.A @ x
    cost += float(x @ w.Qf @ x)
    return cost
