"""Worst-case analysis over admissible dropout signals.

Every problem evaluates a per-signal measure and takes the maximum over a
candidate set: either the minimal signals (fast mode, justified by the
antitone behaviour of each measure in the support order) or the full
admissible language (exhaustive mode, the ground truth).  Infeasible
per-signal outcomes count as +infinity.  Reports are deterministic: the
candidate set is iterated in lexicographic order and the first attaining
signal (the lexicographically smallest) is reported as the argmax.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .automata import (
    Automaton,
    build_k_constraint_automaton,
    enumerate_admissible,
    minimal_signals_bfs,
)
from .lqr import LqrWeights, degraded_cost, lqr_cost, lti_gains, riccati_backward
from .signals import Signal, SignalSet, minimal_filter
from .solvers import (
    INFEASIBLE,
    MAX_ITERATIONS,
    OPTIMAL,
    min_energy,
    min_fuel,
    min_fuel_energy,
    min_inf_norm,
)
from .systems import (
    SwitchedLinearSystem,
    controllability_matrix,
    first_full_rank_time,
    reachability_gramian,
)

__all__ = [
    "MINIMAL",
    "EXHAUSTIVE",
    "DEFAULT_EXHAUSTIVE_CAP",
    "PerSignal",
    "WorstCaseReport",
    "Polytope",
    "candidate_signals",
    "worst_estimation_time",
    "worst_control_time",
    "worst_fuel",
    "worst_energy",
    "worst_fuel_energy",
    "polytope_reachable",
    "worst_lqr",
    "worst_fixed_input_lqr",
]

MINIMAL = "minimal"
EXHAUSTIVE = "exhaustive"
DEFAULT_EXHAUSTIVE_CAP = 2**20


@dataclass
class PerSignal:
    signal: Signal
    value: float  # math.inf encodes an infeasible subproblem
    status: str


@dataclass
class WorstCaseReport:
    problem: str
    mode: str
    worst_value: float
    argmax_signal: Signal | None
    per_signal: list[PerSignal]
    wallclock: float
    feasible: bool
    info: dict = field(default_factory=dict)


@dataclass
class Polytope:
    """Convex hull of finitely many vertices, stored as rows."""

    vertices: np.ndarray

    def __post_init__(self):
        V = np.atleast_2d(np.asarray(self.vertices, dtype=float))
        if V.shape[0] < 1:
            raise ValueError("polytope needs at least one vertex")
        self.vertices = V


def candidate_signals(
    constraint: Automaton | int,
    T: int,
    mode: str = MINIMAL,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
) -> SignalSet:
    """Resolve the signal set to scan: minimal candidates or the full language."""
    if mode not in (MINIMAL, EXHAUSTIVE):
        raise ValueError(f"unknown mode {mode!r}")
    if isinstance(constraint, int):
        if mode == MINIMAL:
            ss = minimal_signals_bfs(constraint, T)
        else:
            ss = enumerate_admissible(build_k_constraint_automaton(constraint), T, cap=cap)
    elif isinstance(constraint, Automaton):
        admissible = enumerate_admissible(constraint, T, cap=cap)
        ss = minimal_filter(admissible) if mode == MINIMAL else admissible
    else:
        raise TypeError("constraint must be an Automaton or an integer k")
    if len(ss) == 0:
        raise ValueError(f"the constraint admits no signals of length {T}")
    return ss


def _scan(
    problem: str,
    mode: str,
    signals: SignalSet,
    evaluate: Callable[[Signal], tuple[float, str]],
    parallel: int = 1,
    info: dict | None = None,
) -> WorstCaseReport:
    start = time.perf_counter()
    if parallel > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            results = list(pool.map(evaluate, signals))
    else:
        results = [evaluate(s) for s in signals]
    per_signal = [
        PerSignal(signal=s, value=v, status=st) for s, (v, st) in zip(signals, results)
    ]
    worst = -math.inf
    argmax = None
    for entry in per_signal:  # lexicographic order; first attainer wins ties
        if entry.value > worst:
            worst = entry.value
            argmax = entry.signal
    return WorstCaseReport(
        problem=problem,
        mode=mode,
        worst_value=worst,
        argmax_signal=argmax,
        per_signal=per_signal,
        wallclock=time.perf_counter() - start,
        feasible=math.isfinite(worst),
        info=dict(info or {}),
    )


def worst_estimation_time(
    sys: SwitchedLinearSystem,
    constraint: Automaton | int,
    T: int,
    mode: str = MINIMAL,
    rank_tol: float | None = None,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
    parallel: int = 1,
) -> WorstCaseReport:
    """Problem I: worst first time the masked observability matrix reaches rank n."""
    signals = candidate_signals(constraint, T, mode, cap)

    def evaluate(s: Signal) -> tuple[float, str]:
        t = first_full_rank_time(sys, s, tol=rank_tol)
        return (math.inf, INFEASIBLE) if t is None else (float(t), OPTIMAL)

    report = _scan("I", mode, signals, evaluate, parallel)
    if report.feasible:
        report.info["worst_t_index"] = int(report.worst_value)
        report.info["worst_steps"] = int(report.worst_value) + 1
    return report


def worst_control_time(
    sys: SwitchedLinearSystem,
    constraint: Automaton | int,
    T: int,
    x0,
    mode: str = MINIMAL,
    feas_tol: float = 1e-9,
    rank_tol: float | None = None,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
    parallel: int = 1,
) -> WorstCaseReport:
    """Problem II: worst minimum time to park the state at the origin.

    Candidate horizons are scanned in increasing order; horizon t is
    feasible for a signal when the unit-box input program reaching
    x(t+1) = 0 exists, i.e. the least infinity-norm solution of
    C u = -A^{t+1} x0 over the prefix s(0..t) has value <= 1.
    """
    signals = candidate_signals(constraint, T, mode, cap)
    x0 = np.asarray(x0, dtype=float).ravel()
    # targets[t] = -A^{t+1} x0
    targets = []
    v = x0.copy()
    for _ in range(T):
        v = sys.A @ v
        targets.append(-v)

    def evaluate(s: Signal) -> tuple[float, str]:
        for t in range(T):
            prefix = Signal(s.bits[: t + 1])
            res = min_inf_norm(
                controllability_matrix(sys, prefix),
                targets[t],
                feas_tol=feas_tol,
                rank_tol=rank_tol,
            )
            if res.status == OPTIMAL and res.value <= 1.0 + feas_tol:
                return float(t), OPTIMAL
        return math.inf, INFEASIBLE

    report = _scan("II", mode, signals, evaluate, parallel)
    if report.feasible:
        report.info["worst_t_index"] = int(report.worst_value)
        report.info["worst_steps"] = int(report.worst_value) + 1
    return report


def _worst_input_norm(
    problem: str,
    solver: Callable[[np.ndarray], object],
    sys: SwitchedLinearSystem,
    constraint: Automaton | int,
    T: int,
    mode: str,
    cap: int,
    parallel: int,
    info: dict,
) -> WorstCaseReport:
    signals = candidate_signals(constraint, T, mode, cap)

    def evaluate(s: Signal) -> tuple[float, str]:
        res = solver(controllability_matrix(sys, s))
        if res.status == INFEASIBLE or res.value is None:
            return math.inf, res.status
        return float(res.value), res.status

    report = _scan(problem, mode, signals, evaluate, parallel, info)
    failed = [str(e.signal) for e in report.per_signal if e.status == MAX_ITERATIONS]
    if failed:
        report.info["failed_signals"] = failed
    return report


def worst_fuel(
    sys: SwitchedLinearSystem,
    constraint: Automaton | int,
    T: int,
    x_f,
    mode: str = MINIMAL,
    input_bound: float | None = None,
    feas_tol: float = 1e-9,
    rank_tol: float | None = None,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
    parallel: int = 1,
) -> WorstCaseReport:
    """Problem III with a pure 1-norm objective (per-signal LP)."""
    x_f = np.asarray(x_f, dtype=float).ravel()
    return _worst_input_norm(
        "III",
        lambda C: min_fuel(C, x_f, input_bound=input_bound, feas_tol=feas_tol, rank_tol=rank_tol),
        sys,
        constraint,
        T,
        mode,
        cap,
        parallel,
        {"objective": "fuel", "input_bound": input_bound},
    )


def worst_energy(
    sys: SwitchedLinearSystem,
    constraint: Automaton | int,
    T: int,
    x_f,
    mode: str = MINIMAL,
    feas_tol: float = 1e-9,
    rank_tol: float | None = None,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
    parallel: int = 1,
) -> WorstCaseReport:
    """Problem III with a pure 2-norm objective (per-signal least-norm)."""
    x_f = np.asarray(x_f, dtype=float).ravel()
    return _worst_input_norm(
        "III",
        lambda C: min_energy(C, x_f, feas_tol=feas_tol, rank_tol=rank_tol),
        sys,
        constraint,
        T,
        mode,
        cap,
        parallel,
        {"objective": "energy"},
    )


def worst_fuel_energy(
    sys: SwitchedLinearSystem,
    constraint: Automaton | int,
    T: int,
    x_f,
    gamma1: float,
    gamma2: float,
    mode: str = MINIMAL,
    feas_tol: float = 1e-9,
    rank_tol: float | None = None,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
    parallel: int = 1,
) -> WorstCaseReport:
    """Problem III with the combined weighted 1-norm + 2-norm objective."""
    x_f = np.asarray(x_f, dtype=float).ravel()
    return _worst_input_norm(
        "III",
        lambda C: min_fuel_energy(
            C, x_f, gamma1, gamma2, feas_tol=feas_tol, rank_tol=rank_tol
        ),
        sys,
        constraint,
        T,
        mode,
        cap,
        parallel,
        {"objective": "fuel+energy", "gamma1": gamma1, "gamma2": gamma2},
    )


def polytope_reachable(
    sys: SwitchedLinearSystem,
    constraint: Automaton | int,
    T: int,
    poly: Polytope,
    mode: str = MINIMAL,
    tol: float = 1e-9,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
    parallel: int = 1,
) -> tuple[bool, WorstCaseReport]:
    """Problem IV: is every vertex inside every unit-energy reachable ellipsoid?

    The per-signal value is the largest quadratic form v' W^+ v over the
    vertices; a vertex with a component outside the Gramian's range is
    unreachable and scores +infinity.  Containment holds when the worst
    value is at most 1 (+ tol).
    """
    V = poly.vertices
    if V.shape[1] != sys.n:
        raise ValueError(f"vertices must have dimension {sys.n}")

    def evaluate(s: Signal) -> tuple[float, str]:
        W = reachability_gramian(sys, s).W
        eigvals, eigvecs = np.linalg.eigh(W)
        lam_max = float(eigvals[-1]) if eigvals.size else 0.0
        cut = max(lam_max, 1.0) * len(eigvals) * np.finfo(float).eps
        in_range = eigvals > cut
        worst = 0.0
        for v in V:
            nv = float(np.linalg.norm(v))
            if nv == 0.0:
                continue
            coeff = eigvecs.T @ v
            if np.linalg.norm(coeff[~in_range]) > 1e-9 * nv:
                return math.inf, "unreachable_vertex"
            form = float(np.sum(coeff[in_range] ** 2 / eigvals[in_range]))
            worst = max(worst, form)
        return worst, OPTIMAL

    signals = candidate_signals(constraint, T, mode, cap)
    report = _scan("IV", mode, signals, evaluate, parallel, {"tolerance": tol})
    reachable = report.worst_value <= 1.0 + tol
    report.info["reachable"] = reachable
    report.feasible = reachable
    return reachable, report


def worst_lqr(
    sys: SwitchedLinearSystem,
    constraint: Automaton | int,
    weights: LqrWeights,
    x0,
    mode: str = MINIMAL,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
    parallel: int = 1,
) -> WorstCaseReport:
    """Problem V: worst optimal cost x0' P(0) x0 of the per-signal recursion."""
    x0 = np.asarray(x0, dtype=float).ravel()
    signals = candidate_signals(constraint, weights.T, mode, cap)

    def evaluate(s: Signal) -> tuple[float, str]:
        return lqr_cost(riccati_backward(sys, s, weights), x0), OPTIMAL

    return _scan("V", mode, signals, evaluate, parallel)


def worst_fixed_input_lqr(
    sys: SwitchedLinearSystem,
    constraint: Automaton | int,
    weights: LqrWeights,
    x0,
    mode: str = MINIMAL,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
    parallel: int = 1,
) -> WorstCaseReport:
    """Problem VI: worst degraded cost of the ideal-loop gains under dropouts.

    Minimal mode is a heuristic here (the degraded cost is not proven
    antitone in the support order); exhaustive mode is the ground truth,
    so minimal-mode reports carry a warning.
    """
    x0 = np.asarray(x0, dtype=float).ravel()
    gains = lti_gains(sys, weights)
    signals = candidate_signals(constraint, weights.T, mode, cap)

    def evaluate(s: Signal) -> tuple[float, str]:
        return degraded_cost(sys, gains, s, weights, x0), OPTIMAL

    info = {}
    if mode == MINIMAL:
        info["warning"] = (
            "minimal-signal search for the fixed-gain degraded cost is heuristic; "
            "run exhaustive mode for a certified worst case"
        )
    return _scan("VI", mode, signals, evaluate, parallel, info)
