"""Randomized validation study: degradation statistics over random plants.

For each sample a random system is drawn, the nominal (dropout-free)
performance and the worst-case performance under the dropout constraint
are computed, and the relative performance degradation

    RPD = 100 * (worst - nominal) / nominal

is recorded.  Samples rotate equally through three system-generation
recipes.  Randomness is fully reproducible: each sample gets its own
PCG64 stream spawned as SeedSequence(seed, spawn_key=(sample_index,)),
so results are independent of execution order and parallelism.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .lqr import LqrWeights, degraded_cost, lqr_cost, lti_gains, riccati_backward
from .automata import build_k_constraint_automaton, enumerate_admissible, minimal_signals_bfs
from .signals import Signal, minimal_filter
from .solvers import OPTIMAL, min_energy, min_fuel, min_fuel_energy, min_inf_norm
from .systems import (
    SwitchedLinearSystem,
    controllability_matrix,
    first_full_rank_time,
    numerical_rank,
    observability_matrix,
)
from .worstcase import (
    DEFAULT_EXHAUSTIVE_CAP,
    MINIMAL,
    worst_control_time,
    worst_energy,
    worst_estimation_time,
    worst_fixed_input_lqr,
    worst_fuel,
    worst_fuel_energy,
    worst_lqr,
)

__all__ = [
    "GENERATION_METHODS",
    "GENERATOR_NAME",
    "StudyConfig",
    "SampleRow",
    "StudyResult",
    "haar_orthogonal",
    "random_system",
    "rpd",
    "run_study",
]

GENERATION_METHODS = ("orthogonal_diag", "gaussian", "gaussian_x10")
GENERATOR_NAME = "numpy-pcg64/seedseq-spawn-per-sample"

STUDY_PROBLEMS = ("I", "II", "III", "V", "VI")


def haar_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed orthogonal matrix: QR of a Gaussian, signs fixed."""
    Z = rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    d = np.sign(np.diag(R))
    d[d == 0] = 1.0
    return Q * d


def _draw_state_matrix(n: int, method: str, rng: np.random.Generator) -> np.ndarray:
    if method == "orthogonal_diag":
        # nonzero integers in [-25, 25], scaled to a spectrum in [-2.5, 2.5]
        d = np.zeros(n, dtype=int)
        for i in range(n):
            v = 0
            while v == 0:
                v = int(rng.integers(-25, 26))
            d[i] = v
        V = haar_orthogonal(n, rng)
        return V.T @ np.diag(0.1 * d.astype(float)) @ V
    if method == "gaussian":
        return rng.standard_normal((n, n))
    if method == "gaussian_x10":
        return 10.0 * rng.standard_normal((n, n))
    raise ValueError(f"unknown generation method {method!r}")


def random_system(
    n: int,
    m: int,
    p: int,
    method: str,
    rng: np.random.Generator,
    max_rejects: int = 100,
    screen_horizon: int | None = None,
    rank_tol: float | None = None,
    reject_log: list | None = None,
) -> SwitchedLinearSystem:
    """Draw a controllable and observable system with an invertible A.

    B and C are standard normal; A follows the chosen recipe.  Draws
    failing the invertibility or the all-ones-signal rank screens are
    rejected and redrawn, up to max_rejects.
    """
    horizon = screen_horizon if screen_horizon is not None else n
    ones = Signal.ones(horizon)
    rejects = 0
    while True:
        A = _draw_state_matrix(n, method, rng)
        B = rng.standard_normal((n, m))
        C = rng.standard_normal((p, n))
        reason = None
        sv = np.linalg.svd(A, compute_uv=False)
        if sv[-1] <= 1e-12 * max(sv[0], 1.0):
            reason = "singular_A"
        else:
            sys = SwitchedLinearSystem(A, B, C)
            if numerical_rank(controllability_matrix(sys, ones), rank_tol) < n:
                reason = "uncontrollable"
            elif numerical_rank(observability_matrix(sys, ones), rank_tol) < n:
                reason = "unobservable"
            else:
                return sys
        rejects += 1
        if reject_log is not None:
            reject_log.append(reason)
        if rejects >= max_rejects:
            raise RuntimeError(
                f"gave up after {rejects} rejected draws (last reason: {reason})"
            )


def rpd(worst: float, nominal: float, tol: float = 1e-12) -> float:
    """Relative performance degradation in percent; nominal must be positive."""
    if not math.isfinite(nominal) or nominal <= tol:
        raise ValueError(f"nominal value {nominal} is not usably positive")
    return 100.0 * (worst - nominal) / nominal


@dataclass
class StudyConfig:
    problem: str
    k: int = 1
    n: int = 10
    m: int = 7
    p: int | None = None  # defaults to m (inputs/outputs drawn alike)
    samples: int = 50
    T: int = 12
    seed: int = 0
    mode: str = MINIMAL
    gamma1: float = 1.0
    gamma2: float = 0.0
    input_bound: float | None = None
    feas_tol: float = 1e-9
    rank_tol: float | None = None
    exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP
    parallel: int = 1

    def __post_init__(self):
        if self.problem not in STUDY_PROBLEMS:
            raise ValueError(f"problem must be one of {STUDY_PROBLEMS}")
        if self.samples < 1:
            raise ValueError("sample_count must be >= 1")
        if min(self.n, self.m, self.k, self.T) < 1:
            raise ValueError("dimensions, k and T must be positive")
        if self.p is None:
            self.p = self.m


@dataclass
class SampleRow:
    sample_id: int
    method: str
    rpd_percent: float | None
    nominal: float | None
    worst: float | None
    argmax_signal: str | None
    status: str  # "ok" or "discarded:<reason>"


@dataclass
class StudyResult:
    config: StudyConfig
    generator: str
    avg_rpd: float | None
    avg_time_fast: float
    avg_time_filter: float
    discarded_samples: int
    rows: list[SampleRow] = field(default_factory=list)
    reject_reasons: list[str] = field(default_factory=list)
    # full worst-case report per sample (None where the sample never got one)
    reports: list = field(default_factory=list)

    @property
    def retained(self) -> int:
        return sum(1 for r in self.rows if r.status == "ok")


def _sample_rng(seed: int, sample_index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(sample_index,))
    return np.random.Generator(np.random.PCG64(ss))


def _nominal_steps_estimation(sys, T, rank_tol) -> float | None:
    t = first_full_rank_time(sys, Signal.ones(T), tol=rank_tol)
    return None if t is None else float(t + 1)


def _nominal_steps_control(sys, T, x0, feas_tol, rank_tol) -> float | None:
    v = x0.copy()
    for t in range(T):
        v = sys.A @ v
        prefix = Signal.ones(t + 1)
        res = min_inf_norm(
            controllability_matrix(sys, prefix), -v, feas_tol=feas_tol, rank_tol=rank_tol
        )
        if res.status == OPTIMAL and res.value <= 1.0 + feas_tol:
            return float(t + 1)
    return None


def _input_norm_solver(cfg: StudyConfig):
    if cfg.gamma2 == 0.0:
        return lambda C, xf: min_fuel(
            C, xf, input_bound=cfg.input_bound, feas_tol=cfg.feas_tol, rank_tol=cfg.rank_tol
        )
    if cfg.gamma1 == 0.0:
        return lambda C, xf: min_energy(C, xf, feas_tol=cfg.feas_tol, rank_tol=cfg.rank_tol)
    return lambda C, xf: min_fuel_energy(
        C, xf, cfg.gamma1, cfg.gamma2, feas_tol=cfg.feas_tol, rank_tol=cfg.rank_tol
    )


def _evaluate_sample(cfg: StudyConfig, sys: SwitchedLinearSystem):
    """Return (nominal, worst, argmax, discard_reason, report)."""
    T = cfg.T
    ones_vec = np.ones(sys.n)
    if cfg.problem == "I":
        nominal = _nominal_steps_estimation(sys, T, cfg.rank_tol)
        if nominal is None:
            return None, None, None, "nominal_estimation_infeasible", None
        rep = worst_estimation_time(
            sys, cfg.k, T, mode=cfg.mode, rank_tol=cfg.rank_tol,
            cap=cfg.exhaustive_cap, parallel=cfg.parallel,
        )
        if not rep.feasible:
            return nominal, None, str(rep.argmax_signal), "worst_estimation_infeasible", rep
        return nominal, float(rep.info["worst_steps"]), str(rep.argmax_signal), None, rep
    if cfg.problem == "II":
        nominal = _nominal_steps_control(sys, T, ones_vec, cfg.feas_tol, cfg.rank_tol)
        if nominal is None:
            return None, None, None, "nominal_transfer_infeasible", None
        rep = worst_control_time(
            sys, cfg.k, T, ones_vec, mode=cfg.mode, feas_tol=cfg.feas_tol,
            rank_tol=cfg.rank_tol, cap=cfg.exhaustive_cap, parallel=cfg.parallel,
        )
        if not rep.feasible:
            return nominal, None, str(rep.argmax_signal), "worst_transfer_infeasible", rep
        return nominal, float(rep.info["worst_steps"]), str(rep.argmax_signal), None, rep
    if cfg.problem == "III":
        solver = _input_norm_solver(cfg)
        nom_res = solver(controllability_matrix(sys, Signal.ones(T)), ones_vec)
        if nom_res.status != OPTIMAL:
            return None, None, None, "nominal_input_design_infeasible", None
        nominal = float(nom_res.value)
        if cfg.gamma2 == 0.0:
            rep = worst_fuel(
                sys, cfg.k, T, ones_vec, mode=cfg.mode, input_bound=cfg.input_bound,
                feas_tol=cfg.feas_tol, rank_tol=cfg.rank_tol,
                cap=cfg.exhaustive_cap, parallel=cfg.parallel,
            )
        elif cfg.gamma1 == 0.0:
            rep = worst_energy(
                sys, cfg.k, T, ones_vec, mode=cfg.mode, feas_tol=cfg.feas_tol,
                rank_tol=cfg.rank_tol, cap=cfg.exhaustive_cap, parallel=cfg.parallel,
            )
        else:
            rep = worst_fuel_energy(
                sys, cfg.k, T, ones_vec, cfg.gamma1, cfg.gamma2, mode=cfg.mode,
                feas_tol=cfg.feas_tol, rank_tol=cfg.rank_tol,
                cap=cfg.exhaustive_cap, parallel=cfg.parallel,
            )
        if rep.info.get("failed_signals"):
            return nominal, None, str(rep.argmax_signal), "solver_failure", rep
        if not rep.feasible:
            return nominal, None, str(rep.argmax_signal), "worst_input_design_infeasible", rep
        return nominal, float(rep.worst_value), str(rep.argmax_signal), None, rep
    weights = LqrWeights.identity(sys.n, sys.m, T)
    if cfg.problem == "V":
        nominal = lqr_cost(riccati_backward(sys, Signal.ones(T), weights), ones_vec)
        rep = worst_lqr(
            sys, cfg.k, weights, ones_vec, mode=cfg.mode,
            cap=cfg.exhaustive_cap, parallel=cfg.parallel,
        )
        return nominal, float(rep.worst_value), str(rep.argmax_signal), None, rep
    # problem VI
    gains = lti_gains(sys, weights)
    nominal = degraded_cost(sys, gains, Signal.ones(T), weights, ones_vec)
    rep = worst_fixed_input_lqr(
        sys, cfg.k, weights, ones_vec, mode=cfg.mode,
        cap=cfg.exhaustive_cap, parallel=cfg.parallel,
    )
    return nominal, float(rep.worst_value), str(rep.argmax_signal), None, rep


def run_study(cfg: StudyConfig) -> StudyResult:
    """Run the per-sample pipeline; failures are logged rows, never aborts."""
    rows: list[SampleRow] = []
    reports: list = []
    reject_reasons: list[str] = []
    rpds: list[float] = []
    times_fast: list[float] = []
    times_filter: list[float] = []
    discarded = 0
    for i in range(cfg.samples):
        method = GENERATION_METHODS[i % len(GENERATION_METHODS)]
        rng = _sample_rng(cfg.seed, i)
        try:
            sys = random_system(
                cfg.n, cfg.m, cfg.p, method, rng,
                screen_horizon=max(cfg.n, cfg.T),
                rank_tol=cfg.rank_tol, reject_log=reject_reasons,
            )
            t0 = time.perf_counter()
            minimal_signals_bfs(cfg.k, cfg.T)
            times_fast.append(time.perf_counter() - t0)
            t0 = time.perf_counter()
            minimal_filter(
                enumerate_admissible(build_k_constraint_automaton(cfg.k), cfg.T)
            )
            times_filter.append(time.perf_counter() - t0)
            nominal, worst, argmax, reason, report = _evaluate_sample(cfg, sys)
            reports.append(report)
            if reason is None:
                try:
                    value = rpd(worst, nominal)
                except ValueError:
                    reason = "nominal_nonpositive"
            if reason is not None:
                discarded += 1
                rows.append(SampleRow(i, method, None, nominal, worst, argmax, f"discarded:{reason}"))
                continue
            rpds.append(value)
            rows.append(SampleRow(i, method, value, nominal, worst, argmax, "ok"))
        except Exception as exc:  # per-sample failures never abort the study
            discarded += 1
            reports.append(None)
            rows.append(
                SampleRow(i, method, None, None, None, None, f"discarded:error:{type(exc).__name__}")
            )
    return StudyResult(
        config=cfg,
        generator=GENERATOR_NAME,
        avg_rpd=(sum(rpds) / len(rpds)) if rpds else None,
        avg_time_fast=(sum(times_fast) / len(times_fast)) if times_fast else 0.0,
        avg_time_filter=(sum(times_filter) / len(times_filter)) if times_filter else 0.0,
        discarded_samples=discarded,
        rows=rows,
        reject_reasons=reject_reasons,
        reports=reports,
    )
