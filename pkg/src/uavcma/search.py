"""Throughput/delay tradeoff over the trajectory length."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .allocator import DEFAULT_EPSILON, SCHEMES, allocate, static_maxmin
from .delay import access_delays
from .model import Scenario

THREADS_ENV = "CMA_THREADS"


class InfeasibleToleranceError(ValueError):
    """No sweep point meets the RMS delay tolerance."""


@dataclass(frozen=True)
class TradeoffPoint:
    traj_length_norm: float
    traj_length: float
    max_min_throughput: float
    rms_delay: float
    scheme: str


@dataclass(frozen=True)
class SweepResult:
    points: tuple
    best: TradeoffPoint
    tolerance: float


def default_grid(d_bar_max: float = 2.0, step: float = 0.01) -> list:
    """``[0, step, 2*step, ..., d_bar_max]`` with values rounded to clean decimals."""
    if not step > 0:
        raise ValueError(f"step must be > 0, got {step}")
    if not d_bar_max >= 0:
        raise ValueError(f"d_bar_max must be >= 0, got {d_bar_max}")
    n = int(round(d_bar_max / step))
    if n * step > d_bar_max * (1 + 1e-12):
        n -= 1
    return [round(i * step, 12) for i in range(n + 1)]


def resolve_jobs(n_jobs: Optional[int] = None) -> int:
    """Worker count: explicit value, else ``$CMA_THREADS``, else 1."""
    if n_jobs is None:
        env = os.environ.get(THREADS_ENV, "").strip()
        if not env:
            return 1
        try:
            n_jobs = int(env)
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be a positive integer, got {env!r}") from None
    if n_jobs < 1:
        raise ValueError(f"worker count must be >= 1, got {n_jobs}")
    return n_jobs


def evaluate_point(scenario: Scenario, d_bar: float, scheme: str = "optimal",
                   epsilon: float = DEFAULT_EPSILON) -> TradeoffPoint:
    D = d_bar * scenario.span
    if d_bar == 0:
        return TradeoffPoint(0.0, 0.0, static_maxmin(scenario), 0.0, scheme)
    sc = scenario.with_traj_length(D)
    alloc = allocate(sc, scheme, epsilon)
    profile = access_delays(alloc, scenario.speed)
    return TradeoffPoint(d_bar, D, alloc.min_throughput, profile.rms, scheme)


def _evaluate(args):
    return evaluate_point(*args)


def _check_grid(grid):
    grid = [float(g) for g in grid]
    if not grid:
        raise ValueError("empty grid")
    if grid[0] < 0:
        raise ValueError("grid values must be >= 0")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly ascending")
    return grid


def sweep(scenario: Scenario, scheme: str = "optimal", d_bar_grid: Optional[Sequence[float]] = None,
          epsilon: float = DEFAULT_EPSILON, n_jobs: Optional[int] = None) -> list:
    """Evaluate one allocation scheme at each normalised trajectory length.

    ``d_bar = 0`` is the hovering UAV (static time sharing, zero access delay).
    Results come back in grid order whatever the worker count.
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    grid = _check_grid(default_grid() if d_bar_grid is None else d_bar_grid)
    tasks = [(scenario, g, scheme, epsilon) for g in grid]
    jobs = min(resolve_jobs(n_jobs), len(tasks))
    if jobs == 1:
        return [_evaluate(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_evaluate, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def best_under_tolerance(points: Sequence[TradeoffPoint], tolerance: float) -> TradeoffPoint:
    """Highest-throughput point whose RMS delay is within ``tolerance`` seconds.

    Ties go to the shorter trajectory.
    """
    if not points:
        raise ValueError("no points given")
    if not tolerance >= 0:
        raise ValueError(f"tolerance must be >= 0, got {tolerance}")
    best = None
    for p in sorted(points, key=lambda p: p.traj_length_norm):
        if p.rms_delay <= tolerance and (best is None or p.max_min_throughput > best.max_min_throughput):
            best = p
    if best is None:
        raise InfeasibleToleranceError(f"no point has RMS delay <= {tolerance} s")
    return best


def tradeoff(scenario: Scenario, tolerance: float, scheme: str = "optimal",
             d_bar_grid: Optional[Sequence[float]] = None, epsilon: float = DEFAULT_EPSILON,
             n_jobs: Optional[int] = None) -> SweepResult:
    points = sweep(scenario, scheme, d_bar_grid, epsilon, n_jobs)
    return SweepResult(tuple(points), best_under_tolerance(points, tolerance), float(tolerance))


def peak(points: Sequence[TradeoffPoint]) -> TradeoffPoint:
    """Unconstrained throughput maximum of a sweep."""
    return best_under_tolerance(points, float("inf"))
