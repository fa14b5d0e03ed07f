"""Max-min fair segment allocation for cyclical TDMA.

The one-way trajectory ``[-D/2, D/2]`` is cut into K contiguous segments by
delimiters ``b_0 < b_1 < ... < b_K``; terminal k is served while the UAV is
over segment k, on both the outbound and the return leg.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .model import (
    LinearParams,
    LinkModel,
    Scenario,
    TerminalLayout,
    place_terminals,
    rate,
    to_linear,
)

DEFAULT_EPSILON = 1e-5
DEFAULT_XTOL = 1e-9
MAX_ITER = 1_000_000
SCHEMES = ("optimal", "equal")


class ConvergenceError(RuntimeError):
    """Raised when the balancing loop exhausts its iteration budget."""


@dataclass(frozen=True)
class Allocation:
    delimiters: np.ndarray
    throughputs: np.ndarray
    min_throughput: float
    portions: np.ndarray
    iterations: int
    positions: np.ndarray
    traj_length: float
    scheme: str = "optimal"

    @property
    def num_terminals(self) -> int:
        return len(self.throughputs)

    @property
    def spread(self) -> float:
        return float(self.throughputs.max() - self.throughputs.min())


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


def bisect_increasing(func: Callable[[float], float], lo: float, hi: float,
                      xtol: float = DEFAULT_XTOL) -> float:
    """Root of a non-decreasing ``func`` on ``[lo, hi]`` by bisection.

    Stops once the bracket is narrower than ``xtol`` or can no longer be
    split in floating point (``xtol=0`` runs to full resolution). If there is
    no sign change the nearer endpoint is returned.
    """
    if lo > hi:
        raise ValueError(f"empty bracket [{lo}, {hi}]")
    if lo == hi:
        return lo
    if func(lo) >= 0:
        return lo
    if func(hi) <= 0:
        return hi
    while hi - lo >= xtol:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        if func(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _boundary(link: LinkModel, x_left: float, x_right: float,
              b_prev: float, b_next: float, xtol: float) -> float:
    R_prev = link.antiderivative(b_prev, x_left)
    R_next = link.antiderivative(b_next, x_right)
    anti = link.antiderivative

    def gap(b):
        return (anti(b, x_left) - R_prev) - (R_next - anti(b, x_right))

    return bisect_increasing(gap, b_prev, b_next, xtol)


def solve_boundary(k: int, b_prev: float, b_next: float, layout: TerminalLayout | Sequence[float],
                   params: LinearParams, xtol: float = DEFAULT_XTOL) -> float:
    """Place delimiter ``b_k`` so terminals k and k+1 (1-based) get equal throughput.

    ``b_prev`` and ``b_next`` are the fixed neighbouring delimiters.
    """
    positions = tuple(layout)
    if not 1 <= k <= len(positions) - 1:
        raise ValueError(f"boundary index must be in [1, {len(positions) - 1}], got {k}")
    if b_prev > b_next:
        raise ValueError(f"b_prev > b_next ({b_prev} > {b_next})")
    return _boundary(LinkModel(params), positions[k - 1], positions[k], b_prev, b_next, xtol)


def uniform_delimiters(num_terminals: int, traj_length: float) -> list:
    half = traj_length / 2.0
    b = [-half + k * (traj_length / num_terminals) for k in range(num_terminals + 1)]
    b[0], b[-1] = -half, half
    return b


def _check_traj_length(traj_length):
    if not traj_length > 0:
        raise ValueError(
            f"traj_length must be > 0 (got {traj_length}); use static_maxmin for a hovering UAV"
        )


def balance(positions: Sequence[float], traj_length: float, params: LinearParams,
            epsilon: float = DEFAULT_EPSILON, xtol: float = DEFAULT_XTOL,
            max_iter: int = MAX_ITER,
            callback: Optional[Callable[[int, Sequence[float], float], None]] = None) -> Allocation:
    """Largest-gap balancing of neighbour throughputs.

    Starts from equal segments. Each pass finds the neighbour pair with the
    largest throughput gap (lowest index on ties) and moves their shared
    delimiter so both get the same throughput. Stops when every neighbour gap
    is below ``epsilon``.

    ``callback(pass_index, throughputs, largest_gap)`` is invoked before
    each convergence test.
    """
    _check_traj_length(traj_length)
    if not epsilon > 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    xs = [float(x) for x in positions]
    K = len(xs)
    if K < 1:
        raise ValueError("at least one terminal is required")
    D = float(traj_length)
    link = LinkModel(params)
    anti = link.antiderivative
    b = uniform_delimiters(K, D)
    theta = [(anti(b[k + 1], xs[k]) - anti(b[k], xs[k])) / D for k in range(K)]

    n = 0
    while K > 1:
        gaps = [abs(theta[k + 1] - theta[k]) for k in range(K - 1)]
        zeta = max(gaps)
        k0 = gaps.index(zeta)
        if callback is not None:
            callback(n, tuple(theta), zeta)
        if zeta < epsilon:
            break
        if n >= max_iter:
            raise ConvergenceError(
                f"no convergence after {max_iter} passes (largest gap {zeta:.3e})"
            )
        b[k0 + 1] = _boundary(link, xs[k0], xs[k0 + 1], b[k0], b[k0 + 2], xtol)
        # only the two segments sharing the moved delimiter change
        for k in (k0, k0 + 1):
            theta[k] = (anti(b[k + 1], xs[k]) - anti(b[k], xs[k])) / D
        n += 1

    return Allocation(
        delimiters=_frozen(b),
        throughputs=_frozen(theta),
        min_throughput=min(theta),
        portions=_frozen([(b[k + 1] - b[k]) / D for k in range(K)]),
        iterations=n,
        positions=_frozen(xs),
        traj_length=D,
        scheme="optimal",
    )


def equal_split(positions: Sequence[float], traj_length: float, params: LinearParams) -> Allocation:
    _check_traj_length(traj_length)
    xs = [float(x) for x in positions]
    K = len(xs)
    D = float(traj_length)
    link = LinkModel(params)
    b = uniform_delimiters(K, D)
    theta = [(link.antiderivative(b[k + 1], xs[k]) - link.antiderivative(b[k], xs[k])) / D
             for k in range(K)]
    return Allocation(
        delimiters=_frozen(b),
        throughputs=_frozen(theta),
        min_throughput=min(theta),
        portions=_frozen([1.0 / K] * K),
        iterations=0,
        positions=_frozen(xs),
        traj_length=D,
        scheme="equal",
    )


def maxmin_allocate(scenario: Scenario, epsilon: float = DEFAULT_EPSILON,
                    xtol: float = DEFAULT_XTOL, max_iter: int = MAX_ITER,
                    callback=None) -> Allocation:
    layout = place_terminals(scenario.num_terminals, scenario.span)
    return balance(layout.positions, scenario.traj_length, to_linear(scenario),
                   epsilon=epsilon, xtol=xtol, max_iter=max_iter, callback=callback)


def equal_allocation(scenario: Scenario) -> Allocation:
    layout = place_terminals(scenario.num_terminals, scenario.span)
    return equal_split(layout.positions, scenario.traj_length, to_linear(scenario))


def allocate(scenario: Scenario, scheme: str = "optimal", epsilon: float = DEFAULT_EPSILON) -> Allocation:
    if scheme == "optimal":
        return maxmin_allocate(scenario, epsilon=epsilon)
    if scheme == "equal":
        return equal_allocation(scenario)
    raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")


def static_rate_limit(positions: Sequence[float], params: LinearParams, hover_at: float = 0.0) -> float:
    """Max-min throughput with the UAV hovering at ``hover_at``.

    Time shares proportional to 1/r_k equalise the terminals, giving the
    harmonic combination 1 / sum(1/r_k).
    """
    return 1.0 / math.fsum(1.0 / rate(hover_at, x, params) for x in positions)


def static_maxmin(scenario: Scenario) -> float:
    layout = place_terminals(scenario.num_terminals, scenario.span)
    return static_rate_limit(layout.positions, to_linear(scenario))
