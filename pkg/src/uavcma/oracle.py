"""Independent checks for the closed-form throughput and the balancing solver.

Nothing here is used by the solver itself: quadrature integrates the rate
numerically instead of using the antiderivative, and the brute-force search
enumerates delimiter grids instead of balancing neighbours.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import LinearParams, Scenario, place_terminals, rate, rate_antiderivative, to_linear


class QuadratureError(ArithmeticError):
    pass


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-13
    rel_tol: float = 1e-12
    max_subdivisions: int = 200_000

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be > 0")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


def adaptive_simpson(f, a: float, b: float, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Integrate a vectorised ``f`` over ``[a, b]`` by adaptive Simpson.

    All live subintervals are refined together, one level at a time. An
    interval is accepted when its two-half estimate agrees with the whole
    estimate to 15x its share of the tolerance; accepted values carry the
    Richardson correction.
    """
    if a == b:
        return 0.0
    sign = 1.0
    if a > b:
        a, b, sign = b, a, -1.0
    fa, fm, fb = f(np.array([a, 0.5 * (a + b), b], dtype=float))
    whole0 = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    tol0 = max(spec.abs_tol, spec.rel_tol * abs(whole0))

    lo = np.array([a])
    hi = np.array([b])
    f_lo = np.array([fa])
    f_mid = np.array([fm])
    f_hi = np.array([fb])
    whole = np.array([whole0])
    tol = np.array([tol0])
    total = 0.0
    used = 1
    while lo.size:
        mid = 0.5 * (lo + hi)
        ql = 0.5 * (lo + mid)
        qr = 0.5 * (mid + hi)
        vals = f(np.concatenate([ql, qr]))
        f_ql, f_qr = vals[: lo.size], vals[lo.size:]
        left = (mid - lo) / 6.0 * (f_lo + 4.0 * f_ql + f_mid)
        right = (hi - mid) / 6.0 * (f_mid + 4.0 * f_qr + f_hi)
        delta = left + right - whole
        done = np.abs(delta) <= 15.0 * tol
        # intervals too narrow to split further are accepted as they are
        done |= ~((lo < ql) & (ql < mid) & (mid < qr) & (qr < hi))
        total += float(np.sum((left + right + delta / 15.0)[done]))
        keep = ~done
        n_keep = int(keep.sum())
        if n_keep == 0:
            break
        used += 2 * n_keep
        if used > spec.max_subdivisions:
            raise QuadratureError(
                f"tolerance not met within {spec.max_subdivisions} subdivisions"
            )
        lo = np.concatenate([lo[keep], mid[keep]])
        hi = np.concatenate([mid[keep], hi[keep]])
        f_lo, f_mid, f_hi = (
            np.concatenate([f_lo[keep], f_mid[keep]]),
            np.concatenate([f_ql[keep], f_qr[keep]]),
            np.concatenate([f_mid[keep], f_hi[keep]]),
        )
        whole = np.concatenate([left[keep], right[keep]])
        tol = np.concatenate([tol[keep], tol[keep]]) / 2.0
    return sign * total


def quad_throughput(b_lo: float, b_hi: float, xk: float, traj_length: float,
                    params: LinearParams, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Segment throughput by numerical integration of the rate."""
    if not traj_length > 0:
        raise ValueError(f"traj_length must be > 0, got {traj_length}")
    if b_lo > b_hi:
        raise ValueError(f"segment bounds out of order: {b_lo} > {b_hi}")
    return adaptive_simpson(lambda x: rate(x, xk, params), b_lo, b_hi, spec) / traj_length


def brute_force_maxmin(scenario: Scenario, grid_n: int = 2000):
    """Exhaustive search over ordered delimiters on a uniform grid of ``grid_n`` points.

    Returns ``(delimiters, tau)`` with delimiters including both trajectory
    ends. Ties resolve to the lexicographically smallest tuple.
    """
    K = scenario.num_terminals
    if K not in (2, 3):
        raise ValueError(f"brute force supports 2 or 3 terminals, got {K}")
    if grid_n < 100:
        raise ValueError(f"grid_n must be >= 100, got {grid_n}")
    D = scenario.traj_length
    if not D > 0:
        raise ValueError("traj_length must be > 0")
    params = to_linear(scenario)
    xs = place_terminals(K, scenario.span).positions
    # grid_n points per axis; grids whose interval counts divide one
    # another share points exactly, since i/m == (c*i)/(c*m) in floating point
    m = grid_n - 1
    grid = -D / 2 + D * (np.arange(grid_n) / m)
    grid[-1] = D / 2
    # cumulative throughput of each terminal from the left end to every grid point
    cum = [(rate_antiderivative(grid, x, params) - rate_antiderivative(grid[0], x, params)) / D
           for x in xs]

    if K == 2:
        t1 = cum[0]
        t2 = cum[1][-1] - cum[1]
        score = np.minimum(t1, t2)
        i = int(np.argmax(score))
        return tuple(float(g) for g in (grid[0], grid[i], grid[-1])), float(score[i])

    t1 = cum[0][:, None]
    t2 = cum[1][None, :] - cum[1][:, None]
    t3 = (cum[2][-1] - cum[2])[None, :]
    score = np.minimum(np.minimum(t1, t2), t3)
    score[np.tril_indices(grid_n, k=-1)] = -np.inf
    flat = int(np.argmax(score))
    i, j = divmod(flat, grid_n)
    return tuple(float(g) for g in (grid[0], grid[i], grid[j], grid[-1])), float(score[i, j])

