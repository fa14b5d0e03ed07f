import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uavcma import (
    ConvergenceError,
    Scenario,
    equal_allocation,
    maxmin_allocate,
    place_terminals,
    rate_antiderivative,
    segment_throughput,
    solve_boundary,
    static_maxmin,
    to_linear,
)
from uavcma.allocator import allocate, bisect_increasing, uniform_delimiters
from uavcma.oracle import brute_force_maxmin


def _g(b, k, b_prev, b_next, xs, params):
    left = rate_antiderivative(b, xs[k - 1], params) - rate_antiderivative(b_prev, xs[k - 1], params)
    right = rate_antiderivative(b_next, xs[k], params) - rate_antiderivative(b, xs[k], params)
    return left - right


def test_bisect_increasing():
    root = bisect_increasing(lambda x: x**3 - 2.0, 0.0, 3.0, xtol=1e-12)
    assert root == pytest.approx(2 ** (1 / 3), abs=1e-11)
    assert bisect_increasing(lambda x: x, 4.0, 4.0) == 4.0
    with pytest.raises(ValueError):
        bisect_increasing(lambda x: x, 1.0, 0.0)


def test_bisect_full_resolution():
    root = bisect_increasing(lambda x: x - 0.1, -1.0, 1.0, xtol=0.0)
    assert abs(root - 0.1) <= 2 * np.spacing(0.1)


def test_solve_boundary_symmetric_pair():
    sc = Scenario(2, 1000.0, traj_length=500.0)
    b = solve_boundary(1, -250.0, 250.0, place_terminals(2, 1000.0), to_linear(sc))
    assert b == pytest.approx(0.0, abs=1e-8)


def test_solve_boundary_degenerate_bracket(params):
    layout = place_terminals(10, 1000.0)
    assert solve_boundary(3, 17.0, 17.0, layout, params) == 17.0


def test_solve_boundary_rejects(params):
    layout = place_terminals(10, 1000.0)
    with pytest.raises(ValueError):
        solve_boundary(3, 5.0, 1.0, layout, params)
    with pytest.raises(ValueError):
        solve_boundary(10, -1.0, 1.0, layout, params)


def test_solve_boundary_unique_sign_change(params):
    # grid scan of the balance function: exactly one sign change, at the solver's root
    layout = place_terminals(10, 1000.0)
    xs = layout.positions
    D = 500.0
    b_prev, b_next = -D / 2 + 4 * D / 10, -D / 2 + 6 * D / 10
    grid = np.linspace(b_prev, b_next, 10_000)
    g = np.array([_g(b, 5, b_prev, b_next, xs, params) for b in grid])
    changes = np.flatnonzero(np.diff(np.sign(g)) != 0)
    assert len(changes) == 1
    root = solve_boundary(5, b_prev, b_next, layout, params)
    i = changes[0]
    assert grid[i] <= root <= grid[i + 1]
    assert abs(_g(root, 5, b_prev, b_next, xs, params)) < 1e-6


def test_default_allocation_matches_reported_value(default_scenario):
    alloc = maxmin_allocate(default_scenario)
    assert alloc.min_throughput == pytest.approx(0.4663, abs=1e-4)
    assert alloc.iterations > 0


def test_allocation_invariants(default_scenario, params):
    alloc = maxmin_allocate(default_scenario)
    b = alloc.delimiters
    D = default_scenario.traj_length
    assert b[0] == -D / 2 and b[-1] == D / 2
    assert np.all(np.diff(b) >= 0)
    assert math.fsum(alloc.portions) == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(alloc.portions, np.diff(b) / D, rtol=0, atol=1e-15)
    recomputed = [segment_throughput(b[k], b[k + 1], x, D, params) for k, x in enumerate(alloc.positions)]
    assert np.array_equal(recomputed, alloc.throughputs)
    assert alloc.min_throughput == alloc.throughputs.min()
    assert alloc.spread <= 9 * 1e-5


def test_two_terminals_split_at_origin():
    sc = Scenario(2, 800.0, traj_length=600.0)
    alloc = maxmin_allocate(sc)
    assert alloc.delimiters[1] == pytest.approx(0.0, abs=1e-6)
    assert alloc.throughputs[0] == pytest.approx(alloc.throughputs[1], abs=1e-5)
    eq = equal_allocation(sc)
    assert np.allclose(eq.delimiters, alloc.delimiters, atol=1e-6)
    assert eq.min_throughput == pytest.approx(alloc.min_throughput, abs=1e-5)


def test_single_terminal_gets_everything():
    sc = Scenario(1, 0.0, traj_length=400.0)
    alloc = maxmin_allocate(sc)
    assert alloc.iterations == 0
    assert list(alloc.delimiters) == [-200.0, 200.0]
    assert list(alloc.portions) == [1.0]


def test_rejects_zero_trajectory(default_scenario):
    with pytest.raises(ValueError):
        maxmin_allocate(default_scenario.with_traj_length(0.0))
    with pytest.raises(ValueError):
        equal_allocation(default_scenario.with_traj_length(0.0))
    with pytest.raises(ValueError):
        allocate(default_scenario, "round-robin")


def test_iteration_cap(default_scenario):
    with pytest.raises(ConvergenceError):
        maxmin_allocate(default_scenario, max_iter=3)


def test_default_allocation_symmetric(default_scenario):
    b = maxmin_allocate(default_scenario).delimiters
    assert np.allclose(b, -b[::-1], atol=1e-6)


def test_middle_terminals_get_shorter_segments(default_scenario):
    d = maxmin_allocate(default_scenario).portions
    assert max(d[4], d[5]) < min(d[0], d[9])


def test_equal_allocation(default_scenario):
    alloc = equal_allocation(default_scenario.with_traj_length(1110.0))
    assert np.all(alloc.portions == 1 / 10)
    assert np.allclose(np.diff(alloc.delimiters), 111.0, atol=1e-9)
    assert alloc.min_throughput == pytest.approx(0.6523, abs=1e-4)
    assert alloc.iterations == 0


def test_static_maxmin_values(default_scenario):
    assert static_maxmin(default_scenario) == pytest.approx(0.3488, abs=1e-4)
    # independent harmonic evaluation of the ten hover rates over a 2 km span
    assert static_maxmin(Scenario(10, 2000.0)) == pytest.approx(0.18478063588182658, rel=1e-12)
    one = Scenario(1, 0.0)
    assert static_maxmin(one) == pytest.approx(math.log2(1 + 1e6 / 100.0**2), rel=1e-14)


def test_static_is_short_trajectory_limit(default_scenario):
    tau = maxmin_allocate(default_scenario.with_traj_length(1.0)).min_throughput
    assert tau == pytest.approx(static_maxmin(default_scenario), abs=1e-3)


@pytest.mark.parametrize("K, span, D", [(2, 1000.0, 500.0), (3, 1000.0, 500.0), (3, 600.0, 900.0)])
def test_no_grid_point_beats_balancing(K, span, D):
    sc = Scenario(K, span, traj_length=D)
    tau = maxmin_allocate(sc).min_throughput
    _, brute = brute_force_maxmin(sc, 1001)
    assert brute <= tau + (K - 1) * 1e-5


def test_brute_force_converges_to_balancing():
    sc = Scenario(3, 1000.0, traj_length=500.0)
    tau = maxmin_allocate(sc, epsilon=1e-12, xtol=0.0).min_throughput
    _, brute = brute_force_maxmin(sc, 4001)
    assert 0 <= tau - brute < 1e-4


def test_spread_never_grows_though_largest_gap_can(default_scenario):
    gaps, spreads = [], []

    def watch(n, theta, zeta):
        gaps.append(zeta)
        spreads.append(max(theta) - min(theta))

    maxmin_allocate(default_scenario, callback=watch)
    assert gaps[-1] < 1e-5
    assert all(b <= a + 1e-12 for a, b in zip(spreads, spreads[1:]))
    # equalising one pair can widen the gaps to its outer neighbours
    assert any(b > a for a, b in zip(gaps, gaps[1:]))


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 12), st.floats(200, 3000), st.floats(50, 500), st.floats(0.05, 2.0))
def test_balanced_allocation_properties(K, span, H, d_bar):
    sc = Scenario(K, span, altitude=H, traj_length=d_bar * span)
    alloc = maxmin_allocate(sc)
    assert np.all(np.diff(alloc.delimiters) >= 0)
    assert alloc.spread <= (K - 1) * 1e-5
    assert math.fsum(alloc.portions) == pytest.approx(1.0, abs=1e-12)
    assert alloc.min_throughput >= equal_allocation(sc).min_throughput - 1e-9


def test_uniform_delimiters_exact_ends():
    b = uniform_delimiters(7, 333.3)
    assert b[0] == -333.3 / 2 and b[-1] == 333.3 / 2
    assert len(b) == 8
