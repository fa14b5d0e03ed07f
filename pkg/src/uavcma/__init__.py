"""Max-min fair cyclical TDMA for a UAV base station, and its throughput/delay tradeoff."""

__version__ = "0.1.0"

from .allocator import (
    Allocation,
    ConvergenceError,
    allocate,
    balance,
    equal_allocation,
    maxmin_allocate,
    solve_boundary,
    static_maxmin,
)
from .delay import DelayProfile, access_delays, rms_delay
from .estimator import CyclicalTDMA
from .model import (
    LinearParams,
    Scenario,
    TerminalLayout,
    place_terminals,
    rate,
    rate_antiderivative,
    segment_throughput,
    to_linear,
)
from .search import SweepResult, TradeoffPoint, best_under_tolerance, sweep, tradeoff

__all__ = [
    "Allocation",
    "ConvergenceError",
    "CyclicalTDMA",
    "DelayProfile",
    "LinearParams",
    "Scenario",
    "SweepResult",
    "TerminalLayout",
    "TradeoffPoint",
    "access_delays",
    "allocate",
    "balance",
    "best_under_tolerance",
    "equal_allocation",
    "maxmin_allocate",
    "place_terminals",
    "rate",
    "rate_antiderivative",
    "rms_delay",
    "segment_throughput",
    "solve_boundary",
    "static_maxmin",
    "sweep",
    "to_linear",
    "tradeoff",
]
