"""Link model for a UAV base station flying back and forth over a line of terminals.

Units: positions and lengths in meters, speed in m/s, power in dBm, reference
SNR in dB, rates in bps/Hz.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class Scenario:
    """Complete input description of one deployment."""

    num_terminals: int
    span: float
    altitude: float = 100.0
    power_dbm: float = 10.0
    ref_snr_db: float = 80.0
    speed: float = 30.0
    traj_length: float = 0.0

    def __post_init__(self):
        if int(self.num_terminals) != self.num_terminals or self.num_terminals < 1:
            raise ValueError(f"num_terminals must be an integer >= 1, got {self.num_terminals!r}")
        if self.num_terminals >= 2 and not self.span > 0:
            raise ValueError(f"span must be > 0 with two or more terminals, got {self.span!r}")
        if not self.altitude > 0:
            raise ValueError(f"altitude must be > 0, got {self.altitude!r}")
        if not self.speed > 0:
            raise ValueError(f"speed must be > 0, got {self.speed!r}")
        if not self.traj_length >= 0:
            raise ValueError(f"traj_length must be >= 0, got {self.traj_length!r}")
        for name in ("span", "power_dbm", "ref_snr_db", "traj_length"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        object.__setattr__(self, "num_terminals", int(self.num_terminals))

    @property
    def traj_length_norm(self) -> float:
        return self.traj_length / self.span

    @property
    def period(self) -> float:
        """Round-trip flight time 2D/V in seconds."""
        return 2.0 * self.traj_length / self.speed

    def with_traj_length(self, traj_length: float) -> "Scenario":
        return Scenario(
            self.num_terminals, self.span, self.altitude, self.power_dbm,
            self.ref_snr_db, self.speed, traj_length,
        )


@dataclass(frozen=True)
class LinearParams:
    """Link constants in linear scale: P*gamma0 (watts-referenced) and altitude H."""

    snr_product: float
    altitude: float

    def __post_init__(self):
        if not self.snr_product > 0:
            raise ValueError("snr_product must be > 0")
        if not self.altitude > 0:
            raise ValueError("altitude must be > 0")

    @property
    def peak_rate(self) -> float:
        """Rate with the UAV directly overhead."""
        return math.log2(1.0 + self.snr_product / self.altitude**2)


@dataclass(frozen=True)
class TerminalLayout:
    positions: tuple

    def __len__(self):
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)

    def __getitem__(self, k):
        return self.positions[k]


def link_params(power_dbm: float, ref_snr_db: float, altitude: float) -> LinearParams:
    # dBm -> W, so the product is referenced to a 1 W transmitter
    watts = 10.0 ** ((power_dbm - 30.0) / 10.0)
    return LinearParams(watts * 10.0 ** (ref_snr_db / 10.0), float(altitude))


def to_linear(scenario: Scenario) -> LinearParams:
    return link_params(scenario.power_dbm, scenario.ref_snr_db, scenario.altitude)


def place_terminals(num_terminals: int, span: float) -> TerminalLayout:
    """Equally spaced terminals covering ``[-span/2, span/2]``.

    A single terminal sits at the origin.
    """
    if num_terminals < 1:
        raise ValueError(f"num_terminals must be >= 1, got {num_terminals}")
    if num_terminals == 1:
        return TerminalLayout((0.0,))
    if not span > 0:
        raise ValueError(f"span must be > 0 with two or more terminals, got {span}")
    step = span / (num_terminals - 1)
    half = span / 2.0
    positions = [-half + k * step for k in range(num_terminals)]
    # exact mirror pairs; the middle one of an odd layout is exactly zero
    for k in range(num_terminals // 2):
        positions[num_terminals - 1 - k] = -positions[k]
    if num_terminals % 2:
        positions[num_terminals // 2] = 0.0
    return TerminalLayout(tuple(positions))


def rate(x, xk, params: LinearParams):
    """Achievable rate (bps/Hz) at terminal ``xk`` with the UAV above ``x``.

    Accepts scalars or broadcastable arrays.
    """
    H = params.altitude
    if np.ndim(x) == 0 and np.ndim(xk) == 0:
        d = float(x) - float(xk)
        return math.log2(1.0 + params.snr_product / (d * d + H * H))
    d = np.asarray(x, dtype=float) - np.asarray(xk, dtype=float)
    return np.log2(1.0 + params.snr_product / (d * d + H * H))


def _antiderivative(d: float, H: float, S: float, A: float) -> float:
    # d = x - xk, A = sqrt(H^2 + S)
    return (d * math.log2(1.0 + S / (d * d + H * H))
            + 2.0 * (A * math.atan(d / A) - H * math.atan(d / H)) / _LN2)


def rate_antiderivative(x, xk, params: LinearParams):
    """Closed-form antiderivative of :func:`rate` in ``x``, zero at ``x == xk``.

    The two arctangent terms are written with ``(x - xk)``; this is the same
    expression as with ``(xk - x)`` and flipped signs, since atan is odd.
    """
    H = params.altitude
    S = params.snr_product
    A = math.sqrt(H * H + S)
    if np.ndim(x) == 0 and np.ndim(xk) == 0:
        return _antiderivative(float(x) - float(xk), H, S, A)
    d = np.asarray(x, dtype=float) - np.asarray(xk, dtype=float)
    return (d * np.log2(1.0 + S / (d * d + H * H))
            + 2.0 * (A * np.arctan(d / A) - H * np.arctan(d / H)) / _LN2)


def segment_throughput(b_lo: float, b_hi: float, xk: float, traj_length: float,
                       params: LinearParams) -> float:
    """Average throughput of terminal ``xk`` when served on ``[b_lo, b_hi]``.

    Normalised by the one-way trajectory length, since each segment is flown
    twice per period of 2D/V.
    """
    if not traj_length > 0:
        raise ValueError(f"traj_length must be > 0, got {traj_length}")
    if b_lo > b_hi:
        raise ValueError(f"segment bounds out of order: {b_lo} > {b_hi}")
    if b_lo == b_hi:
        return 0.0
    return (rate_antiderivative(b_hi, xk, params) - rate_antiderivative(b_lo, xk, params)) / traj_length


class LinkModel:
    """Scalar kernels bound to one set of link constants.

    Used in the inner loops of the allocator where per-call overhead matters.
    """

    __slots__ = ("H", "S", "A")

    def __init__(self, params: LinearParams):
        self.H = params.altitude
        self.S = params.snr_product
        self.A = math.sqrt(self.H**2 + self.S)

    def antiderivative(self, x: float, xk: float) -> float:
        return _antiderivative(x - xk, self.H, self.S, self.A)
