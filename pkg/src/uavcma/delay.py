"""Access delay of cyclical TDMA.

Over one period the UAV sweeps ``-D/2 -> D/2 -> -D/2``. Terminal k is silent
while the UAV is left of its segment (one contiguous window spanning the
turnaround at ``-D/2``) and while it is right of it (spanning the turnaround
at ``D/2``). Its access delay is the longer of the two windows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .allocator import Allocation


@dataclass(frozen=True)
class DelayProfile:
    period: float
    per_terminal: np.ndarray
    rms: float
    left: np.ndarray
    right: np.ndarray


def mute_windows(alloc: Allocation, speed: float) -> tuple[np.ndarray, np.ndarray]:
    """Left and right silent-window durations per terminal, in seconds."""
    if not speed > 0:
        raise ValueError(f"speed must be > 0, got {speed}")
    b = np.asarray(alloc.delimiters, dtype=float)
    half = alloc.traj_length / 2.0
    left = 2.0 * (half + b[:-1]) / speed
    right = 2.0 * (half - b[1:]) / speed
    return left, right


def rms_delay(profile_or_delays) -> float:
    """Root-mean-square of the per-terminal access delays."""
    phi = getattr(profile_or_delays, "per_terminal", profile_or_delays)
    phi = np.asarray(phi, dtype=float)
    if phi.size == 0:
        raise ValueError("no delays given")
    return math.sqrt(math.fsum(phi * phi) / phi.size)


def access_delays(alloc: Allocation, speed: float) -> DelayProfile:
    left, right = mute_windows(alloc, speed)
    phi = np.maximum(left, right)
    for arr in (left, right, phi):
        arr.setflags(write=False)
    return DelayProfile(
        period=2.0 * alloc.traj_length / speed,
        per_terminal=phi,
        rms=rms_delay(phi),
        left=left,
        right=right,
    )
