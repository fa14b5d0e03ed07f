"""Estimator-style front end to the allocator.

``fit`` takes terminal positions along the flight line and learns the
segment delimiters; ``predict`` maps UAV positions to the terminal served
there, ``transform`` to the per-terminal rates.
"""
import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from . import _validation as v
from .allocator import DEFAULT_EPSILON, DEFAULT_XTOL, MAX_ITER, SCHEMES, balance, equal_split
from .delay import access_delays
from .model import Scenario, link_params, rate


class CyclicalTDMA(BaseEstimator):
    """Cyclical TDMA segment allocator for a UAV sweeping ``[-D/2, D/2]``.

    Parameters
    ----------
    traj_length : float, default=500.0
        One-way trajectory length D in meters.
    altitude : float, default=100.0
        Flight altitude H in meters.
    power_dbm : float, default=10.0
        Transmit power.
    ref_snr_db : float, default=80.0
        Channel gain over noise at 1 m.
    scheme : {"optimal", "equal"}, default="optimal"
        ``"optimal"`` balances throughputs to the max-min point, ``"equal"``
        gives every terminal the same trajectory length.
    epsilon : float, default=1e-5
        Stop once every neighbour throughput gap is below this (bps/Hz).
    xtol : float, default=1e-9
        Bracket width (m) at which each delimiter bisection stops.
    max_iter : int, default=1_000_000

    Attributes
    ----------
    positions_ : ndarray of shape (n_terminals,)
    delimiters_ : ndarray of shape (n_terminals + 1,)
    throughputs_ : ndarray of shape (n_terminals,)
    portions_ : ndarray of shape (n_terminals,)
    min_throughput_ : float
    n_iter_ : int
    allocation_ : Allocation
    """

    def __init__(self, traj_length=500.0, altitude=100.0, power_dbm=10.0, ref_snr_db=80.0,
                 scheme="optimal", epsilon=DEFAULT_EPSILON, xtol=DEFAULT_XTOL, max_iter=MAX_ITER):
        self.traj_length = traj_length
        self.altitude = altitude
        self.power_dbm = power_dbm
        self.ref_snr_db = ref_snr_db
        self.scheme = scheme
        self.epsilon = epsilon
        self.xtol = xtol
        self.max_iter = max_iter

    @classmethod
    def from_scenario(cls, scenario: Scenario, **kwargs):
        return cls(traj_length=scenario.traj_length, altitude=scenario.altitude,
                   power_dbm=scenario.power_dbm, ref_snr_db=scenario.ref_snr_db, **kwargs)

    def _link_params(self):
        v.check_positive(self.altitude, "altitude")
        return link_params(self.power_dbm, self.ref_snr_db, self.altitude)

    def fit(self, X, y=None):
        """Allocate the trajectory among terminals at positions ``X`` (ascending)."""
        x = v.check_terminal_positions(X)
        D = v.check_positive(self.traj_length, "traj_length")
        v.check_choice(self.scheme, "scheme", SCHEMES)
        params = self._link_params()
        if self.scheme == "optimal":
            v.check_positive(self.epsilon, "epsilon")
            v.check_positive(self.xtol, "xtol", allow_zero=True)
            alloc = balance(x, D, params, epsilon=self.epsilon, xtol=self.xtol,
                            max_iter=self.max_iter)
        else:
            alloc = equal_split(x, D, params)
        self.params_ = params
        self.allocation_ = alloc
        self.positions_ = alloc.positions
        self.delimiters_ = alloc.delimiters
        self.throughputs_ = alloc.throughputs
        self.portions_ = alloc.portions
        self.min_throughput_ = alloc.min_throughput
        self.n_iter_ = alloc.iterations
        return self

    def _check_uav(self, X):
        check_is_fitted(self, "delimiters_")
        x = v.check_coordinates(X, "UAV positions")
        lo, hi = self.delimiters_[0], self.delimiters_[-1]
        if np.any((x < lo) | (x > hi)):
            raise ValueError(f"UAV positions must lie within [{lo}, {hi}]")
        return x

    def predict(self, X):
        """Index of the terminal served with the UAV at each position in ``X``.

        A position exactly on a delimiter belongs to the segment on its right.
        """
        x = self._check_uav(X)
        return np.searchsorted(self.delimiters_[1:-1], x, side="right")

    def transform(self, X):
        """Rates (bps/Hz) of every terminal, shape ``(len(X), n_terminals)``."""
        check_is_fitted(self, "delimiters_")
        x = v.check_coordinates(X, "UAV positions")
        return rate(x[:, None], self.positions_[None, :], self.params_)

    def score(self, X=None, y=None):
        """Max-min throughput of the fitted allocation; ``X`` is ignored."""
        check_is_fitted(self, "min_throughput_")
        return self.min_throughput_

    def access_delays(self, speed):
        check_is_fitted(self, "allocation_")
        return access_delays(self.allocation_, v.check_positive(speed, "speed"))
