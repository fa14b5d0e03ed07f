import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from uavcma import CyclicalTDMA, maxmin_allocate, place_terminals, rate


@pytest.fixture
def positions():
    return np.array(place_terminals(10, 1000.0).positions)


def test_fit_matches_functional_path(default_scenario, positions):
    est = CyclicalTDMA.from_scenario(default_scenario).fit(positions)
    alloc = maxmin_allocate(default_scenario)
    assert np.array_equal(est.delimiters_, alloc.delimiters)
    assert est.min_throughput_ == alloc.min_throughput
    assert est.n_iter_ == alloc.iterations
    assert est.score() == est.min_throughput_


def test_params_roundtrip():
    est = CyclicalTDMA(traj_length=800.0, scheme="equal")
    params = est.get_params()
    assert params["traj_length"] == 800.0 and params["scheme"] == "equal"
    cloned = clone(est)
    assert cloned.get_params() == params
    cloned.set_params(epsilon=1e-7)
    assert cloned.epsilon == 1e-7


def test_column_vector_input(positions):
    a = CyclicalTDMA().fit(positions)
    b = CyclicalTDMA().fit(positions.reshape(-1, 1))
    assert np.array_equal(a.delimiters_, b.delimiters_)


def test_predict_serving_terminal(positions):
    est = CyclicalTDMA().fit(positions)
    b = est.delimiters_
    mids = 0.5 * (b[:-1] + b[1:])
    assert list(est.predict(mids)) == list(range(10))
    assert est.predict([b[3]])[0] == 3
    assert est.predict([250.0])[0] == 9
    with pytest.raises(ValueError):
        est.predict([260.0])


def test_transform_gives_rates(positions, params):
    est = CyclicalTDMA().fit(positions)
    x = np.linspace(-300, 300, 7)
    out = est.transform(x)
    assert out.shape == (7, 10)
    assert out[3, 4] == pytest.approx(rate(0.0, positions[4], params))


def test_access_delays(positions):
    est = CyclicalTDMA().fit(positions)
    prof = est.access_delays(30.0)
    assert prof.period == pytest.approx(1000.0 / 30.0)
    with pytest.raises(ValueError):
        est.access_delays(0.0)


def test_equal_scheme(positions):
    est = CyclicalTDMA(traj_length=1110.0, scheme="equal").fit(positions)
    assert np.all(est.portions_ == 0.1)
    assert est.n_iter_ == 0


def test_not_fitted():
    with pytest.raises(NotFittedError):
        CyclicalTDMA().predict([0.0])
    with pytest.raises(NotFittedError):
        CyclicalTDMA().transform([0.0])


@pytest.mark.parametrize("X", [[0.0, 0.0, 1.0], [3.0, 1.0], [[0.0, 1.0], [2.0, 3.0]], [0.0, np.nan]])
def test_rejects_bad_positions(X):
    with pytest.raises(ValueError):
        CyclicalTDMA().fit(X)


@pytest.mark.parametrize("kwargs", [
    dict(traj_length=0.0), dict(scheme="tdma"), dict(epsilon=0.0), dict(altitude=-1.0), dict(xtol=-1.0),
])
def test_rejects_bad_params(kwargs, positions):
    with pytest.raises(ValueError):
        CyclicalTDMA(**kwargs).fit(positions)


def test_asymmetric_layout_still_balances():
    x = np.array([-300.0, -250.0, 40.0, 500.0])
    est = CyclicalTDMA(traj_length=900.0).fit(x)
    assert np.ptp(est.throughputs_) <= 3 * 1e-5
    assert np.all(np.diff(est.delimiters_) >= 0)
