import math

import pytest

from pdckit.counting import DifferenceSet
from pdckit.hardy_littlewood import h_factor, li_k, li_upper, predict


def trapezoid_li(x, k, n=2 * 10**6):
    # dumb fixed-grid reference with an explicit error bound
    a, b = 2.0, float(x)
    h = (b - a) / n
    total = 0.5 * (1 / math.log(a) ** k + 1 / math.log(b) ** k)
    for i in range(1, n):
        total += 1 / math.log(a + i * h) ** k
    # |error| <= h^2 / 12 * |f'(b) - f'(a)| for monotone f'
    fp = lambda t: -k / (t * math.log(t) ** (k + 1))
    bound = h * h / 12 * abs(fp(b) - fp(a))
    return total * h, bound


def test_li_zero_below_two():
    assert li_k(2, 1) == 0.0
    assert li_k(1.5, 3) == 0.0


def test_li_against_trapezoid():
    value = li_k(10**6, 1, tolerance=1e-9)
    ref, bound = trapezoid_li(10**6, 1)
    assert abs(value - ref) <= bound + 1e-6 * ref
    assert value == pytest.approx(78626.50399568258, rel=1e-10)


def test_li_2_value():
    # pinned from two independent quadratures during development
    assert li_k(10**6, 2, tolerance=1e-10) == pytest.approx(6246.975735221842, rel=1e-9)


@pytest.mark.parametrize("x", [10**3, 10**4, 10**5])
def test_integration_by_parts_identity(x):
    # li_{k+1}(x) = x/log^{k+1} x - 2/log^{k+1} 2 + (k+1) li_{k+2}(x)
    for k in (1, 2):
        lhs = li_k(x, k + 1, tolerance=1e-10)
        rhs = (
            x / math.log(x) ** (k + 1)
            - 2 / math.log(2) ** (k + 1)
            + (k + 1) * li_k(x, k + 2, tolerance=1e-10)
        )
        assert lhs == pytest.approx(rhs, rel=1e-6)


def test_li_upper_matches_li_for_pairs():
    d = DifferenceSet((2,))
    # the weighted integral with k = 1 extra log factor
    assert li_upper(10**5, d, tolerance=1e-9) > 0


def test_h_factor():
    d = DifferenceSet((2, 6))
    f = h_factor(10**4, d)
    assert f.value > 0
    assert f.dk_error_bound >= 0
    with pytest.raises(ValueError):
        h_factor(5, d)


def test_predict_twins(table_1e6):
    pred = predict(table_1e6, 10**6, DifferenceSet((2,)), tolerance=1e-6)
    assert pred.exact == 8169
    assert pred.predicted == pytest.approx(8248.0159, abs=0.01)
    assert pred.ratio == pytest.approx(0.9904200092571983, rel=1e-9)
    assert abs(pred.ratio - 1) < 0.03
    assert pred.quadrature_error < 1e-3


def test_predict_zero_series(table_1e4):
    pred = predict(table_1e4, 10**4, DifferenceSet((1,)))
    assert pred.predicted == 0.0
    assert pred.exact == 1  # the pair (2, 3)
    assert pred.ratio is None


def test_predict_ratio_improves(table_1e6):
    d = DifferenceSet((6,))
    drift = [
        abs(predict(table_1e6, 10**e, d).ratio - 1) for e in (4, 5, 6)
    ]
    assert drift[0] > drift[1] > drift[2]


def test_prediction_dict_round_trip(table_1e4):
    pred = predict(table_1e4, 10**4, DifferenceSet((2, 6)))
    d = pred.to_dict()
    assert d["x"] == 10**4
    assert d["elements"] == [2, 6]
    assert d["exact"] == pred.exact
    assert d["normalized_error"] >= 0.0
