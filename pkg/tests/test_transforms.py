import math

import numpy as np
import pytest

from elicit import Bijection, DomainError, Interval, ParameterError, catalog, roundtrip_check
from elicit.numerics import central_diff
from elicit.transforms import CATALOG_ROWS


def domain_grid(bij, k=100):
    """Quasi-uniform points strictly inside the domain."""
    lo, hi = bij.domain.lo, bij.domain.hi
    lo = lo if math.isfinite(lo) else -8.0
    hi = hi if math.isfinite(hi) else max(lo + 1.0, 8.0)
    span = hi - lo
    return np.linspace(lo + 0.01 * span, hi - 0.01 * span, k)


ALL_ROWS = [(name, params) for name, params, _, _ in CATALOG_ROWS]


@pytest.mark.parametrize("name,params", ALL_ROWS)
def test_roundtrip_everywhere(name, params):
    bij = catalog(name, params)
    assert roundtrip_check(bij, domain_grid(bij)) <= 1e-10


@pytest.mark.parametrize("name,params", ALL_ROWS)
def test_derivative_matches_finite_difference(name, params):
    bij = catalog(name, params)
    for t in domain_grid(bij, 20):
        t = float(t)
        step = 1e-6 * max(1.0, abs(t))
        if not (bij.domain.contains(t - step) and bij.domain.contains(t + step)):
            continue
        numeric = central_diff(bij.apply, t, step)
        exact = bij.deriv(t)
        assert abs(numeric - exact) <= 1e-5 * max(1.0, abs(exact))


@pytest.mark.parametrize("name,params", ALL_ROWS)
def test_monotonicity_direction(name, params):
    bij = catalog(name, params)
    grid = domain_grid(bij, 50)
    vals = [bij.apply(float(t)) for t in grid]
    diffs = np.diff(vals)
    if bij.increasing:
        assert np.all(diffs > 0)
    else:
        assert np.all(diffs < 0)
    # derivative sign agrees with the recorded orientation
    signs = np.sign([bij.deriv(float(t)) for t in grid])
    assert np.all(signs == (1 if bij.increasing else -1))


class TestCatalogExamples:
    def test_box_cox_zero_is_log(self):
        bij = catalog("box-cox", [0.0])
        assert bij.apply(math.e) == pytest.approx(1.0, abs=1e-12)
        assert bij.invert(1.0) == pytest.approx(math.e, rel=1e-12)

    def test_power_inverse(self):
        assert catalog("power", [2.0]).invert(9.0) == pytest.approx(3.0)

    def test_shifted_log_domain(self):
        bij = catalog("shifted-log", [5.0])
        assert bij.domain.lo == -5.0 and not bij.domain.lo_closed
        assert bij.apply(-4.0) == pytest.approx(0.0)

    def test_log_pointwise(self):
        bij = catalog("log")
        assert bij.apply(1.0) == 0.0
        assert bij.invert(0.0) == 1.0
        assert bij.deriv(2.0) == 0.5

    def test_negate(self):
        bij = catalog("negate")
        assert bij.apply(3.0) == -3.0
        assert bij.monotonicity == "decreasing"

    def test_affine_exp_inverse(self):
        bij = catalog("affine-exp", [2.0, 1.0])
        assert bij.invert(math.e) == pytest.approx(0.0, abs=1e-12)

    def test_roundtrip_examples(self):
        assert roundtrip_check(catalog("log"), [0.1, 1.0, 10.0]) <= 1e-12
        assert roundtrip_check(catalog("box-cox", [0.25]), [0.5, 1.0, 2.0]) <= 1e-12
        assert roundtrip_check(catalog("power", [-1.0]), [0.5, 2.0]) <= 1e-12

    def test_negative_power_is_decreasing(self):
        bij = catalog("power", [-1.0])
        assert not bij.increasing
        assert bij.apply(2.0) == pytest.approx(0.5)

    def test_box_cox_negative_codomain(self):
        # (t^a - 1)/a with a < 0 maps onto (-inf, -1/a) and stays increasing
        bij = catalog("box-cox", [-1.0])
        assert bij.increasing
        assert bij.codomain.hi == pytest.approx(1.0)
        assert bij.apply(2.0) == pytest.approx(0.5)
        assert bij.apply(0.5) == pytest.approx(-1.0)


class TestDomainErrors:
    def test_log_at_zero(self):
        with pytest.raises(DomainError) as exc_info:
            catalog("log").apply(0.0)
        assert "(0, inf)" in str(exc_info.value)

    def test_invert_outside_codomain(self):
        with pytest.raises(DomainError):
            catalog("exp").invert(-1.0)

    def test_array_input_reports_offender(self):
        with pytest.raises(DomainError) as exc_info:
            catalog("log").apply(np.array([1.0, -3.0, 2.0]))
        assert exc_info.value.value == -3.0


class TestParameterConstraints:
    def test_affine_log_needs_positive_slope(self):
        with pytest.raises(ParameterError, match="a > 0"):
            catalog("affine-log", [0.0, 1.0])

    def test_power_nonzero(self):
        with pytest.raises(ParameterError, match="a != 0"):
            catalog("power", [0.0])

    def test_affine_power_positive_b(self):
        with pytest.raises(ParameterError, match="b > 0"):
            catalog("affine-power", [1.0, -1.0, 0.0])

    def test_unknown_name(self):
        with pytest.raises(ParameterError, match="unknown"):
            catalog("frobnicate", [])

    def test_wrong_arity(self):
        with pytest.raises(ParameterError):
            catalog("log", [1.0])


def test_custom_bijection_construction():
    # ad-hoc transforms (here 2t) plug into the same machinery
    double = Bijection("double", lambda t: 2.0 * np.asarray(t, float),
                       lambda t: 0.5 * np.asarray(t, float),
                       lambda t: 2.0 * np.ones_like(np.asarray(t, float)),
                       Interval.open(-math.inf, math.inf),
                       Interval.open(-math.inf, math.inf), True)
    assert double.apply(3.0) == 6.0
    assert roundtrip_check(double, [-5.0, 0.1, 7.0]) == 0.0


def test_order_preservation_on_random_pairs():
    rng = np.random.default_rng(11)
    inc = catalog("log")
    dec = catalog("power", [-1.0])
    pairs = rng.uniform(0.1, 5.0, size=(50, 2))
    for s, t in pairs:
        if s == t:
            continue
        assert (inc.apply(s) < inc.apply(t)) == (s < t)
        assert (dec.apply(s) < dec.apply(t)) == (s > t)
