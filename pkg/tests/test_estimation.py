import numpy as np
import pytest

from elicit import (DomainError, Empirical, Exponential, Lognormal, Normal,
                    ParameterError, ScoreSpec, TransformMode, Uniform, catalog,
                    expectile_exact, fit, functional_value, sample_iid, scalar_value)
from elicit.functionals import FunctionalSpec


class TestConstantFits:
    def test_se_recovers_sample_mean(self):
        res = fit("constant", ScoreSpec("se"), y=[1.0, 2.0, 3.0])
        assert res.theta[0] == pytest.approx(2.0, abs=1e-10)
        assert res.converged

    def test_ae_recovers_median(self):
        res = fit("constant", ScoreSpec("ae"), y=[1.0, 2.0, 100.0])
        assert res.theta[0] == pytest.approx(2.0, abs=1e-8)

    def test_apl_lands_in_quantile_interval(self):
        y = list(range(1, 101))
        res = fit("constant", ScoreSpec("apl", tau=0.9), y=y)
        iv = Empirical(tuple(float(v) for v in y)).quantile(0.9)
        assert iv.lo - 1e-8 <= res.theta[0] <= iv.hi + 1e-8

    def test_joint_log_transform_gives_geometric_mean(self):
        spec = ScoreSpec("se", transform=TransformMode.both(catalog("log")))
        res = fit("constant", spec, y=[1.0, 4.0])
        assert res.theta[0] == pytest.approx(2.0, abs=1e-6)

    def test_objective_reported_at_theta(self):
        res = fit("constant", ScoreSpec("se"), y=[0.0, 2.0])
        assert res.objective == pytest.approx(1.0, abs=1e-12)

    def test_empty_data_rejected(self):
        with pytest.raises(ParameterError):
            fit("constant", ScoreSpec("se"), y=[])

    def test_domain_error_reported(self):
        spec = ScoreSpec("se", transform=TransformMode.both(catalog("log")))
        with pytest.raises(DomainError):
            fit("constant", spec, y=[1.0, -2.0])

    def test_unexpected_predictors_rejected(self):
        with pytest.raises(ParameterError):
            fit("constant", ScoreSpec("se"), x=[1.0], y=[1.0])


class TestLinearFits:
    def test_noise_free_line_exact(self):
        x = np.linspace(0.0, 5.0, 40)
        res = fit("linear", ScoreSpec("se"), x=x, y=2.0 * x)
        assert res.theta[0] == pytest.approx(0.0, abs=1e-8)
        assert res.theta[1] == pytest.approx(2.0, abs=1e-8)

    def test_pinball_line(self):
        rng = np.random.default_rng(5)
        x = rng.uniform(0, 1, 4000)
        y = 1.0 + 3.0 * x + rng.normal(0, 0.1, x.size)
        res = fit("linear", ScoreSpec("apl", tau=0.5), x=x, y=y)
        assert res.theta[0] == pytest.approx(1.0, abs=0.05)
        assert res.theta[1] == pytest.approx(3.0, abs=0.1)

    def test_missing_x_rejected(self):
        with pytest.raises(ParameterError):
            fit("linear", ScoreSpec("se"), y=[1.0, 2.0])


class TestPairFits:
    def test_recovers_sample_moments(self):
        rng = np.random.default_rng(6)
        y = rng.normal(2.0, 3.0, 2000)
        res = fit("constant_pair", ScoreSpec("mv"), y=y)
        assert res.theta[0] == pytest.approx(float(np.mean(y)), abs=1e-6)
        assert res.theta[1] == pytest.approx(float(np.var(y, ddof=0)), rel=1e-3)

    def test_variance_stays_positive(self):
        res = fit("constant_pair", ScoreSpec("mv"), y=[1.0, 1.0 + 1e-4, 1.0 - 1e-4])
        assert res.theta[1] > 0

    def test_wrong_family_rejected(self):
        with pytest.raises(ParameterError):
            fit("constant_pair", ScoreSpec("se"), y=[1.0, 2.0])
        with pytest.raises(ParameterError):
            fit("constant", ScoreSpec("mv"), y=[1.0, 2.0])


class TestConsistencyAtScale:
    """Fitting a constant with a matched score recovers the functional."""

    N = 10**5

    def assert_close(self, est, fv, rel=0.02, floor=5.0):
        target = scalar_value(fv.value)
        se = fv.stderr if isinstance(fv.stderr, float) else 0.0
        assert abs(est - target) <= max(rel * abs(target), floor * se, 1e-4)

    def test_se_mean(self):
        d = Normal(0.4, 1.3)
        y = sample_iid(d, self.N, seed=101)
        res = fit("constant", ScoreSpec("se"), y=y)
        self.assert_close(res.theta[0], functional_value(FunctionalSpec("mean"), d))

    def test_apl_quantile(self):
        d = Exponential(1.0)
        y = sample_iid(d, self.N, seed=102)
        res = fit("constant", ScoreSpec("apl", tau=0.9), y=y)
        self.assert_close(res.theta[0],
                          functional_value(FunctionalSpec("quantile", tau=0.9), d))

    def test_expectile_score_expectile(self):
        d = Uniform(0.0, 1.0)
        y = sample_iid(d, self.N, seed=103)
        res = fit("constant", ScoreSpec("expectile", tau=0.75), y=y)
        self.assert_close(res.theta[0],
                          functional_value(FunctionalSpec("expectile", tau=0.75), d))

    def test_transformed_se_transformed_expectation(self):
        d = Lognormal(0.0, 1.0)
        g = catalog("log")
        y = sample_iid(d, self.N, seed=104)
        res = fit("constant", ScoreSpec("se", transform=TransformMode.both(g)), y=y)
        self.assert_close(res.theta[0],
                          functional_value(FunctionalSpec("gmean", g=g), d))

    def test_transformed_expectile_score(self):
        d = Lognormal(0.0, 1.0)
        g = catalog("log")
        y = sample_iid(d, self.N, seed=105)
        spec = ScoreSpec("expectile", tau=0.75, transform=TransformMode.both(g))
        res = fit("constant", spec, y=y)
        self.assert_close(res.theta[0],
                          functional_value(FunctionalSpec("gexpectile", tau=0.75, g=g), d))

    def test_mv_pair(self):
        d = Normal(2.0, 3.0)
        y = sample_iid(d, self.N, seed=106)
        res = fit("constant_pair", ScoreSpec("mv"), y=y)
        fv = functional_value(FunctionalSpec("mvpair"), d)
        assert res.theta[0] == pytest.approx(fv.value[0], abs=0.02 * abs(fv.value[0]) + 0.02)
        assert res.theta[1] == pytest.approx(fv.value[1], rel=0.02)


class TestRevelationConsistency:
    def test_prediction_transform_moves_estimate_through_g(self):
        rng = np.random.default_rng(7)
        y = rng.normal(0.3, 1.0, 500)
        plain = fit("constant", ScoreSpec("se"), y=y)
        g = catalog("exp")
        spec = ScoreSpec("se", transform=TransformMode.prediction_only(g))
        transformed = fit("constant", spec, y=y)
        assert transformed.theta[0] == pytest.approx(
            g.apply(plain.theta[0]), rel=1e-7)

    def test_log_reparameterization_of_pinball(self):
        rng = np.random.default_rng(8)
        y = rng.exponential(1.0, 801)
        plain = fit("constant", ScoreSpec("apl", tau=0.5), y=y)
        g = catalog("log")
        spec = ScoreSpec("apl", tau=0.5, transform=TransformMode.prediction_only(g))
        transformed = fit("constant", spec, y=y)
        assert transformed.theta[0] == pytest.approx(
            g.apply(plain.theta[0]), abs=1e-6)


def test_mean_matches_expectile_half_fit():
    rng = np.random.default_rng(9)
    y = rng.normal(1.0, 2.0, 1000)
    a = fit("constant", ScoreSpec("se"), y=y).theta[0]
    b = fit("constant", ScoreSpec("expectile", tau=0.5), y=y).theta[0]
    assert a == pytest.approx(b, abs=1e-7)


def test_exact_expectile_agrees_with_fit():
    d = Uniform(0.0, 1.0)
    y = sample_iid(d, 10**5, seed=110)
    res = fit("constant", ScoreSpec("expectile", tau=0.9), y=y)
    assert res.theta[0] == pytest.approx(expectile_exact(d, 0.9), abs=0.01)
