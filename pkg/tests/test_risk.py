"""Exact risks, the predictive-to-point connection, MC oracle, lemma checks."""

import math

import pytest

from binrisk.binom import BinomialSetup, PriorSpec, binom_pmf, entropy_loss
from binrisk.estimators import EstimateTable
from binrisk.predictive import plug_in_density
from binrisk.risk import (
    RiskCurve,
    bayes_predictive_tables,
    compensated_sum,
    connection_sum,
    mc_risk,
    point_risk,
    predictive_kl_risk,
    verify_log_jensen_bound,
    verify_second_derivative_identity,
)


class TestPointRisk:
    def test_perfect_estimator_zero(self):
        table = EstimateTable(
            setup=BinomialSetup(n=1),
            prior=PriorSpec(a=1.0, b=1.0),
            values=(0.5, 0.5),
        )
        assert point_risk(table, 0.5) == 0.0

    def test_two_term_oracle(self):
        # n=1, a=b=1 posterior means are 1/3 and 2/3
        table = EstimateTable.build(BinomialSetup(n=1), PriorSpec(a=1.0, b=1.0))
        expected = 0.5 * entropy_loss(1.0 / 3.0, 0.5).value + 0.5 * entropy_loss(
            2.0 / 3.0, 0.5
        ).value
        assert point_risk(table, 0.5) == pytest.approx(expected, rel=1e-13)

    def test_domain_error(self):
        table = EstimateTable.build(BinomialSetup(n=1), PriorSpec(a=1.0, b=1.0))
        with pytest.raises(ValueError):
            point_risk(table, 0.0)


class TestPredictiveKlRisk:
    def test_truth_gives_zero(self):
        setup = BinomialSetup(n=2, l=3)
        p = 0.3
        tables = [
            [binom_pmf(y, 3, p) for y in range(4)] for _ in range(3)
        ]
        assert abs(predictive_kl_risk(tables, p, setup)) < 1e-15

    def test_rejects_zero_mass(self):
        setup = BinomialSetup(n=1, l=1)
        with pytest.raises(ValueError):
            predictive_kl_risk([[0.0, 1.0], [0.5, 0.5]], 0.5, setup)

    @pytest.mark.parametrize("l", [1, 2, 4])
    @pytest.mark.parametrize("p", [0.1, 0.45, 0.8])
    def test_plug_in_factorizes(self, l, p):
        # KL risk of the plug-in density is exactly l times the point risk
        setup = BinomialSetup(n=3, l=l)
        table = EstimateTable.build(BinomialSetup(n=3), PriorSpec(a=1.0, b=2.0))
        plug = [
            [plug_in_density(y, l, table[x]) for y in range(l + 1)]
            for x in range(4)
        ]
        assert predictive_kl_risk(plug, p, setup) == pytest.approx(
            l * point_risk(table, p), abs=1e-12
        )


class TestConnectionSum:
    def test_single_step_is_point_risk(self):
        prior = PriorSpec(a=1.0, b=1.0)
        table = EstimateTable.build(BinomialSetup(n=2), prior)
        assert connection_sum(0.3, 2, 1, prior) == pytest.approx(
            point_risk(table, 0.3), rel=1e-14
        )

    @pytest.mark.parametrize(
        "prior,p",
        [
            (PriorSpec(a=1.0, b=1.0), 0.3),
            (PriorSpec(a=1.0, b=1.0, p_bar=0.4), 0.2),
            (PriorSpec(a=0.5, b=2.0, p_bar=0.4, p_lo=0.1), 0.25),
        ],
    )
    @pytest.mark.parametrize("n,l", [(1, 2), (2, 3), (4, 2)])
    def test_equals_predictive_risk(self, prior, p, n, l):
        setup = BinomialSetup(n=n, l=l)
        tables = bayes_predictive_tables(setup, prior)
        direct = predictive_kl_risk(
            [t.density for t in tables], p, setup
        )
        assert connection_sum(p, n, l, prior) == pytest.approx(direct, abs=1e-10)

    def test_single_step_bayes_predictive_risk_matches(self):
        # the one-step predictive KL risk equals the posterior-mean point risk
        prior = PriorSpec(a=1.0, b=1.0, p_bar=0.5)
        setup = BinomialSetup(n=3, l=1)
        tables = bayes_predictive_tables(setup, prior)
        direct = predictive_kl_risk([t.density for t in tables], 0.3, setup)
        table = EstimateTable.build(BinomialSetup(n=3), prior)
        assert direct == pytest.approx(point_risk(table, 0.3), abs=1e-12)


class TestMonteCarlo:
    def test_deterministic_given_seed(self):
        table = EstimateTable.build(BinomialSetup(n=4), PriorSpec(a=1.0, b=1.0))
        first = mc_risk(table, 0.3, 10_000, seed=42)
        second = mc_risk(table, 0.3, 10_000, seed=42)
        assert first == second

    def test_single_draw_reports_infinite_error(self):
        table = EstimateTable.build(BinomialSetup(n=4), PriorSpec(a=1.0, b=1.0))
        est, se = mc_risk(table, 0.3, 1, seed=0)
        assert math.isinf(se)
        assert est >= 0.0

    def test_standard_error_scaling(self):
        table = EstimateTable.build(BinomialSetup(n=5), PriorSpec(a=1.0, b=1.0))
        ses = [mc_risk(table, 0.3, N, seed=7)[1] for N in (10**4, 10**5, 10**6)]
        for big, small in zip(ses, ses[1:]):
            ratio = big / small / math.sqrt(10.0)
            assert 0.5 < ratio < 2.0

    def test_consistent_with_exact(self):
        table = EstimateTable.build(BinomialSetup(n=1), PriorSpec(a=1.0, b=1.0))
        est, se = mc_risk(table, 0.5, 10**6, seed=123)
        assert abs(est - point_risk(table, 0.5)) < 4.0 * se


class TestSecondDerivativeIdentity:
    def test_constant_gives_zero(self):
        lhs, rhs = verify_second_derivative_identity([2.0, 2.0, 2.0], 2, 0.5)
        assert abs(rhs) < 1e-12
        assert abs(lhs) < 1e-4

    def test_linear_case(self):
        # phi(x) = x: p E[X] = n p^2, second derivative 2n = 4 at n = 2
        lhs, rhs = verify_second_derivative_identity([0.0, 1.0, 2.0], 2, 0.5)
        assert rhs == pytest.approx(4.0, rel=1e-12)
        assert lhs == pytest.approx(4.0, rel=1e-6)

    def test_stencil_domain_error(self):
        with pytest.raises(ValueError):
            verify_second_derivative_identity([1.0, 2.0], 1, 1e-5)


class TestLogJensenBound:
    def test_two_point_example(self):
        lhs, rhs = verify_log_jensen_bound({0.2: 0.5, 0.4: 0.5})
        mu, var = 0.3, 0.01
        assert lhs == pytest.approx(
            0.5 * math.log(0.8) + 0.5 * math.log(0.6), rel=1e-14
        )
        assert rhs == pytest.approx(math.log(1.0 - mu) - var / 2.0, rel=1e-14)
        assert lhs <= rhs

    def test_small_variance_gap_shrinks(self):
        wide = verify_log_jensen_bound({0.2: 0.5, 0.6: 0.5})
        narrow = verify_log_jensen_bound({0.39: 0.5, 0.41: 0.5})
        assert (wide[1] - wide[0]) > (narrow[1] - narrow[0]) >= 0.0

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            verify_log_jensen_bound({1.2: 1.0})
        with pytest.raises(ValueError):
            verify_log_jensen_bound({0.2: 0.7, 0.4: 0.7})
        with pytest.raises(ValueError):
            verify_log_jensen_bound({0.3: 1.0})  # zero variance


class TestHelpers:
    def test_compensated_sum_matches_fsum(self):
        # many small terms whose naive left-to-right sum drifts
        terms = [0.1] * 10_000 + [1e-12] * 1_000
        assert compensated_sum(terms) == pytest.approx(
            math.fsum(terms), rel=1e-15
        )

    def test_compensated_sum_order_insensitive(self):
        terms = [3.5, -1.25, 1e-8, 7.0, -2.75]
        assert compensated_sum(terms) == compensated_sum(terms[::-1])

    def test_risk_curve_validation(self):
        RiskCurve(p_grid=(0.1, 0.2), values={"a": (0.0, 1.0)})
        with pytest.raises(ValueError):
            RiskCurve(p_grid=(0.2, 0.1), values={})
        with pytest.raises(ValueError):
            RiskCurve(p_grid=(0.1, 0.2), values={"a": (0.0,)})
        with pytest.raises(ValueError):
            RiskCurve(p_grid=(0.1, 0.2), values={"a": (-1.0, 0.0)})
