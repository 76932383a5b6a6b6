"""Poisson analogues under gamma / truncated-gamma priors and the
binomial-to-Poisson convergence diagnostic.

The binomial procedures with prior proportional to p^(a-1) on (0, p_bar]
converge, as n -> infinity with n p fixed, to the Poisson procedures with
prior lambda^(a-1) on (0, lambda_bar]. The derivation is informal, so
this module checks convergence numerically (monotone error decay over a
K grid) rather than asserting a rate.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

from scipy.special import gammainc, gammaln

from .binom import BinomialSetup, PriorSpec
from .estimators import EstimateTable, posterior_mean
from .predictive import bayes_predictive
from .risk import compensated_sum, point_risk

_TAIL_MASS = 1e-15


@dataclass(frozen=True)
class PoissonConfig:
    """Exposures, prior exponent, and optional truncation of the rate."""

    r: float
    s: float = 1.0
    a: float = 1.0
    lambda_bar: float | None = None

    def __post_init__(self) -> None:
        if self.r <= 0.0 or self.s <= 0.0 or self.a <= 0.0:
            raise ValueError("r, s, and a must be positive")
        if self.lambda_bar is not None and self.lambda_bar <= 0.0:
            raise ValueError(f"lambda_bar must be positive, got {self.lambda_bar}")


def _log_lower_gamma(alpha: float, z: float) -> float:
    """log of the unnormalized lower incomplete gamma int_0^z t^(a-1) e^-t dt."""
    reg = gammainc(alpha, z)
    if reg <= 0.0:
        raise ArithmeticError(
            f"lower incomplete gamma underflows at (alpha={alpha}, z={z})"
        )
    return float(gammaln(alpha) + math.log(reg))


def _log_gamma_moment(alpha: float, rate: float, lambda_bar: float | None) -> float:
    """log of int lambda^(alpha-1) e^(-rate lambda) dlambda over the support."""
    if lambda_bar is None:
        return float(gammaln(alpha)) - alpha * math.log(rate)
    return _log_lower_gamma(alpha, rate * lambda_bar) - alpha * math.log(rate)


def poisson_posterior_mean(x_tilde: int, config: PoissonConfig) -> float:
    """Posterior mean of the rate under the (truncated) power prior."""
    if not isinstance(x_tilde, int) or x_tilde < 0:
        raise ValueError(f"x_tilde must be a nonnegative integer, got {x_tilde}")
    alpha = x_tilde + config.a
    if config.lambda_bar is None:
        return alpha / config.r
    return math.exp(
        _log_gamma_moment(alpha + 1.0, config.r, config.lambda_bar)
        - _log_gamma_moment(alpha, config.r, config.lambda_bar)
    )


def poisson_predictive(y_tilde: int, x_tilde: int, config: PoissonConfig) -> float:
    """Posterior expectation of Po(y_tilde | s lambda) given x_tilde."""
    if not isinstance(y_tilde, int) or y_tilde < 0:
        raise ValueError(f"y_tilde must be a nonnegative integer, got {y_tilde}")
    if not isinstance(x_tilde, int) or x_tilde < 0:
        raise ValueError(f"x_tilde must be a nonnegative integer, got {x_tilde}")
    alpha = x_tilde + config.a
    log_num = _log_gamma_moment(
        y_tilde + alpha, config.r + config.s, config.lambda_bar
    )
    log_den = _log_gamma_moment(alpha, config.r, config.lambda_bar)
    return math.exp(
        y_tilde * math.log(config.s)
        - float(gammaln(y_tilde + 1))
        + log_num
        - log_den
    )


def _poisson_pmf(k: int, mean: float) -> float:
    return math.exp(k * math.log(mean) - mean - float(gammaln(k + 1)))


def poisson_entropy_risk(config: PoissonConfig, lam: float) -> float:
    """Exact E[lhat - lambda - lambda log(lhat/lambda)], tail-truncated at
    cumulative mass 1 - 1e-15."""
    if lam <= 0.0:
        raise ValueError(f"lambda must be positive, got {lam}")
    if config.lambda_bar is not None and lam > config.lambda_bar:
        raise ValueError(
            f"lambda={lam} outside the truncated support (0, {config.lambda_bar}]"
        )
    mean = config.r * lam
    terms = []
    cum = 0.0
    k = 0
    while cum < 1.0 - _TAIL_MASS:
        w = _poisson_pmf(k, mean)
        cum += w
        lhat = poisson_posterior_mean(k, config)
        loss = lhat - lam - lam * math.log(lhat / lam)
        terms.append(w * loss)
        k += 1
        if k > 100000:
            raise ArithmeticError("Poisson tail failed to close")
    return compensated_sum(terms)


@dataclass(frozen=True)
class PoissonLimitReport:
    """Convergence errors of scaled binomial quantities over a K grid."""

    K_grid: tuple[float, ...]
    estimator_errors: tuple[float, ...]
    predictive_errors: tuple[float, ...]
    risk_errors: tuple[float, ...]

    def monotone_decay(self) -> bool:
        def decreasing(errs: tuple[float, ...]) -> bool:
            return all(b < a for a, b in zip(errs, errs[1:]))

        return (
            decreasing(self.estimator_errors)
            and decreasing(self.predictive_errors)
            and decreasing(self.risk_errors)
        )


def induced_binomial_prior(config: PoissonConfig, K: float) -> PriorSpec:
    """The binomial prior a Poisson power prior induces at scale K.

    The second beta exponent is exactly 1 by construction; truncation at
    lambda_bar maps to p_bar = lambda_bar / K.
    """
    p_bar = None if config.lambda_bar is None else config.lambda_bar / K
    if p_bar is not None and p_bar >= 1.0:
        raise ValueError(f"K={K} induces p_bar={p_bar} >= 1")
    return PriorSpec(a=config.a, b=1.0, p_bar=p_bar)


def limit_convergence_report(
    K_grid: Sequence[float],
    lam: float,
    config: PoissonConfig,
    x_tilde: int,
) -> PoissonLimitReport:
    """Per-K errors of the scaled binomial estimator, predictive density,
    and risk against their Poisson limits."""
    if any(b <= a for a, b in zip(K_grid, K_grid[1:])):
        raise ValueError("K grid must be strictly increasing")
    lam_hat = poisson_posterior_mean(x_tilde, config)
    risk_target = poisson_entropy_risk(config, lam)

    est_errors = []
    pred_errors = []
    risk_errors = []
    for K in K_grid:
        n = round(config.r * K)
        l = round(config.s * K)
        p = lam / K
        if not 0.0 < p < 1.0:
            raise ValueError(f"K={K} induces p={p} outside (0, 1)")
        prior = induced_binomial_prior(config, K)
        setup = BinomialSetup(n=n, l=l)

        p_hat = posterior_mean(x_tilde, prior, n)
        est_errors.append(abs(n * p_hat / config.r - lam_hat))

        # sup over the y range where either side still carries mass
        sup_err = 0.0
        y = 0
        while True:
            binom_mass = bayes_predictive(y, x_tilde, setup, prior)
            pois_mass = poisson_predictive(y, x_tilde, config)
            sup_err = max(sup_err, abs(binom_mass - pois_mass))
            if y >= 5 and binom_mass < _TAIL_MASS and pois_mass < _TAIL_MASS:
                break
            y += 1
            if y > l:
                break
        pred_errors.append(sup_err)

        table = EstimateTable.build(BinomialSetup(n=n), prior)
        risk_errors.append(
            abs(n / config.r * point_risk(table, p) - risk_target)
        )

    return PoissonLimitReport(
        K_grid=tuple(float(K) for K in K_grid),
        estimator_errors=tuple(est_errors),
        predictive_errors=tuple(pred_errors),
        risk_errors=tuple(risk_errors),
    )
