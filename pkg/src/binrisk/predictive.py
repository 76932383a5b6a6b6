"""Bayesian predictive densities and plug-in densities for the future count.

The predictive mass at y is C(l,y) times a ratio of beta measures over
the prior's support; truncated supports turn both integrals into
incomplete-beta differences, handled in log space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .binom import BinomialSetup, PriorSpec, binom_pmf, log_binom_coeff
from .incbeta import log_beta_measure


def bayes_predictive(y: int, x: int, setup: BinomialSetup, prior: PriorSpec) -> float:
    """Posterior expectation of Bin(y | l, p) given X = x."""
    n, l = setup.n, setup.l
    if not isinstance(x, int) or x < 0 or x > n:
        raise ValueError(f"x must be an integer in [0, {n}], got {x}")
    if not isinstance(y, int) or y < 0 or y > l:
        raise ValueError(f"y must be an integer in [0, {l}], got {y}")
    lo, hi = prior.support
    log_num = log_beta_measure(y + x + prior.a, l - y + n - x + prior.b, lo, hi)
    log_den = log_beta_measure(x + prior.a, n - x + prior.b, lo, hi)
    return math.exp(log_binom_coeff(y, l) + log_num - log_den)


def plug_in_density(y: int, l: int, d: float) -> float:
    """Bin(y | l, d) at a point estimate d of p."""
    if not 0.0 < d < 1.0:
        raise ValueError(f"plug-in estimate d must be in (0, 1), got {d}")
    return binom_pmf(y, l, d)


@dataclass(frozen=True)
class PredictiveTable:
    """Predictive mass over y = 0..l for one observed count x."""

    setup: BinomialSetup
    prior: PriorSpec
    x: int
    density: tuple[float, ...]

    @classmethod
    def build(cls, setup: BinomialSetup, prior: PriorSpec, x: int) -> "PredictiveTable":
        density = tuple(
            bayes_predictive(y, x, setup, prior) for y in range(setup.l + 1)
        )
        return cls(setup=setup, prior=prior, x=x, density=density)

    def __getitem__(self, y: int) -> float:
        return self.density[y]

    def __post_init__(self) -> None:
        if len(self.density) != self.setup.l + 1:
            raise ValueError("need one mass per y = 0..l")
        if any(v <= 0.0 for v in self.density):
            raise ValueError("predictive masses must be strictly positive")
        if abs(math.fsum(self.density) - 1.0) > 1e-12:
            raise ValueError(
                f"predictive density sums to {math.fsum(self.density)!r}, not 1"
            )
