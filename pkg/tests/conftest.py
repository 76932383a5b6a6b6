"""Shared brute-force oracles, independent of the production code paths.

Every truncated-posterior quantity in the package is computed through
incomplete-beta identities; the oracles here integrate the defining
expressions directly with adaptive quadrature (substituting t = u^(1/alpha)
to tame the endpoint singularity when alpha < 1).
"""

from __future__ import annotations

import math

from scipy.integrate import quad

QUAD_OPTS = dict(epsabs=1e-13, epsrel=1e-13, limit=200)


def quad_inc_beta(alpha: float, beta: float, x: float) -> float:
    """int_0^x t^(alpha-1) (1-t)^(beta-1) dt by adaptive quadrature."""
    if alpha >= 1.0:
        # no endpoint singularity; direct integration is the most accurate
        val, _ = quad(
            lambda t: t ** (alpha - 1.0) * (1.0 - t) ** (beta - 1.0),
            0.0,
            x,
            **QUAD_OPTS,
        )
        return val
    # u = t^alpha removes the t^(alpha-1) singularity at 0
    val, _ = quad(
        lambda u: (1.0 - u ** (1.0 / alpha)) ** (beta - 1.0) / alpha,
        0.0,
        x**alpha,
        **QUAD_OPTS,
    )
    return val


def quad_I(alpha: float, gamma: float, p_bar: float) -> float:
    """int_0^1 t^(alpha-1) / {1 - p_bar (1-t)}^gamma dt by quadrature."""
    val, _ = quad(
        lambda u: (1.0 / alpha)
        / (1.0 - p_bar * (1.0 - u ** (1.0 / alpha))) ** gamma,
        0.0,
        1.0,
        **QUAD_OPTS,
    )
    return val


def quad_I_two_sided(alpha: float, gamma: float, p_lo: float, p_bar: float) -> float:
    """int_rho^1 t^(alpha-1) / {1 - p_bar (1-t)}^gamma dt by quadrature."""
    r_lo = p_lo / (1.0 - p_lo)
    r_bar = p_bar / (1.0 - p_bar)
    rho = r_lo / r_bar
    val, _ = quad(
        lambda t: t ** (alpha - 1.0) / (1.0 - p_bar * (1.0 - t)) ** gamma,
        rho,
        1.0,
        **QUAD_OPTS,
    )
    return val


def quad_J(p: float, n: int, a: float, b: float, p_bar: float) -> float:
    """The risk-bound integral J(p) by quadrature."""
    gamma = n + a + b + 1.0
    val, _ = quad(
        lambda u: (1.0 - p * (1.0 - u ** (1.0 / a))) ** n
        / (1.0 - p_bar * (1.0 - u ** (1.0 / a))) ** gamma
        / a,
        0.0,
        1.0,
        **QUAD_OPTS,
    )
    return val


def quad_beta_measure(alpha: float, beta: float, lo: float, hi: float) -> float:
    """int_lo^hi p^(alpha-1) (1-p)^(beta-1) dp by quadrature."""
    if lo > 0.0:
        # no singularity inside the window; integrate directly
        val, _ = quad(
            lambda t: t ** (alpha - 1.0) * (1.0 - t) ** (beta - 1.0),
            lo,
            hi,
            **QUAD_OPTS,
        )
        return val
    return quad_inc_beta(alpha, beta, hi)


def quad_posterior_mean(
    x: int, n: int, a: float, b: float, lo: float, hi: float
) -> float:
    """Posterior mean as the direct ratio of beta-measure integrals."""
    num = quad_beta_measure(x + a + 1.0, n - x + b, lo, hi)
    den = quad_beta_measure(x + a, n - x + b, lo, hi)
    return num / den


def entropy_loss_direct(d: float, p: float) -> float:
    total = 0.0
    if p > 0.0:
        total += p * math.log(p / d)
    if p < 1.0:
        total += (1.0 - p) * math.log((1.0 - p) / (1.0 - d))
    return total
