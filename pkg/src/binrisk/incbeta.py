"""Incomplete beta kernel and the integral family built on it.

Everything downstream (truncated posterior means, predictive densities,
risk bounds) reduces to integrals of the form

    I(alpha, gamma, p_bar)        = int_0^1 t^(alpha-1) / {1 - p_bar (1-t)}^gamma dt
    I(alpha, gamma, p_lo, p_bar)  = int_rho^1 t^(alpha-1) / {1 - p_bar (1-t)}^gamma dt

with rho = r_lo / r_bar the ratio of odds, plus the bracket term
[t^alpha / {1 - p_bar (1-t)}^gamma]_rho^1.  All of these are incomplete
beta integrals after the substitution p = r_bar * t / (1 + r_bar * t),
so the only primitive needed is log of the unnormalized incomplete beta

    B(x; a, b) = int_0^x t^(a-1) (1-t)^(b-1) dt,

computed here by a continued fraction (modified Lentz) entirely in log
space so that large exponents (n up to ~1e4 in the Poisson-limit sweeps)
never underflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import betaln

_CF_TOL = 1e-14
_CF_MAX_ITER = 500
_FPMIN = 1e-300

# p_bar closer to 1 than this makes I diverge for the parameters we use;
# fail loudly instead of returning garbage.
_P_BAR_CEIL = 1.0 - 1e-12


class SingularBoundError(OverflowError):
    """Raised when p_bar is too close to 1 for I to be representable."""


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta, modified Lentz iteration.

    Returns the CF factor such that
    B(x; a, b) = x^a (1-x)^b / a * cf.
    """
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_TOL:
            return h
    raise ArithmeticError(
        f"incomplete beta continued fraction did not converge "
        f"(a={a}, b={b}, x={x})"
    )


def log_inc_beta_lower(alpha: float, beta: float, x: float) -> float:
    """log of int_0^x t^(alpha-1) (1-t)^(beta-1) dt (unnormalized).

    Returns -inf at x = 0.  The continued fraction is applied on
    whichever tail converges; the upper tail goes through the complete
    beta with a log-space subtraction.
    """
    if alpha <= 0.0 or beta <= 0.0:
        raise ValueError(f"alpha and beta must be positive, got ({alpha}, {beta})")
    if x < 0.0 or x > 1.0:
        raise ValueError(f"x must be in [0, 1], got {x}")
    if x == 0.0:
        return -math.inf
    if x == 1.0:
        return betaln(alpha, beta)
    if x <= alpha / (alpha + beta):
        cf = _betacf(alpha, beta, x)
        return alpha * math.log(x) + beta * math.log1p(-x) - math.log(alpha) + math.log(cf)
    # upper tail: B(x; a, b) = B(a, b) - B(1-x; b, a)
    log_complete = betaln(alpha, beta)
    log_tail = log_inc_beta_lower(beta, alpha, 1.0 - x)
    diff = log_tail - log_complete
    if diff >= 0.0:
        # tail rounded up to the whole integral; the lower part is lost to
        # cancellation but is bounded by machine epsilon relatively
        return log_complete + math.log(2.220446049250313e-16)
    return log_complete + math.log(-math.expm1(diff))


def inc_beta_lower(alpha: float, beta: float, x: float) -> float:
    """int_0^x t^(alpha-1) (1-t)^(beta-1) dt; x = 1 gives the complete beta."""
    return math.exp(log_inc_beta_lower(alpha, beta, x))


def log_beta_measure(alpha: float, beta: float, lo: float, hi: float) -> float:
    """log of int_lo^hi t^(alpha-1) (1-t)^(beta-1) dt for 0 <= lo < hi <= 1."""
    if not 0.0 <= lo < hi <= 1.0:
        raise ValueError(f"need 0 <= lo < hi <= 1, got ({lo}, {hi})")
    log_upper = log_inc_beta_lower(alpha, beta, hi)
    if lo == 0.0:
        return log_upper
    diff = log_inc_beta_lower(alpha, beta, lo) - log_upper
    if diff >= 0.0:
        raise ArithmeticError(
            f"beta measure lost to cancellation on [{lo}, {hi}] "
            f"(alpha={alpha}, beta={beta})"
        )
    return log_upper + math.log(-math.expm1(diff))


def _check_p_bar(p_bar: float) -> None:
    if not 0.0 < p_bar < 1.0:
        raise ValueError(f"p_bar must be in (0, 1), got {p_bar}")
    if p_bar > _P_BAR_CEIL:
        raise SingularBoundError(f"p_bar={p_bar} is within 1e-12 of 1; I diverges")


def log_eval_I(alpha: float, gamma: float, p_bar: float) -> float:
    """log I(alpha, gamma, p_bar) for gamma > alpha > 0."""
    if not gamma > alpha > 0.0:
        raise ValueError(f"need gamma > alpha > 0, got alpha={alpha}, gamma={gamma}")
    _check_p_bar(p_bar)
    # I = B(p_bar; alpha, gamma - alpha) / {r_bar^alpha (1 - p_bar)^gamma}
    log_r_bar = math.log(p_bar) - math.log1p(-p_bar)
    return (
        log_inc_beta_lower(alpha, gamma - alpha, p_bar)
        - alpha * log_r_bar
        - gamma * math.log1p(-p_bar)
    )


def eval_I(alpha: float, gamma: float, p_bar: float) -> float:
    """I(alpha, gamma, p_bar) = int_0^1 t^(alpha-1) / {1 - p_bar (1-t)}^gamma dt."""
    try:
        return math.exp(log_eval_I(alpha, gamma, p_bar))
    except OverflowError as exc:
        raise SingularBoundError(
            f"I({alpha}, {gamma}, {p_bar}) overflows double precision"
        ) from exc


def _check_interval(p_lo: float, p_bar: float) -> None:
    if not 0.0 < p_lo < p_bar:
        raise ValueError(f"need 0 < p_lo < p_bar, got p_lo={p_lo}, p_bar={p_bar}")
    _check_p_bar(p_bar)


def log_eval_I_two_sided(alpha: float, gamma: float, p_lo: float, p_bar: float) -> float:
    """log of the two-sided integral int_rho^1, rho = odds ratio p_lo vs p_bar."""
    if not gamma > alpha > 0.0:
        raise ValueError(f"need gamma > alpha > 0, got alpha={alpha}, gamma={gamma}")
    _check_interval(p_lo, p_bar)
    log_r_bar = math.log(p_bar) - math.log1p(-p_bar)
    log_lower = log_inc_beta_lower(alpha, gamma - alpha, p_lo)
    log_upper = log_inc_beta_lower(alpha, gamma - alpha, p_bar)
    diff = log_lower - log_upper
    if diff >= 0.0:
        raise ArithmeticError(
            f"two-sided integral lost to cancellation at "
            f"(alpha={alpha}, gamma={gamma}, p_lo={p_lo}, p_bar={p_bar})"
        )
    log_num = log_upper + math.log(-math.expm1(diff))
    return log_num - alpha * log_r_bar - gamma * math.log1p(-p_bar)


def eval_I_two_sided(alpha: float, gamma: float, p_lo: float, p_bar: float) -> float:
    """I(alpha, gamma, p_lo, p_bar) = int_rho^1 t^(alpha-1) / {1 - p_bar (1-t)}^gamma dt."""
    try:
        return math.exp(log_eval_I_two_sided(alpha, gamma, p_lo, p_bar))
    except OverflowError as exc:
        raise SingularBoundError(
            f"I({alpha}, {gamma}, {p_lo}, {p_bar}) overflows double precision"
        ) from exc


def eval_J(p: float, n: int, a: float, b: float, p_bar: float) -> float:
    """J(p) = int_0^1 t^(a-1) {1 - p (1-t)}^n / {1 - p_bar (1-t)}^(n+a+b+1) dt.

    Since {1 - p (1-t)}^n is the binomial generating function E_p[t^X],
    J(p) is the exact finite mixture sum_x Bin(x; n, p) I(x+a, n+a+b+1, p_bar).
    """
    if a <= 0.0 or b <= 0.0:
        raise ValueError(f"a and b must be positive, got ({a}, {b})")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n}")
    if not 0.0 <= p < 1.0:
        raise ValueError(f"p must be in [0, 1), got {p}")
    _check_p_bar(p_bar)
    gamma = n + a + b + 1.0
    if p == 0.0:
        return eval_I(a, gamma, p_bar)
    # local import avoids a cycle: binom only needs pure pmf machinery
    from .binom import binom_pmf

    total = 0.0
    comp = 0.0
    terms = sorted(
        (binom_pmf(x, n, p) * eval_I(x + a, gamma, p_bar) for x in range(n + 1))
    )
    for term in terms:  # Kahan accumulation, smallest first
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def bracket_term(alpha: float, gamma: float, p_lo: float, p_bar: float) -> float:
    """[t^alpha / {1 - p_bar (1-t)}^gamma]_rho^1; sign can be anything.

    Simplifies to 1 - (p_lo/p_bar)^alpha {(1-p_lo)/(1-p_bar)}^(gamma-alpha),
    evaluated as 1 - exp(...) with a clean zero when the two endpoint
    values agree to within 1e-14 relatively.
    """
    if alpha <= 0.0 or gamma <= 0.0:
        raise ValueError(f"alpha and gamma must be positive, got ({alpha}, {gamma})")
    _check_interval(p_lo, p_bar)
    log_lower = alpha * (math.log(p_lo) - math.log(p_bar)) + (gamma - alpha) * (
        math.log1p(-p_lo) - math.log1p(-p_bar)
    )
    if abs(log_lower) < 1e-14:
        return 0.0
    return -math.expm1(log_lower)


@dataclass(frozen=True)
class IntegralParams:
    """Parameters of the I family; gamma > alpha > 0, optional lower cut."""

    alpha: float
    gamma: float
    p_bar: float
    p_lo: float | None = None

    def __post_init__(self) -> None:
        if not self.gamma > self.alpha > 0.0:
            raise ValueError(
                f"need gamma > alpha > 0, got alpha={self.alpha}, gamma={self.gamma}"
            )
        if not 0.0 < self.p_bar < 1.0:
            raise ValueError(f"p_bar must be in (0, 1), got {self.p_bar}")
        if self.p_lo is not None and not 0.0 < self.p_lo < self.p_bar:
            raise ValueError(
                f"need 0 < p_lo < p_bar, got p_lo={self.p_lo}, p_bar={self.p_bar}"
            )

    def value(self) -> float:
        if self.p_lo is None:
            return eval_I(self.alpha, self.gamma, self.p_bar)
        return eval_I_two_sided(self.alpha, self.gamma, self.p_lo, self.p_bar)


@dataclass(frozen=True)
class OddsTriple:
    """Odds of the restriction endpoints and their ratio rho < 1."""

    r_lo: float
    r_bar: float

    @property
    def rho(self) -> float:
        return self.r_lo / self.r_bar

    @classmethod
    def from_interval(cls, p_lo: float, p_bar: float) -> "OddsTriple":
        _check_interval(p_lo, p_bar)
        return cls(r_lo=p_lo / (1.0 - p_lo), r_bar=p_bar / (1.0 - p_bar))

    def __post_init__(self) -> None:
        if self.r_lo <= 0.0 or self.r_bar <= 0.0:
            raise ValueError("odds must be positive")
        if self.r_lo >= self.r_bar:
            raise ValueError("need r_lo < r_bar (rho < 1)")
