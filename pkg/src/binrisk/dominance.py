"""Dominance conditions, risk-difference bounds, and grid certification.

"Dominates" is certified on a finite grid (default 512 points including
the restriction's upper endpoint): the risks themselves are exact, so
each grid value is trustworthy, but the verdict is a statement at grid
resolution, not a symbolic proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .binom import BinomialSetup, PriorSpec, binom_pmf
from .estimators import EstimateTable
from .incbeta import eval_I, eval_J, log_beta_measure, log_eval_I
from .risk import compensated_sum, point_risk

GRID_SLACK = 1e-12
NOISE_CEILING = 1e-9


class BoundUndefinedError(ArithmeticError):
    """The log argument of the risk-difference bound is nonpositive."""


def _check_config(n: int, a: float, b: float) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n}")
    if a <= 0.0 or b <= 0.0:
        raise ValueError(f"a and b must be positive, got ({a}, {b})")


def thm32_bound(p: float, n: int, a: float, b: float, p_bar: float) -> float:
    """Upper bound on the standardized risk difference (truncated minus
    untruncated) in the upper-restriction case."""
    _check_config(n, a, b)
    if not 0.0 < p <= p_bar:
        raise ValueError(f"p must be in (0, p_bar], got p={p}, p_bar={p_bar}")
    j = eval_J(p, n, a, b, p_bar)
    s = n + a + b
    arg = 1.0 - 1.0 / ((1.0 - p_bar) * s * j)
    if arg <= 0.0:
        raise BoundUndefinedError(
            f"bound undefined at p={p}: log argument {arg} <= 0"
        )
    return (1.0 - p) * math.log(arg) + p * math.log1p(
        (1.0 + 1.0 / j) / (p_bar * s)
    )


def risk_difference_upper(p: float, n: int, a: float, b: float, p_bar: float) -> float:
    """Exact risk difference: truncated-to-(0, p_bar] minus untruncated."""
    setup = BinomialSetup(n=n)
    trunc = EstimateTable.build(setup, PriorSpec(a=a, b=b, p_bar=p_bar))
    unres = EstimateTable.build(setup, PriorSpec(a=a, b=b))
    return point_risk(trunc, p) - point_risk(unres, p)


def risk_difference_interval(
    p: float, n: int, a: float, b: float, p_lo: float, p_bar: float
) -> float:
    """Exact risk difference: truncated-to-[p_lo, p_bar] minus untruncated."""
    setup = BinomialSetup(n=n)
    trunc = EstimateTable.build(
        setup, PriorSpec(a=a, b=b, p_bar=p_bar, p_lo=p_lo)
    )
    unres = EstimateTable.build(setup, PriorSpec(a=a, b=b))
    return point_risk(trunc, p) - point_risk(unres, p)


def standardized_risk_difference(
    p: float, n: int, a: float, b: float, p_bar: float
) -> float:
    """Exact risk difference divided by J(p) E_p[1/I(X+a, n+a+b+1, p_bar)]."""
    _check_config(n, a, b)
    if not 0.0 < p <= p_bar:
        raise ValueError(f"p must be in (0, p_bar], got p={p}, p_bar={p_bar}")
    delta = risk_difference_upper(p, n, a, b, p_bar)
    gamma = n + a + b + 1.0
    mean_inv_i = compensated_sum(
        [
            binom_pmf(x, n, p) * math.exp(-log_eval_I(x + a, gamma, p_bar))
            for x in range(n + 1)
        ]
    )
    denom = eval_J(p, n, a, b, p_bar) * mean_inv_i
    assert denom > 0.0
    return delta / denom


def _j_at_p_bar(n: int, a: float, b: float, p_bar: float) -> float:
    """J(p_bar) = I(a, a+b+1, p_bar), with the closed forms for b = 1 and
    a = b = 1/2 used when available."""
    if b == 1.0:
        return (1.0 + (1.0 - p_bar) * a) / ((1.0 - p_bar) ** 2 * a * (a + 1.0))
    if a == 0.5 and b == 0.5:
        return (
            1.0
            + math.atan(math.sqrt(p_bar / (1.0 - p_bar)))
            / math.sqrt(p_bar * (1.0 - p_bar))
        ) / (1.0 - p_bar)
    return eval_I(a, a + b + 1.0, p_bar)


def smallpbar_sufficient_conditions(
    n: int, a: float, b: float, p_bar: float
) -> tuple[bool, bool]:
    """Two sufficient conditions for the truncated estimator to dominate.

    The first is general; the second is the sharper variant valid when
    p_bar <= 1/n. An undefined log argument means the bound chain does
    not apply, which we report as the condition not holding.
    """
    _check_config(n, a, b)
    s = n + a + b
    j0 = eval_I(a, n + a + b + 1.0, p_bar)
    j_bar = _j_at_p_bar(n, a, b, p_bar)
    log_gain = math.log1p((1.0 + 1.0 / j_bar) / (p_bar * s))
    arg = 1.0 - 1.0 / ((1.0 - p_bar) * s * j0)
    if arg <= 0.0:
        cond_general = False
    else:
        cond_general = (
            math.log(arg) + p_bar / (1.0 - p_bar) * log_gain < 0.0
        )
    cond_small = (
        p_bar <= 1.0 / n
        and -1.0 / ((1.0 - p_bar) * s)
        + p_bar / (1.0 - p_bar) * j_bar * log_gain
        < 0.0
    )
    return cond_general, cond_small


def thm33_necessary(n: int, a: float, b: float, p_bar: float) -> bool:
    """Necessary for domination in the upper case: p_bar < (n+a)/(n+a+b)."""
    _check_config(n, a, b)
    return p_bar < (n + a) / (n + a + b)


def thm34_necessary(n: int, a: float, p_bar: float) -> bool:
    """Necessary condition for domination in the upper case with b = 1."""
    _check_config(n, a, 1.0)
    lhs = p_bar * math.log1p((1.0 - p_bar) * (a + 1.0) / (p_bar * (n + a + 1.0)))
    rhs = (1.0 - p_bar) * math.log(
        (n + a + 1.0) * (1.0 - p_bar ** (n + 1)) / ((n + 1.0) * (1.0 - p_bar))
    )
    return lhs < rhs


def thm41_conditions(
    n: int, a: float, b: float, p_lo: float, p_bar: float
) -> tuple[bool, bool]:
    """Sufficient pair for interval-restriction domination; both true
    certifies that the interval-truncated estimator dominates."""
    _check_config(n, a, b)
    if not 0.0 < p_lo < p_bar < 1.0:
        raise ValueError(f"need 0 < p_lo < p_bar < 1, got ({p_lo}, {p_bar})")
    c1 = p_bar <= (a + 1.0) / (n + a + b + 1.0)
    c2 = (
        p_bar / (1.0 - p_bar) * math.log((p_lo * n + a + 1.0) / (p_bar * (n + a + b)))
        + math.log(((1.0 - p_lo) * n + b) / ((1.0 - p_bar) * (n + a + b)))
        <= 0.0
    )
    return c1, c2


def cor41_conditions(a: float, c_lo: float, c_bar: float) -> bool:
    """Large-n domination regime for p_lo = c_lo/n, p_bar = c_bar/n."""
    if a <= 0.0:
        raise ValueError(f"a must be positive, got {a}")
    if not 0.0 < c_lo < c_bar:
        raise ValueError(f"need 0 < c_lo < c_bar, got ({c_lo}, {c_bar})")
    if c_bar >= a + 1.0:
        return False
    return c_bar * math.log((c_lo + a + 1.0) / c_bar) + c_bar - c_lo < a


def _check_symmetric_p_bar(p_bar: float) -> None:
    if not 0.5 < p_bar < 1.0:
        raise ValueError(f"p_bar must be in (1/2, 1), got {p_bar}")


def max_risk_diff_symmetric_n1_generic(a: float, p_bar: float) -> float:
    """Maximum risk difference for n = 1, b = a, p_lo = 1 - p_bar, via the
    beta-measure integrals."""
    if a <= 0.0:
        raise ValueError(f"a must be positive, got {a}")
    _check_symmetric_p_bar(p_bar)
    p_lo = 1.0 - p_bar
    m1 = log_beta_measure(a + 1.0, a, p_lo, p_bar)
    m2 = log_beta_measure(a + 2.0, a, p_lo, p_bar)
    m3 = log_beta_measure(a, a + 1.0, p_lo, p_bar)
    m4 = log_beta_measure(a + 1.0, a + 1.0, p_lo, p_bar)
    term1 = math.log((1.0 + a) / (1.0 + 2.0 * a)) + m1 - m2
    term2 = math.log(a / (1.0 + 2.0 * a)) + m3 - m4
    return (p_lo**2 + p_bar**2) * term1 + 2.0 * p_lo * p_bar * term2


def _max_risk_diff_uniform(p_bar: float) -> float:
    """Closed form of the n = 1 maximum risk difference for a = b = 1."""
    p_lo = 1.0 - p_bar
    q = (p_bar**3 - p_lo**3) / (p_bar**2 - p_lo**2)
    return -(p_lo**2 + p_bar**2) * math.log(q) - 2.0 * p_lo * p_bar * math.log(
        3.0 - 2.0 * q
    )


def _max_risk_diff_jeffreys(p_bar: float) -> float:
    """Closed form of the n = 1 maximum risk difference for a = b = 1/2."""
    p_lo = 1.0 - p_bar
    r_lo = p_lo / (1.0 - p_lo)
    r_bar = p_bar / (1.0 - p_bar)

    def u32(u: float) -> float:
        return u**1.5 / (1.0 + u) ** 2

    def u12(u: float) -> float:
        return math.sqrt(u) / (1.0 + u)

    top = u32(r_bar) - u32(r_lo)
    bottom = (
        math.atan(math.sqrt(r_bar))
        - math.atan(math.sqrt(r_lo))
        - (u12(r_bar) - u12(r_lo))
    )
    ratio = top / bottom
    return -(p_lo**2 + p_bar**2) * math.log1p(-2.0 / 3.0 * ratio) - (
        2.0 * p_lo * p_bar
    ) * math.log1p(2.0 * ratio)


def max_risk_diff_symmetric_n1(a: float, p_bar: float) -> float:
    """Maximum risk difference for n = 1, b = a, symmetric interval.

    Negative means the interval-truncated estimator dominates everywhere
    on [1 - p_bar, p_bar]. The uniform (a = 1) and Jeffreys (a = 1/2)
    priors use their closed forms; anything else goes through the
    integral path.
    """
    if a == 1.0:
        _check_symmetric_p_bar(p_bar)
        return _max_risk_diff_uniform(p_bar)
    if a == 0.5:
        _check_symmetric_p_bar(p_bar)
        return _max_risk_diff_jeffreys(p_bar)
    return max_risk_diff_symmetric_n1_generic(a, p_bar)


def dominance_threshold_n1(
    a: float, tol: float = 1e-6, max_iter: int = 200
) -> float:
    """Root of the n = 1 symmetric maximum risk difference on (1/2, 1).

    Below the root the truncated estimator dominates; above it does not.
    Bisection from an initial bracket [0.5 + 1e-4, 1 - 1e-4], shrinking
    inward if either end fails to bracket a sign change.
    """
    if a <= 0.0:
        raise ValueError(f"a must be positive, got {a}")
    lo, hi = 0.5 + 1e-4, 1.0 - 1e-4
    f_lo = max_risk_diff_symmetric_n1(a, lo)
    f_hi = max_risk_diff_symmetric_n1(a, hi)
    shrink = 0
    while f_lo * f_hi > 0.0 and shrink < 20:
        lo = 0.5 + (lo - 0.5) / 2.0
        hi = 1.0 - (1.0 - hi) / 2.0
        f_lo = max_risk_diff_symmetric_n1(a, lo)
        f_hi = max_risk_diff_symmetric_n1(a, hi)
        shrink += 1
    if f_lo * f_hi > 0.0:
        raise ArithmeticError(
            f"no sign change bracketed on (1/2, 1) for a={a}"
        )
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = max_risk_diff_symmetric_n1(a, mid)
        if f_lo * f_mid <= 0.0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class DominanceReport:
    """Verdict and supporting diagnostics for one prior configuration."""

    n: int
    a: float
    b: float
    restriction: str
    p_lo: float | None
    p_bar: float
    p_grid: tuple[float, ...]
    risk_difference: tuple[float, ...]
    thm32_bound_curve: tuple[float | None, ...] | None
    standardized_diff_curve: tuple[float, ...] | None
    condition_flags: dict[str, bool | None] = field(default_factory=dict)
    grid_verdict: str = "inconclusive"
    worst_p: float = math.nan
    worst_difference: float = math.nan


def exhaustive_dominance_check(
    n: int,
    a: float,
    b: float,
    p_bar: float,
    p_lo: float | None = None,
    grid_size: int = 512,
) -> DominanceReport:
    """Exact risk differences over a uniform grid on the restriction.

    Verdict: 'dominates' when every difference is <= 1e-12, and
    'dominated_somewhere' when the worst difference clears the numerical
    noise ceiling of 1e-9; anything in between is 'inconclusive'.
    """
    _check_config(n, a, b)
    if grid_size < 2:
        raise ValueError(f"grid_size must be >= 2, got {grid_size}")
    if p_lo is None:
        lo = p_bar / grid_size  # open at 0
        restriction = "upper"
    else:
        if not 0.0 < p_lo < p_bar < 1.0:
            raise ValueError(f"need 0 < p_lo < p_bar < 1, got ({p_lo}, {p_bar})")
        lo = p_lo
        restriction = "interval"
    grid = [
        lo + (p_bar - lo) * i / (grid_size - 1) for i in range(grid_size - 1)
    ]
    grid.append(p_bar)  # the closed upper endpoint, exactly

    setup = BinomialSetup(n=n)
    unres = EstimateTable.build(setup, PriorSpec(a=a, b=b))
    trunc = EstimateTable.build(
        setup, PriorSpec(a=a, b=b, p_bar=p_bar, p_lo=p_lo)
    )
    diffs = tuple(
        point_risk(trunc, p) - point_risk(unres, p) for p in grid
    )

    worst_idx = max(range(len(grid)), key=lambda i: diffs[i])
    worst = diffs[worst_idx]
    if worst <= GRID_SLACK:
        verdict = "dominates"
    elif worst > NOISE_CEILING:
        verdict = "dominated_somewhere"
    else:
        verdict = "inconclusive"

    flags: dict[str, bool | None] = {
        "thm33_necessary": thm33_necessary(n, a, b, p_bar),
        "thm34_necessary": thm34_necessary(n, a, p_bar) if b == 1.0 else None,
        "thm41_c1": None,
        "thm41_c2": None,
        "smallpbar_sufficient": None,
    }
    bound_curve: tuple[float | None, ...] | None = None
    std_curve: tuple[float, ...] | None = None
    if restriction == "upper":
        cond_general, _ = smallpbar_sufficient_conditions(n, a, b, p_bar)
        flags["smallpbar_sufficient"] = cond_general
        bounds: list[float | None] = []
        for p in grid:
            try:
                bounds.append(thm32_bound(p, n, a, b, p_bar))
            except BoundUndefinedError:
                bounds.append(None)
        bound_curve = tuple(bounds)
        std_curve = tuple(
            standardized_risk_difference(p, n, a, b, p_bar) for p in grid
        )
    else:
        c1, c2 = thm41_conditions(n, a, b, p_lo, p_bar)
        flags["thm41_c1"] = c1
        flags["thm41_c2"] = c2

    return DominanceReport(
        n=n,
        a=a,
        b=b,
        restriction=restriction,
        p_lo=p_lo,
        p_bar=p_bar,
        p_grid=tuple(grid),
        risk_difference=diffs,
        thm32_bound_curve=bound_curve,
        standardized_diff_curve=std_curve,
        condition_flags=flags,
        grid_verdict=verdict,
        worst_p=grid[worst_idx],
        worst_difference=worst,
    )
