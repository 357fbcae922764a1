"""
One-sided Kolmogorov-Smirnov (Smirnov) statistics.

For a sample of size n from a continuous F, D_n^+ = sup(F_n - F) and
D_n^- = sup(F - F_n) share the distribution

    P(D_n^+ >= x) = S_n(x) = x sum_{j=0}^{floor(n(1-x))} C(n,j) (x + j/n)^(j-1) (1 - x - j/n)^(n-j)

which tends to exp(-2 n x^2).  The two-sided statistic is their maximum,
and P(D_n >= x) = 2 P(D_n^+ >= x) whenever x >= 1/2.
"""

import math
from typing import NamedTuple

import numpy as np

from .errors import DomainError

MAX_N = 10_000


class EcdfStats(NamedTuple):
    n: int
    d_plus: float
    d_minus: float
    d: float


def smirnov_sf_exact(n, x):
    """Exact P(D_n^+ >= x) for 1 <= n <= 10000.

    Each term is formed in log space; accuracy degrades slowly past
    n ~ 1000 as the terms grow to many times the size of the sum.
    """
    if not (isinstance(n, (int, np.integer)) and 1 <= n <= MAX_N):
        raise DomainError("n must be an integer in [1, %d], got %r" % (MAX_N, n))
    if not 0 <= x <= 1:
        raise DomainError("x must lie in [0, 1], got %r" % (x,))
    if x == 0:
        return 1.0
    if x == 1:
        return 0.0
    terms = [(1 - x) ** n]  # j = 0: the x * x^-1 factors cancel
    log_x = math.log(x)
    lg_n1 = math.lgamma(n + 1)
    for j in range(1, math.floor(n * (1 - x)) + 1):
        base = 1 - x - j / n
        if base <= 0:
            # n - j > 0 here; a zero or rounding-negative base kills the term
            continue
        log_term = (lg_n1 - math.lgamma(j + 1) - math.lgamma(n - j + 1) + log_x
                    + (j - 1) * math.log(x + j / n) + (n - j) * math.log(base))
        terms.append(math.exp(log_term))
    return min(max(math.fsum(terms), 0.0), 1.0)


def smirnov_sf_limit(x):
    """Limiting P(sqrt(n) D_n^+ >= x) = exp(-2x^2)."""
    if x < 0:
        raise DomainError("x must be non-negative, got %r" % (x,))
    return math.exp(-2 * x * x)


def maag_dicaire_sf(n, x):
    """exp(-(6nx + 1)^2 / (18n)), a finite-n correction to the limit."""
    if n < 1 or not 0 <= x <= 1:
        raise DomainError("need n >= 1 and 0 <= x <= 1, got n=%r, x=%r" % (n, x))
    return math.exp(-(6 * n * x + 1) ** 2 / (18 * n))


def ecdf_statistics(pit_values):
    """D_n^+, D_n^- and D_n for probability-integral-transformed data.

    Parameters
    ----------
    pit_values : array_like
        F(Y_i) for each observation; every value must lie in [0, 1].

    Returns
    -------
    EcdfStats
    """
    u = np.sort(np.asarray(pit_values, dtype=float).ravel())
    n = u.size
    if n == 0:
        raise DomainError("need at least one value")
    if np.isnan(u).any() or u[0] < 0 or u[-1] > 1:
        raise DomainError("PIT values must lie in [0, 1]")
    i = np.arange(1, n + 1)
    d_plus = max(float(np.max(i / n - u)), 0.0)
    d_minus = max(float(np.max(u - (i - 1) / n)), 0.0)
    return EcdfStats(n, d_plus, d_minus, max(d_plus, d_minus))
