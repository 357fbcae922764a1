"""
Legacy evaluation of the Kolmogorov SF and ISF, kept for comparison.

This mirrors the long-standing double precision routines: the SF sums the
alternating series q - q^4 + q^9 - ... term by term until a term is small
relative to the partial sum, and the ISF runs plain Newton-Raphson on it with
the one-term derivative -8x exp(-2x^2).  Nothing is recombined, compensated or
clipped, so the known defects (values above 1, non-monotonicity, slow and
premature convergence) are reproduced on purpose.
"""

import math
from typing import NamedTuple

from .errors import DomainError

MAX_TERMS = 500
MAX_ITER = 500
TERM_RTOL = 1e-16
STEP_RTOL = 1e-10


class BaselineResult(NamedTuple):
    value: float
    terms_or_iters: int
    hit_cap: bool


def baseline_sf(x):
    """K(x) by direct summation of 2 * sum (-1)^(k-1) exp(-2 k^2 x^2)."""
    if x < 1.1e-16:
        return BaselineResult(1.0, 0, False)
    a = -2.0 * x * x
    sign = 1.0
    p = 0.0
    r = 1.0
    n = 0
    while n < MAX_TERMS:
        t = math.exp(a * r * r)
        p += sign * t
        n += 1
        if t == 0.0 or t / p <= TERM_RTOL:
            break
        r += 1.0
        sign = -sign
    return BaselineResult(p + p, n, n >= MAX_TERMS)


def baseline_isf(p_sf):
    """K^{-1}(p_sf) by unbracketed Newton-Raphson with an approximate slope.

    Starts from q0 = p_sf/2, i.e. x0 = sqrt(-log(q0)/2), and stops when the
    relative change drops below 1e-10 or after 500 iterations.  The count of
    SF terms spent is not reported; see ``baseline_isf_cost``.
    """
    return _baseline_isf(p_sf)[0]


def baseline_isf_cost(p_sf):
    """Total number of exponentials evaluated by ``baseline_isf``."""
    return _baseline_isf(p_sf)[1]


def _baseline_isf(p_sf):
    if not 0 < p_sf < 1:
        raise DomainError("p_sf must lie in (0, 1), got %r" % (p_sf,))
    if 1.0 - p_sf < 1e-16:
        return BaselineResult(0.0, 0, False), 0
    q0 = min(max(0.5 * p_sf, math.ulp(0.0)), 1.0 - 2 ** -53)
    y = math.sqrt(-0.5 * math.log(q0))
    n_exp = 0
    it = 0
    while True:
        t = -2.0 * y
        dpdy = 4.0 * t * math.exp(t * y)
        n_exp += 1
        if dpdy == 0.0:
            return BaselineResult(0.0, it, False), n_exp
        sf = baseline_sf(y)
        n_exp += sf.terms_or_iters
        t = (p_sf - sf.value) / dpdy
        y = y + t
        it += 1
        if it >= MAX_ITER:
            return BaselineResult(y, it, True), n_exp
        if abs(t / y) <= STEP_RTOL:
            return BaselineResult(y, it, False), n_exp
