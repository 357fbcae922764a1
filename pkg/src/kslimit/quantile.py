"""
Quantiles (ISF/PPF) of the Kolmogorov limiting distribution.

The root of K(x) = p_sf (or L(x) = p_cdf) is found by Newton-Raphson confined
to an explicit bracket, using the exact density as the derivative.  Both
probabilities are passed so that whichever is smaller can drive the solve
without being recovered by subtraction.

For p_sf <= 1/2 the bracket comes from truncating
``2q = p_sf / (1 - q^3 + q^8 - ...)`` and the starting point from the
reversion of ``p = q - q^4 + q^9 - ...``.  Otherwise the one-term theta
approximation ``p = sqrt(2 pi)/x exp(-pi^2/(8x^2))`` is solved by fixed
point iteration for both ends of the bracket.

The quadratic approximation to t = exp(-pi^2/(8x^2)) used as a starting
point is switched on p_cdf >= 0.1; the accompanying note about where it is
valid ("0.1 <= x <= 0.5") is ambiguous as to which variable it refers to, so
the guess is always clamped into the bracket.
"""

import functools
import math
from dataclasses import dataclass
from typing import NamedTuple

from .dist import EPS, kolmogorov_triple
from .errors import DomainError, InvalidPairError

PAIR_TOL = 1e-9
# Relative widening of the p_sf <= 1/2 bracket, absorbing exp/log rounding.
BRACKET_SLACK = 256 * EPS

_LN2 = math.log(2.0)
_LOG_SQRT2PI = 0.5 * math.log(2 * math.pi)
_LOG1M_EM4 = math.log1p(-math.exp(-4.0))


@dataclass(frozen=True)
class ProbPair:
    """Complementary probabilities (p_sf, p_cdf) with p_sf + p_cdf = 1."""

    p_sf: float
    p_cdf: float

    def __post_init__(self):
        for name in ("p_sf", "p_cdf"):
            v = getattr(self, name)
            if not 0 <= v <= 1:
                raise DomainError("%s must lie in [0, 1], got %r" % (name, v))
        if abs(self.p_sf + self.p_cdf - 1) > PAIR_TOL:
            raise InvalidPairError(
                "p_sf + p_cdf must equal 1, got %r + %r" % (self.p_sf, self.p_cdf))

    @classmethod
    def from_sf(cls, p_sf):
        return cls(p_sf, 1.0 - p_sf)

    @classmethod
    def from_cdf(cls, p_cdf):
        return cls(1.0 - p_cdf, p_cdf)


class Bracket(NamedTuple):
    lo: float
    hi: float

    def __contains__(self, x):
        return self.lo <= x <= self.hi

    def clamp(self, x):
        return min(max(x, self.lo), self.hi)

    @property
    def midpoint(self):
        return 0.5 * (self.lo + self.hi)


@dataclass
class NRReport:
    iterations: int
    converged: bool
    residual: float


def _check_small_p(p_sf):
    if not 0 < p_sf <= 0.5:
        raise DomainError("p_sf must lie in (0, 0.5], got %r" % (p_sf,))


def _check_large_p(p_cdf):
    if not 0 < p_cdf <= 0.73:
        raise DomainError("p_cdf must lie in (0, 0.73], got %r" % (p_cdf,))


def _x_from_logq(logq):
    # x = sqrt(-log(q)/2)
    return math.sqrt(-0.5 * logq)


def bracket_small_p(p_sf):
    """Interval containing K^{-1}(p_sf) for p_sf <= 1/2.

    ``2q <= p_sf/(1 - q^3)`` with q below its median value ``e^{-4/3}``
    gives the lower end; ``2q >= p_sf`` the upper.  Logs are taken
    directly so subnormal p_sf does not lose P = p_sf/2 to underflow.
    """
    _check_small_p(p_sf)
    logp = math.log(p_sf) - _LN2
    log_qa = logp - _LOG1M_EM4 + math.log1p(BRACKET_SLACK)
    log_qb = logp + math.log1p(-BRACKET_SLACK)
    return Bracket(_x_from_logq(log_qa), _x_from_logq(log_qb))


def initial_guess_small_p(p_sf):
    """Starting point from the truncated reversion of q - q^4 + q^9 - ..."""
    _check_small_p(p_sf)
    P = 0.5 * p_sf
    P3 = P * P * P
    # Q0 = P (1 + P^3 + 4P^6 - P^8 + 22P^9 - 13P^11 + 140P^12)
    tail = P3 * (1 + P3 * (4 + P * (-P + P3 * (22 + P * P * (-13 + 140 * P)))))
    logq = math.log(p_sf) - _LN2 + math.log1p(tail)
    return bracket_small_p(p_sf).clamp(_x_from_logq(logq))


def g_p(x, p_cdf):
    """Fixed-point map of the one-term CDF approximation.

    Solving ``p_cdf = sqrt(2 pi)/x * exp(-pi^2/(8 x^2))`` for the x in the
    exponent gives ``x = pi / sqrt(-8 log(p_cdf x / sqrt(2 pi)))``.  Iterates
    from an upper bound stay above the true quantile; the map contracts by
    about 4x^2/pi^2 per step.
    """
    if not (x > 0 and p_cdf > 0):
        raise DomainError("g_p needs x > 0 and p_cdf > 0, got %r, %r" % (x, p_cdf))
    arg = math.log(p_cdf) + math.log(x) - _LOG_SQRT2PI
    if arg >= 0:
        raise DomainError("p_cdf * x / sqrt(2 pi) must be < 1 (x=%r, p_cdf=%r)" % (x, p_cdf))
    return math.pi / math.sqrt(-8 * arg)


def bracket_large_p(p_cdf):
    """Interval containing L^{-1}(p_cdf) for p_cdf <= 0.73."""
    _check_large_p(p_cdf)
    a = max(math.sqrt(p_cdf), 0.04)
    b = 1.0
    for _ in range(2):
        a = g_p(a, p_cdf)
        b = g_p(b, p_cdf)
    return Bracket(a, b)


def initial_guess_large_p(p_cdf, bracket):
    _check_large_p(p_cdf)
    if p_cdf >= 0.1:
        t = (0.2353 * p_cdf + 0.2136) * p_cdf - 0.000764
        return bracket.clamp(math.pi / math.sqrt(-8 * math.log(t)))
    return bracket.midpoint


def bracketed_newton(f, f_deriv, x0, bracket, rel_tol=EPS, max_iter=100,
                     f_tol=0.0, decreasing=None):
    """Newton-Raphson safeguarded by bisection.

    Parameters
    ----------
    f, f_deriv : callable
        Objective and its derivative.  ``f`` must change sign over ``bracket``.
    x0 : float
        Starting point, clamped into ``bracket``.
    bracket : Bracket
    rel_tol : float
        Stop once a step is no larger than ``rel_tol * |x|``.
    max_iter : int
    f_tol : float
        Stop once ``|f(x)| <= f_tol``.
    decreasing : bool, optional
        Orientation of ``f``; found from the endpoint values when omitted.

    Returns
    -------
    root : float
    report : NRReport
        ``iterations`` counts the steps actually taken.
    """
    lo, hi = bracket
    if not lo <= hi:
        raise DomainError("empty bracket [%r, %r]" % (lo, hi))
    if decreasing is None:
        decreasing = f(lo) > f(hi)
    x = min(max(x0, lo), hi)
    fx = f(x)
    prev_step = math.inf
    for it in range(max_iter + 1):
        if abs(fx) <= f_tol:
            return x, NRReport(it, True, fx)
        if (fx > 0) == decreasing:
            lo = x
        else:
            hi = x
        dfx = f_deriv(x)
        xn = None
        if dfx != 0 and math.isfinite(dfx):
            xn = x - fx / dfx
            # a step that fails to halve is not converging quadratically
            if not lo <= xn <= hi or abs(xn - x) > 0.5 * prev_step:
                xn = None
        if xn is None:
            xn = 0.5 * (lo + hi)
        prev_step = abs(xn - x)
        if abs(xn - x) <= rel_tol * abs(xn):
            return x, NRReport(it, True, fx)
        if it == max_iter:
            break
        x = xn
        fx = f(x)
    return x, NRReport(max_iter, False, fx)


def kolmogi(pair, rel_tol=EPS, max_iter=100):
    """Quantile of the Kolmogorov limiting distribution.

    Parameters
    ----------
    pair : ProbPair
        The survival and cumulative probabilities of the requested point.
    rel_tol : float
        Relative step size at which the Newton iteration stops.
    max_iter : int

    Returns
    -------
    x : float
        0 for p_cdf == 0 and +inf for p_sf == 0.
    report : NRReport
    """
    p_sf, p_cdf = pair.p_sf, pair.p_cdf
    if p_cdf == 0:
        return 0.0, NRReport(0, True, 0.0)
    if p_sf == 0:
        return math.inf, NRReport(0, True, 0.0)

    triple = functools.lru_cache(maxsize=4)(kolmogorov_triple)
    if p_sf <= 0.5:
        bracket = bracket_small_p(p_sf)
        x0 = initial_guess_small_p(p_sf)

        def f(x):
            return triple(x).sf - p_sf
    else:
        bracket = bracket_large_p(p_cdf)
        x0 = initial_guess_large_p(p_cdf, bracket)

        def f(x):
            return p_cdf - triple(x).cdf

    def f_deriv(x):
        return -triple(x).pdf

    f_tol = 2 * math.ulp(min(p_sf, p_cdf))
    return bracketed_newton(f, f_deriv, x0, bracket, rel_tol=rel_tol,
                            max_iter=max_iter, f_tol=f_tol, decreasing=True)


def kolmogi_sf(p_sf, **kwargs):
    """x with K(x) = p_sf; the report is discarded."""
    return kolmogi(ProbPair.from_sf(p_sf), **kwargs)[0]


def kolmogi_cdf(p_cdf, **kwargs):
    """x with L(x) = p_cdf; the report is discarded."""
    return kolmogi(ProbPair.from_cdf(p_cdf), **kwargs)[0]
