"""
SF, CDF and PDF of the Kolmogorov limiting distribution.

For the two-sided statistic sqrt(n) * D_n as n -> infinity,

    K(x) = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 x^2)                  (SF)
    L(x) = sqrt(2 pi)/x sum_{k>=1} exp(-(2k-1)^2 pi^2 / (8 x^2))    (CDF)

and L + K = 1.  The alternating q-series is only well behaved for large x;
the theta form L converges after one or two terms for small x.  Each side is
summed as a nested (Horner) product so partial results stay positive, and the
series used always computes the smaller of the two probabilities near the
median, with the other obtained as the complement.
"""

import enum
import math
from typing import NamedTuple

from .errors import DomainError

EPS = 2.0 ** -52

# Approximately the median; at or below this the CDF series is summed.
CUTOVER = 0.82

# Below this L(x) is smaller than the smallest subnormal double.
MIN_X = 0.040

_SQRT2PI = math.sqrt(2 * math.pi)
_LOG_SQRT2PI = 0.5 * math.log(2 * math.pi)
_PI2 = math.pi ** 2
# pi^2/8 as an unevaluated sum hi + lo
_PI2_8_HI = 1.2337005501361697
_PI2_8_LO = 7.831619385924639e-17
_SPLITTER = 134217729.0  # 2^27 + 1


class Branch(enum.Enum):
    SMALL_X = "SmallX"
    LARGE_X = "LargeX"
    DEGENERATE = "Degenerate"


class DistTriple(NamedTuple):
    sf: float
    cdf: float
    pdf: float
    branch: Branch
    terms: int


def _check_x(x):
    if not (math.isfinite(x) and x > 0):
        raise DomainError("x must be positive and finite, got %r" % (x,))


def _check_eps(eps):
    if not 0 < eps < 1:
        raise DomainError("eps must lie in (0, 1), got %r" % (eps,))


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    # Dekker: a*b == p + e exactly (barring over/underflow).
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _theta_weight(x):
    """sqrt(2 pi)/x * exp(-pi^2/(8 x^2)).

    The exponent reaches ~500 near the bottom of the representable range, so
    it is carried in double-double; a plain evaluation loses ~1e-13.
    """
    x2, x2_lo = _two_prod(x, x)
    a0 = _PI2_8_HI / x2
    h, l = _two_prod(a0, x2)
    a1 = (((_PI2_8_HI - h) - l) + _PI2_8_LO - a0 * x2_lo) / x2
    s, err = _two_sum(_LOG_SQRT2PI - math.log(x), -a0)
    return math.exp(s) * (1 + (err - a1))


def small_x_terms(x, eps=EPS):
    """Horner depth R for the theta series at ``x``."""
    r = math.floor(math.sqrt(-2 * math.log(eps)) * x / math.pi + 1)
    if eps >= EPS:
        return min(max(r, 1), 2)
    return max(r, 1)


def large_x_terms(x, eps=EPS):
    """Horner depth R for the alternating series at ``x``.

    The truncated product keeps the terms k = 1..R+1, so the relative error
    is about q^((R+2)^2 - 1); R is the least depth pushing that below eps.
    """
    r = math.ceil(math.sqrt(1 - math.log(eps) / (2 * x * x))) - 2
    if eps >= EPS:
        return min(max(r, 0), 4)
    return max(r, 0)


def eval_small_x(x, eps=EPS):
    """CDF and PDF from the theta series.

    Intended for 0 < x <= 0.82, but accurate well past 1.

    Returns
    -------
    cdf, pdf : float
    terms : int
        Horner depth R used.
    """
    _check_x(x)
    _check_eps(eps)
    R = small_x_terms(x, eps)
    x2 = x * x
    U = math.exp(-_PI2 / x2)
    # U**r by repeated multiplication, innermost (largest r) first.
    powers = [1.0]
    for _ in range(R):
        powers.append(powers[-1] * U)
    S = 1.0
    D = (2 * R + 1) ** 2
    for r in range(R, 0, -1):
        Ur = powers[r]
        S = 1 + Ur * S
        D = (2 * r - 1) ** 2 + Ur * D
    # Prefactor folded into the exponential so it does not underflow first.
    wt = _theta_weight(x)
    cdf = wt * S
    pdf = wt * (_PI2 * D / (4 * x2) - S) / x
    return cdf, pdf, R


def eval_large_x(x, eps=EPS):
    """SF and PDF from the alternating series in q = exp(-2x^2).

    Intended for x > 0.82, usable down to about 0.75.
    """
    _check_x(x)
    _check_eps(eps)
    R = large_x_terms(x, eps)
    x2, x2_lo = _two_prod(x, x)
    q = math.exp(-2 * x2) * (1 - 2 * x2_lo)
    q2 = q * q
    S = 1.0
    D = (R + 1) ** 2
    if R:
        # q^(2r+1), built by stepping q^3 -> q^5 -> ... with q^2.
        qpow = [0.0, q * q2]
        for _ in range(R - 1):
            qpow.append(qpow[-1] * q2)
        for r in range(R, 0, -1):
            S = 1 - qpow[r] * S
            D = r * r - qpow[r] * D
    sf = 2 * q * S
    pdf = 8 * q * x * D
    return sf, pdf, R


def kolmogorov_triple(x, eps=EPS):
    """Evaluate SF, CDF and PDF of the limiting distribution at ``x``.

    Parameters
    ----------
    x : float
        Point of evaluation; values <= 0 and +inf are accepted.
    eps : float
        Target relative tolerance of the series truncation.

    Returns
    -------
    DistTriple
    """
    if math.isnan(x):
        raise DomainError("x is NaN")
    _check_eps(eps)
    if x <= 0:
        return DistTriple(1.0, 0.0, 0.0, Branch.DEGENERATE, 0)
    if math.isinf(x):
        return DistTriple(0.0, 1.0, 0.0, Branch.DEGENERATE, 0)
    if x <= CUTOVER:
        cdf, pdf, terms = eval_small_x(x, eps)
        sf = 1 - cdf
        branch = Branch.SMALL_X
    else:
        sf, pdf, terms = eval_large_x(x, eps)
        cdf = 1 - sf
        branch = Branch.LARGE_X
    sf = min(max(sf, 0.0), 1.0)
    cdf = min(max(cdf, 0.0), 1.0)
    pdf = max(pdf, 0.0)
    return DistTriple(sf, cdf, pdf, branch, terms)


def kolmogorov_sf(x, eps=EPS):
    return kolmogorov_triple(x, eps).sf


def kolmogorov_cdf(x, eps=EPS):
    return kolmogorov_triple(x, eps).cdf


def kolmogorov_pdf(x, eps=EPS):
    return kolmogorov_triple(x, eps).pdf
