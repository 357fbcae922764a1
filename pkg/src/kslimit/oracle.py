"""
Extended-precision reference values for the Kolmogorov limiting distribution.

Everything here is evaluated with mpmath at a caller-chosen number of decimal
digits and is meant to referee the double precision code, not to be fast.
Two series are available:

    theta form    L(x) = sqrt(2 pi)/x * sum_{k>=1} t^((2k-1)^2),  t = exp(-pi^2/(8x^2))
    alternating   K(x) = 2 * sum_{k>=1} (-1)^(k-1) q^(k^2),       q = exp(-2x^2)

with L + K = 1.  The public functions use the theta form for x <= 1 and the
alternating form above that; each is free of harmful cancellation in its
region once enough guard digits are carried.
"""

import mpmath

DEFAULT_DIGITS = 200
_GUARD = 20
_CROSSOVER = 1


def _ctx(digits):
    if digits < 50:
        raise ValueError("oracle precision must be at least 50 digits, got %r" % digits)
    ctx = mpmath.mp.clone()
    ctx.dps = digits + _GUARD
    return ctx


def _positive(ctx, x):
    x = ctx.mpf(x)
    if not x > 0:
        raise ValueError("x must be positive, got %s" % x)
    return x


def theta_cdf(x, digits=DEFAULT_DIGITS):
    """L(x) from the all-positive theta series."""
    ctx = _ctx(digits)
    x = _positive(ctx, x)
    return _theta_sums(ctx, x, digits)[0]


def alternating_sf(x, digits=DEFAULT_DIGITS):
    """K(x) from the alternating series in q = exp(-2x^2)."""
    ctx = _ctx(digits)
    x = _positive(ctx, x)
    return _alt_sums(ctx, x, digits)[0]


def _theta_sums(ctx, x, digits):
    # Returns (L, L') summed until terms drop below 10^-digits relative.
    logt = -ctx.pi ** 2 / (8 * x * x)
    cutoff = ctx.mpf(10) ** (-digits - 5)
    s = ctx.zero
    d = ctx.zero
    n = 1
    while True:
        tn = ctx.exp(logt * n * n)
        s += tn
        d += (ctx.pi ** 2 * n * n - 4 * x * x) * tn
        if tn <= cutoff * s:
            break
        n += 2
    pref = ctx.sqrt(2 * ctx.pi) / x
    return pref * s, pref * d / (4 * x ** 3)


def _alt_sums(ctx, x, digits):
    # Returns (K, -K').
    logq = -2 * x * x
    cutoff = ctx.mpf(10) ** (-digits - 5)
    s = ctx.zero
    d = ctx.zero
    k = 1
    sign = 1
    while True:
        qk = ctx.exp(logq * k * k)
        s += sign * qk
        d += sign * k * k * qk
        if qk <= cutoff * abs(s):
            break
        k += 1
        sign = -sign
    return 2 * s, 8 * x * d


def oracle_cdf(x, digits=DEFAULT_DIGITS):
    """CDF L(x) of the limiting distribution, at ``digits`` decimal digits."""
    ctx = _ctx(digits)
    x = ctx.mpf(x)
    if x <= 0:
        return ctx.zero
    if x <= _CROSSOVER:
        return +_theta_sums(ctx, x, digits)[0]
    return 1 - _alt_sums(ctx, x, digits)[0]


def oracle_sf(x, digits=DEFAULT_DIGITS):
    """Survival function K(x) = 1 - L(x)."""
    ctx = _ctx(digits)
    x = ctx.mpf(x)
    if x <= 0:
        return ctx.one
    if x <= _CROSSOVER:
        return 1 - _theta_sums(ctx, x, digits)[0]
    return +_alt_sums(ctx, x, digits)[0]


def oracle_pdf(x, digits=DEFAULT_DIGITS):
    """Density L'(x) = -K'(x)."""
    ctx = _ctx(digits)
    x = ctx.mpf(x)
    if x <= 0:
        return ctx.zero
    if x <= _CROSSOVER:
        return _theta_sums(ctx, x, digits)[1]
    return _alt_sums(ctx, x, digits)[1]


def _bisect(ctx, below, lo, hi, digits):
    # below(x) is True left of the root.  Stops at 10^(-digits/2) relative width.
    rtol = ctx.mpf(10) ** (-(digits // 2))
    while hi - lo > rtol * hi:
        mid = (lo + hi) / 2
        if below(mid):
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def _quantile(p, side, digits):
    ctx = _ctx(digits)
    p = ctx.mpf(p)
    if not 0 < p < 1:
        raise ValueError("probability must lie in (0, 1), got %s" % p)
    if side == "sf":
        below = lambda x: _eval(ctx, x, digits, "sf") > p
    else:
        below = lambda x: _eval(ctx, x, digits, "cdf") < p
    hi = ctx.one
    while below(hi):
        hi *= 2
    lo = hi / 2
    while lo > 0 and not below(lo):
        lo /= 2
    return _bisect(ctx, below, lo, hi, digits)


def _eval(ctx, x, digits, which):
    if x <= _CROSSOVER:
        cdf = _theta_sums(ctx, x, digits)[0]
        return cdf if which == "cdf" else 1 - cdf
    sf = _alt_sums(ctx, x, digits)[0]
    return sf if which == "sf" else 1 - sf


def oracle_quantile_sf(p_sf, digits=DEFAULT_DIGITS):
    """x with K(x) = p_sf, by bisection."""
    return _quantile(p_sf, "sf", digits)


def oracle_quantile_cdf(p_cdf, digits=DEFAULT_DIGITS):
    """x with L(x) = p_cdf, by bisection."""
    return _quantile(p_cdf, "cdf", digits)
