import mpmath
import pytest

from kslimit import oracle



@pytest.fixture(autouse=True)
def _high_precision():
    with mpmath.workdps(250):
        yield


# Values below were produced by this module at 200 digits and cross-checked
# against the alternating series where both converge.
MEDIAN = "0.82757355518990769011"


def test_cdf_at_001_is_first_theta_term_times_prefactor():
    # first term t = exp(-pi^2/(8x^2)) ~ 1.278e-5358, times sqrt(2 pi)/x
    t = mpmath.exp(-mpmath.pi ** 2 / (8 * mpmath.mpf(0.01) ** 2))
    assert mpmath.nstr(t, 4) == "1.278e-5358"
    val = oracle.oracle_cdf(0.01)
    assert mpmath.nstr(val, 4) == "3.204e-5356"
    assert abs(val / (mpmath.sqrt(2 * mpmath.pi) / mpmath.mpf(0.01) * t) - 1) < mpmath.mpf(10) ** -190


def test_sf_at_001_is_one_minus_tiny():
    # 1 - 3.2e-5356: indistinguishable from 1 at 200 digits; the slowly
    # converging alternating series must reach the same value.
    assert oracle.oracle_sf(0.01) == 1
    assert abs(oracle.alternating_sf(0.01, 60) - 1) < mpmath.mpf(10) ** -55


def test_smallest_subnormal_point():
    # L(0.040596694...) is the smallest positive double, 2^-1074
    ratio = oracle.oracle_cdf(0.040596694) / mpmath.mpf(2) ** -1074
    assert abs(ratio - 1) < 1e-4
    root = oracle.oracle_quantile_cdf(mpmath.mpf(2) ** -1074, 60)
    assert abs(root - mpmath.mpf("0.04059669489818696899")) < mpmath.mpf(10) ** -18


@pytest.mark.parametrize("x", [0.3, 0.8, 1.5])
def test_two_series_agree(x):
    digits = 200
    lhs = 1 - oracle.theta_cdf(x, digits)
    rhs = oracle.alternating_sf(x, digits)
    assert abs(lhs - rhs) <= mpmath.mpf(10) ** -(digits - 10)


def test_precision_monotonicity():
    for x in (0.1, 0.82757, 2.0):
        a = oracle.oracle_cdf(x, 100)
        b = oracle.oracle_cdf(x, 200)
        assert abs(a - b) <= abs(b) * mpmath.mpf(10) ** -90


def test_median():
    q = oracle.oracle_quantile_sf(0.5)
    assert abs(q - mpmath.mpf(MEDIAN)) < mpmath.mpf(10) ** -19


def test_pdf_is_derivative_of_cdf():
    x = mpmath.mpf("0.82757")
    h = mpmath.mpf(10) ** -20
    fd = (oracle.oracle_cdf(x + h) - oracle.oracle_cdf(x - h)) / (2 * h)
    assert abs(fd / oracle.oracle_pdf(x) - 1) < mpmath.mpf(10) ** -30


def test_pdf_branches_agree_at_crossover():
    ctx = mpmath.mp.clone()
    ctx.dps = 120
    x = ctx.mpf(1)
    theta = oracle._theta_sums(ctx, x, 100)[1]
    alt = oracle._alt_sums(ctx, x, 100)[1]
    assert abs(theta - alt) < ctx.mpf(10) ** -95


def test_rejects_low_precision():
    with pytest.raises(ValueError):
        oracle.oracle_cdf(0.5, digits=20)
