import math

import numpy as np
import pytest

from kslimit.baseline import MAX_TERMS, baseline_isf, baseline_isf_cost, baseline_sf
from kslimit.dist import kolmogorov_sf
from kslimit.errors import DomainError
from kslimit.quantile import kolmogi_sf


def test_above_one_at_small_x():
    r = baseline_sf(0.01)
    assert r.value == 1 + 2.0 ** -50
    assert r.terms_or_iters > 400 and not r.hit_cap


def test_cap():
    r = baseline_sf(0.005)
    assert r.hit_cap and r.terms_or_iters == MAX_TERMS


def test_agrees_at_one():
    assert abs(baseline_sf(1.0).value - kolmogorov_sf(1.0)) <= 1e-10


def test_agreement_region():
    for x in np.linspace(0.8, 3.0, 441):
        x = float(x)
        ref = kolmogorov_sf(x)
        assert abs(baseline_sf(x).value - ref) <= 1e-10 * ref


def test_witnesses():
    xs = [k / 10000 for k in range(1, 2000)]
    vals = [baseline_sf(x).value for x in xs]
    assert any(a < b for a, b in zip(vals, vals[1:]))
    assert any(v > 1 for x, v in zip(xs, vals) if x < 0.05)


def test_isf_small_p():
    r = baseline_isf(1e-4)
    assert not r.hit_cap and r.terms_or_iters <= 6
    assert abs(r.value - kolmogi_sf(1e-4)) <= 1e-10 * r.value


@pytest.mark.parametrize("p", [0.99, 0.995, 0.999, 0.9999])
def test_isf_floor(p):
    assert baseline_isf(p).value >= 0.32


def test_isf_slow_near_one():
    # the one-term slope is badly wrong here, so Newton crawls
    for p in (0.999, 0.9999):
        r = baseline_isf(p)
        assert r.terms_or_iters > baseline_isf(0.5).terms_or_iters * 5


def test_isf_cost():
    r = baseline_isf(0.9999)
    assert r.terms_or_iters > 50
    assert 1000 <= baseline_isf_cost(0.9999) < 10000


@pytest.mark.parametrize("p", [0.0, 1.0, -0.5, 2.0])
def test_isf_domain(p):
    with pytest.raises(DomainError):
        baseline_isf(p)
