import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import stieltjes.measures as ms


def test_atom_measure_basics():
    mu = ms.atom_measure(2.0, 0.5)
    assert mu.domain == ms.HALF_LINE
    assert mu.is_positive and not mu.is_trivial
    assert mu.support_bounds() == (2.0, 2.0)


def test_complex_weights_flip_positivity():
    mu = ms.Measure(ms.LINE, (ms.Atom(0.0, complex(1.0, 0.5)),), ())
    assert not mu.is_positive


def test_piece_families_evaluate():
    w = ms.window(1.0, 2.0, 3.0)
    assert w(1.5) == 3.0 and w(2.5) == 0.0
    pt = ms.power_tail(anchor=1.0, c=2.0, p=0.5, decay=2.0)
    x = 1.5
    assert pt(1.0 + x) == pytest.approx(2.0 * x ** 0.5 * (1 + x) ** -2.0)
    et = ms.exp_tail(anchor=0.0, c=1.0, p=1.0, rate=2.0)
    assert et(3.0) == pytest.approx(3.0 * math.exp(-6.0))
    tab = ms.tabulated([0.0, 1.0, 2.0], [0.0, 2.0, 0.0])
    assert tab(0.5) == pytest.approx(1.0)
    assert tab(2.5) == 0.0


def test_mirrored_tail():
    pt = ms.power_tail(anchor=-1.0, c=1.0, p=0.0, decay=1.5, direction=-1)
    assert pt(-3.0) == pytest.approx((1.0 + 2.0) ** -1.5)
    assert pt(0.0) == 0.0


def test_endpoint_exponent_validation():
    with pytest.raises(ValueError):
        ms.power_tail(anchor=0.0, c=1.0, p=-1.0)
    with pytest.raises(ValueError):
        ms.power_window(0.0, 1.0, c=1.0, p=-1.2)


def test_norm_beta_atom_closed_form():
    mu = ms.atom_measure(3.0, 2.0)
    assert ms.norm_beta(mu, 0.7) == pytest.approx(2.0 * 4.0 ** -0.7)


def test_norm_beta_uniform_closed_form():
    # (1/a) * indicator of [0, a] at index 1 integrates to log(1+a)/a
    for a in (1.0, 5.0):
        mu = ms.density_measure(ms.window(0.0, a, 1.0 / a))
        assert ms.norm_beta(mu, 1.0) == pytest.approx(math.log(1 + a) / a,
                                                      rel=1e-10)


def test_norm_beta_log_finiteness():
    fast = ms.density_measure(ms.exp_tail(anchor=0.0, c=1.0, rate=1.0))
    assert math.isfinite(ms.norm_beta_log(fast, 1.0))
    slow = ms.density_measure(
        ms.power_tail(anchor=0.0, c=1.0, p=0.0, decay=1.0, log_power=-2.0))
    assert math.isinf(ms.norm_beta_log(slow, 1.0))


def test_transform_measure_operations():
    mu = ms.Measure(ms.LINE, (ms.Atom(1.0, 1.0),),
                    (ms.window(0.0, 2.0, 1.0),))
    shifted = ms.transform_measure(mu, ("shift", 3.0))
    assert shifted.atoms[0].location == 4.0
    reflected = ms.transform_measure(mu, ("reflect",))
    assert reflected.atoms[0].location == -1.0
    assert reflected.support_bounds() == (-2.0, 0.0)
    cut = ms.transform_measure(mu, ("restrict", 0.5, 1.5))
    assert cut.support_bounds() == (0.5, 1.5)
    scaled = ms.transform_measure(mu, ("scale", 2.0))
    assert scaled.atoms[0].weight == 2.0


def test_discrete_product_shares_only_common_locations():
    mu1 = ms.Measure(ms.HALF_LINE,
                     (ms.Atom(1.0, 2.0), ms.Atom(2.0, 1.0)), ())
    mu2 = ms.Measure(ms.HALF_LINE, (ms.Atom(1.0, 3.0),), ())
    prod = ms.discrete_product(mu1, mu2)
    assert len(prod.atoms) == 1
    assert prod.atoms[0].location == 1.0
    assert prod.atoms[0].weight == 6.0


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 10.0), st.floats(0.05, 3.0), st.floats(0.05, 3.0))
def test_norm_beta_monotone_in_index(loc, b1, b2):
    # on the half line the weight (1+t)^-b decreases in b pointwise
    lo, hi = sorted((b1, b2))
    mu = ms.Measure(ms.HALF_LINE, (ms.Atom(loc, 1.0),),
                    (ms.window(0.0, 1.0 + loc, 0.5),))
    assert ms.norm_beta(mu, lo) >= ms.norm_beta(mu, hi) - 1e-12


@settings(max_examples=25, deadline=None)
@given(st.floats(-5.0, 5.0), st.floats(0.1, 4.0))
def test_atom_norm_matches_weight_formula(loc, beta):
    mu = ms.atom_measure(loc, 1.0, domain=ms.LINE)
    assert ms.norm_beta(mu, beta) == pytest.approx(
        (1.0 + abs(loc)) ** -beta)
