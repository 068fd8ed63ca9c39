import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import beta as beta_fn

import stieltjes.measures as ms
import stieltjes.quadrature as qd


def test_smooth_integral():
    val = qd.integrate(np.sin, (0.0, math.pi))
    assert val == pytest.approx(2.0, abs=1e-12)


def test_semi_infinite_integral():
    val = qd.integrate(lambda t: np.exp(-t) * t, (0.0, math.inf))
    assert val == pytest.approx(1.0, abs=1e-11)


def test_endpoint_singularities():
    val = qd.integrate(lambda t: t ** -0.5 * (1 - t) ** -0.25, (0.0, 1.0),
                       None, [(0.0, -0.5), (1.0, -0.25)])
    assert val == pytest.approx(beta_fn(0.5, 0.75), abs=1e-10)


def test_interior_singular_point():
    # |t - 1|^{-1/2} over (0, 2) = 4
    val = qd.integrate(lambda t: abs(t - 1.0) ** -0.5, (0.0, 2.0),
                       None, [(1.0, -0.5)])
    assert val == pytest.approx(4.0, abs=1e-9)


def test_principal_value_log_kernel():
    # p.v. of 1/(t - c) over an o-center interval is log|(b-c)/(c-a)|
    val = qd.integrate_pv(lambda t: 1.0 / (t - 1.0), 1.0, (0.0, 3.0))
    assert val == pytest.approx(math.log(2.0), abs=1e-10)


def test_panel_rule_jacobi_moments():
    x, w = qd.panel_rule(0.0, 1.0, -0.5, -0.5, 20)
    kern = x ** -0.5 * (1 - x) ** -0.5
    assert np.sum(w * kern) == pytest.approx(math.pi, abs=1e-12)
    assert np.sum(w * kern * x) == pytest.approx(math.pi / 2, abs=1e-12)


def test_panel_rule_degenerate_width_is_finite():
    x, w = qd.panel_rule(1.0, 1.0 + 1e-300, -0.5, 0.0, 8)
    assert np.all(np.isfinite(w))


def test_measure_rule_total_mass():
    mu = ms.Measure(ms.HALF_LINE, (ms.Atom(0.5, 2.0),),
                    (ms.window(0.0, 1.0, 3.0),))
    xs, ws = qd.measure_rule(mu, lo=0.0, hi=1.0, include_lo=True,
                             include_hi=True)
    assert float(np.sum(ws)) == pytest.approx(5.0, rel=1e-10)


def test_chebyshev_grid_bounds():
    g = qd.chebyshev_grid(-1.0, 3.0, 17)
    assert g[0] >= -1.0 and g[-1] <= 3.0
    assert np.all(np.diff(g) > 0)


def test_classify_partials():
    diverges, p_hat = qd.classify_partials([math.log(t) for t in
                                            (1e2, 1e4, 1e6, 1e8)])
    assert diverges
    convergent = [2.0 - t ** -0.5 for t in (1e2, 1e4, 1e6, 1e8)]
    diverges, p_hat = qd.classify_partials(convergent)
    assert not diverges


def test_convergence_error_raised():
    # noisy integrand that cannot meet the requested tolerance
    rng = np.random.default_rng(0)
    cfg = qd.QuadratureConfig(rel_tol=1e-14, abs_tol=1e-16,
                              max_subdivisions=5)
    with pytest.raises(qd.ConvergenceError):
        qd.integrate(lambda t: 1.0 + 1e-3 * rng.standard_normal(), (0, 1),
                     cfg)


@settings(max_examples=30, deadline=None)
@given(st.floats(-0.9, 2.0), st.floats(-0.9, 2.0))
def test_beta_integral_identity(p, q):
    val = qd.integrate(lambda t: t ** p * (1.0 - t) ** q, (0.0, 1.0),
                       None, [(0.0, p), (1.0, q)])
    assert val == pytest.approx(beta_fn(p + 1.0, q + 1.0), abs=1e-9)


@settings(max_examples=20, deadline=None)
@given(st.floats(-2.0, 2.0), st.floats(0.5, 3.0))
def test_pv_of_odd_is_zero(center, halfwidth):
    val = qd.integrate_pv(lambda t: 1.0 / (t - center), center,
                          (center - halfwidth, center + halfwidth))
    assert abs(val) <= 1e-10
