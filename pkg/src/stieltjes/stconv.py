"""Multiplicative convolution of measures under transform products.

If ``f_j`` is the order-``alpha_j`` transform of ``mu_j`` on the half line,
the product ``f_1 f_2`` is the order-``alpha_1 + alpha_2`` transform of a
measure whose absolutely continuous density is an iterated double integral
against ``mu_1`` and ``mu_2`` and whose atoms are the shared atoms of the
inputs with multiplied weights.  This module computes that density, returns
it as a tabulated measure, verifies the product identity pointwise, and
checks the family of weighted-norm inequalities with their sharp constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import beta as beta_fn
from scipy.special import gammaln

from . import measures as ms
from . import quadrature as qd
from . import transforms as tf
from .report import VerificationReport


def _branch(mu_in, mu_out, exp_in, exp_out, pow_cross, tau, lo, cfg):
    """One ordering of the double integral behind the product density:

    ``int_{t > tau} (t-tau)^exp_out [ int_{lo <= s < tau}
    (tau-s)^exp_in (t-s)^pow_cross dmu_in(s) ] dmu_out(t)``.
    """
    xs_in, ws_in = qd.measure_rule(
        mu_in, lo=lo, hi=tau, exp_hi=exp_in, include_lo=True,
        include_hi=False, grade_hi=True,
        tail_decay_hint=-(exp_in + pow_cross), cfg=cfg)
    if xs_in.size == 0:
        return 0.0
    inner_w = ws_in * (tau - xs_in) ** exp_in

    xs_out, ws_out = qd.measure_rule(
        mu_out, lo=tau, hi=math.inf, exp_lo=exp_out, include_lo=False,
        grade_lo=True, tail_decay_hint=-(exp_out + pow_cross), cfg=cfg)
    if xs_out.size == 0:
        return 0.0
    cross = (xs_out[:, None] - xs_in[None, :]) ** pow_cross
    inner_vals = cross @ inner_w
    return np.sum(ws_out * (xs_out - tau) ** exp_out * inner_vals)


def product_density_at(mu1, alpha1, mu2, alpha2, tau, lo=None, cfg=None):
    """Density of the convolution at ``tau`` (not at an atom of the result)."""
    if lo is None:
        lo = 0.0 if mu1.domain == ms.HALF_LINE else -math.inf
    pow_cross = 1.0 - alpha1 - alpha2
    t1 = _branch(mu1, mu2, alpha2 - 1.0, alpha1 - 1.0, pow_cross, tau, lo, cfg)
    t2 = _branch(mu2, mu1, alpha1 - 1.0, alpha2 - 1.0, pow_cross, tau, lo, cfg)
    return (t1 + t2) / beta_fn(alpha1, alpha2)


@dataclass
class ConvolutionResult:
    """Convolution measure plus an exact density evaluator.

    ``measure`` carries atoms and tabulated density pieces suitable for
    serialization; ``density`` re-evaluates the defining double integral at
    arbitrary points (used by the verifiers, which never trust the
    tabulation).  ``alpha`` is the order of the resulting transform.
    """

    measure: ms.Measure
    alpha: float
    density: object
    grid: np.ndarray
    details: dict = field(default_factory=dict)


def default_grid(mu1, mu2, points_per_interval=64):
    """Chebyshev points between consecutive events of the two inputs."""
    events = sorted(set(mu1.events()) | set(mu2.events()))
    if not events:
        return np.array([])
    segs = []
    for lo, hi in zip(events, events[1:]):
        segs.append(qd.chebyshev_grid(lo, hi, points_per_interval))
    return np.concatenate(segs) if segs else np.array([])


def convolve(mu1, alpha1, mu2, alpha2, grid=None, cfg=None,
             tail_points=48):
    """Convolution measure of two half-line (or line) inputs.

    The density is tabulated on ``grid`` (default: Chebyshev points between
    events) plus a logarithmic tail grid when an input extends to infinity;
    the ``density`` attribute of the result evaluates it exactly anywhere.
    """
    if mu1.domain != mu2.domain:
        raise ValueError("inputs must live on the same domain")
    if alpha1 <= 0 or alpha2 <= 0:
        raise ValueError("orders must be positive")
    lo = 0.0 if mu1.domain == ms.HALF_LINE else -math.inf

    def density(tau):
        return product_density_at(mu1, alpha1, mu2, alpha2, float(tau),
                                  lo=lo, cfg=cfg)

    if grid is None:
        grid = default_grid(mu1, mu2)
    grid = np.asarray(grid, dtype=float)
    pieces = []
    if grid.size:
        vals = np.array([density(t) for t in grid])
        if np.iscomplexobj(vals) and not vals.imag.any():
            vals = vals.real
        pieces.append(ms.tabulated(grid, tuple(vals)))
    # logarithmic tail tabulation when the density extends past the events
    hi_event = max((e for e in (mu1.events() + mu2.events())), default=None)
    unbounded = any(math.isinf(p.support[1]) for p in mu1.pieces + mu2.pieces)
    if unbounded and hi_event is not None:
        t0 = hi_event + 1.0
        tail_grid = np.geomspace(t0, 1e4 * t0, tail_points)
        vals = np.array([density(t) for t in tail_grid])
        if np.iscomplexobj(vals) and not vals.imag.any():
            vals = vals.real
        pieces.append(ms.tabulated(tail_grid, tuple(vals)))
    atoms = ms.discrete_product(mu1, mu2).atoms
    out = ms.Measure(mu1.domain, atoms, tuple(pieces))
    return ConvolutionResult(measure=out, alpha=alpha1 + alpha2,
                             density=density, grid=grid,
                             details={"tail_truncated": bool(unbounded)})


def transform_of_convolution(mu1, alpha1, mu2, alpha2, z, cfg=None):
    """Order ``alpha1+alpha2`` transform of the convolution, via its exact
    density (adaptive in the outer variable, fixed rules inside)."""
    lo = 0.0 if mu1.domain == ms.HALF_LINE else -math.inf
    alpha = alpha1 + alpha2
    z = complex(z)

    def density(tau):
        return product_density_at(mu1, alpha1, mu2, alpha2, tau, lo=lo, cfg=cfg)

    events = sorted(set(mu1.events()) | set(mu2.events()))
    if mu1.domain == ms.HALF_LINE:
        events = sorted({0.0, *events})
    total = 0.0 + 0.0j
    for atom in ms.discrete_product(mu1, mu2).atoms:
        total += atom.weight * (z + atom.location) ** (-alpha)
    atom_locs = ({a.location for a in mu1.atoms}
                 | {a.location for a in mu2.atoms})
    # density may carry an integrable power singularity at atom locations
    sing_exp = min(alpha1, alpha2) - 1.0
    sing = [(e, sing_exp) for e in events if e in atom_locs and sing_exp < 0]

    def g(tau):
        return density(tau) * (z + tau) ** (-alpha)

    lo_ev, hi_ev = (events[0], events[-1]) if events else (0.0, 0.0)
    for a, b in zip(events, events[1:]):
        total += qd.integrate(g, (a, b), cfg,
                              [(x, e) for x, e in sing if a <= x <= b])
    unbounded_hi = any(math.isinf(p.support[1]) for p in mu1.pieces + mu2.pieces)
    if unbounded_hi:
        total += qd.integrate(g, (hi_ev, math.inf), cfg)
    unbounded_lo = any(math.isinf(p.support[0]) for p in mu1.pieces + mu2.pieces)
    if unbounded_lo:
        total += qd.integrate(g, (-math.inf, lo_ev), cfg)
    return complex(total)


def verify_product(mu1, alpha1, mu2, alpha2, z_points, tolerance=1e-6,
                   cfg=None):
    """Residual check ``S[mu1](z) S[mu2](z) = S[convolution](z)``."""
    report = VerificationReport(name="transform-product identity",
                                tolerance=tolerance)
    for z in z_points:
        z = complex(z)
        lhs = (tf.stieltjes_eval(mu1, alpha1, z, cfg)
               * tf.stieltjes_eval(mu2, alpha2, z, cfg))
        rhs = transform_of_convolution(mu1, alpha1, mu2, alpha2, z, cfg)
        resid = abs(lhs - rhs) / (abs(lhs) + 1e-12)
        report.add_row(resid, z=z, lhs=lhs, rhs=rhs)
    return report


def affine_product_correction(const1, mu1, alpha1, const2, mu2, alpha2,
                              cfg=None):
    """Product of two affine transforms ``const_j + S[mu_j]``.

    Returns ``(constant, density, atoms)`` where the product equals
    ``constant + S_{alpha1+alpha2}[density dt + atoms]``; the density is the
    plain convolution density plus cross terms lifting each measure by the
    other order.
    """
    b12 = beta_fn(alpha1, alpha2)
    lo = 0.0 if mu1.domain == ms.HALF_LINE else -math.inf

    def lift(mu, expo, tau):
        # int_{[0, tau)} (tau - t)^(expo - 1) dmu(t)
        x, w = qd.measure_rule(mu, lo=lo, hi=tau, exp_hi=expo - 1.0,
                               include_lo=True, include_hi=False,
                               grade_hi=True, cfg=cfg)
        if x.size == 0:
            return 0.0
        return np.sum(w * (tau - x) ** (expo - 1.0))

    def density(tau):
        tau = float(tau)
        base = product_density_at(mu1, alpha1, mu2, alpha2, tau, lo=lo, cfg=cfg)
        cross = (const1 * lift(mu2, alpha1, tau)
                 + const2 * lift(mu1, alpha2, tau)) / b12
        return base + cross

    atoms = ms.discrete_product(mu1, mu2).atoms
    return const1 * const2, density, atoms


# --------------------------------------------------------------------------
# weighted-norm inequalities
# --------------------------------------------------------------------------

@dataclass
class InequalityConstants:
    """Sharp interior constants for the weighted-norm product inequality."""

    a1: float
    a2: float

    @property
    def best(self):
        return min(self.a1, self.a2)


def inequality_constants(alpha1, alpha2, beta1, beta2):
    """Interior constants for ``0 < beta_j < alpha_j``; both are >= 1."""
    if not (0 < beta1 < alpha1 and 0 < beta2 < alpha2):
        raise ValueError("need 0 < beta_j < alpha_j")
    g1, g2 = alpha1 - beta1, alpha2 - beta2

    def entropy(x, y):
        return x * math.log(x) + y * math.log(y) - (x + y) * math.log(x + y)

    def log_beta(x, y):
        return gammaln(x) + gammaln(y) - gammaln(x + y)

    la = log_beta(alpha1, alpha2)
    a1 = math.exp(entropy(beta1, beta2) + log_beta(g1, g2) - la)
    a2 = math.exp(entropy(g1, g2) + log_beta(beta1, beta2) - la)
    return InequalityConstants(a1=a1, a2=a2)


def convolution_norm(mu1, alpha1, mu2, alpha2, beta, cfg=None):
    """Weighted norm of the convolution measure at index ``beta``.

    Exact for positive inputs.  Purely atomic inputs use closed panel rules
    per atom pair; otherwise the density is integrated adaptively.
    """
    if not (mu1.is_positive and mu2.is_positive):
        raise ValueError("norm computation assumes positive inputs")
    b12 = beta_fn(alpha1, alpha2)
    weight = lambda t: (1.0 + np.abs(t)) ** (-beta)
    total = sum(a.weight.real * b.weight.real * weight(a.location)
                for a in mu1.atoms for b in mu2.atoms
                if a.location == b.location)
    if not mu1.pieces and not mu2.pieces:
        n = 80
        for a in mu1.atoms:
            for b in mu2.atoms:
                if a.location == b.location:
                    continue
                s, t = sorted((a.location, b.location))
                # exponent pairing depends on which factor sits on the left
                e_lo = alpha2 - 1.0 if a.location < b.location else alpha1 - 1.0
                e_hi = alpha1 - 1.0 if a.location < b.location else alpha2 - 1.0
                x, w = qd.panel_rule(s, t, e_lo, e_hi, n)
                kern = (x - s) ** e_lo * (t - x) ** e_hi
                val = np.sum(w * kern * weight(x))
                total += (a.weight.real * b.weight.real
                          * (t - s) ** (1.0 - alpha1 - alpha2) * val / b12)
        return float(total)
    lo = 0.0 if mu1.domain == ms.HALF_LINE else -math.inf

    def g(tau):
        return (product_density_at(mu1, alpha1, mu2, alpha2, tau, lo=lo, cfg=cfg)
                * weight(tau))

    events = sorted({0.0, *mu1.events(), *mu2.events()})
    for a, b in zip(events, events[1:]):
        total += qd.integrate(g, (a, b), cfg)
    if any(math.isinf(p.support[1]) for p in mu1.pieces + mu2.pieces):
        total += qd.integrate(g, (events[-1], math.inf), cfg)
    return float(np.real(total))


def verify_inequality_suite(mu1, alpha1, mu2, alpha2, beta1=None, beta2=None,
                            tolerance=1e-9, cfg=None):
    """Slack check for the weighted-norm inequalities on positive inputs.

    Cases: the top-index equality, the interior two-sided bound with its
    sharp constant, the boundary constant at ``beta2 = alpha2``, the
    log-norm upper bound, and the log-norm lower bound.  Slacks are recorded
    with the convention that negative slack beyond tolerance fails.
    """
    if not (mu1.is_positive and mu2.is_positive):
        raise ValueError("inequality suite assumes positive inputs")
    report = VerificationReport(name="weighted-norm inequalities",
                                tolerance=tolerance)
    n1a = ms.norm_beta(mu1, alpha1, cfg)
    n2a = ms.norm_beta(mu2, alpha2, cfg)
    top = convolution_norm(mu1, alpha1, mu2, alpha2, alpha1 + alpha2, cfg)
    # positivity makes the top-index inequality an equality
    report.add_row(abs(top - n1a * n2a) / max(n1a * n2a, 1e-300),
                   case="top-index equality", lhs=top, rhs=n1a * n2a)

    if beta1 is None:
        beta1 = 0.5 * alpha1
    if beta2 is None:
        beta2 = 0.5 * alpha2
    consts = inequality_constants(alpha1, alpha2, beta1, beta2)
    nb = convolution_norm(mu1, alpha1, mu2, alpha2, beta1 + beta2, cfg)
    bound = consts.best * ms.norm_beta(mu1, beta1, cfg) * ms.norm_beta(mu2, beta2, cfg)
    report.add_row(max(0.0, (nb - bound) / max(bound, 1e-300)),
                   case="interior bound", lhs=nb, rhs=bound,
                   constant=consts.best)

    # boundary case beta2 = alpha2
    cb = beta_fn(beta1, alpha2) / beta_fn(alpha1, alpha2)
    nbb = convolution_norm(mu1, alpha1, mu2, alpha2, beta1 + alpha2, cfg)
    boundb = cb * ms.norm_beta(mu1, beta1, cfg) * n2a
    report.add_row(max(0.0, (nbb - boundb) / max(boundb, 1e-300)),
                   case="boundary bound", lhs=nbb, rhs=boundb, constant=cb)

    n1log = ms.norm_beta_log(mu1, alpha1, cfg)
    if math.isfinite(n1log):
        c_lo, c_hi = tf.log_envelope_constants(alpha1, cfg)
        na = convolution_norm(mu1, alpha1, mu2, alpha2, alpha1, cfg)
        # upper bound needs the second factor integrable at index 0
        n20 = ms.norm_beta(mu2, 0.0, cfg)
        if math.isfinite(n20):
            cu = (1.0 / alpha2 + c_hi) / beta_fn(alpha1, alpha2)
            report.add_row(max(0.0, (na - cu * n1log * n20)
                               / max(cu * n1log * n20, 1e-300)),
                           case="log upper bound", lhs=na,
                           rhs=cu * n1log * n20)
        # chain: B(a1,a2) ||mu||_{a1} >= 2^-(a1+a2) ||mu2||_{a2} int F_{a1} dmu1
        #        >= 2^-(a1+a2) c_lo ||mu1||_{a1,log} ||mu2||_{a2}
        cl = 2.0 ** (alpha1 + alpha2) * beta_fn(alpha1, alpha2) / c_lo
        report.add_row(max(0.0, (n1log * n2a - cl * na)
                           / max(cl * na, 1e-300)),
                       case="log lower bound", lhs=n1log * n2a,
                       rhs=cl * na)
    return report
