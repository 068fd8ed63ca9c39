"""Hilbert transform identities behind transform products of densities.

For densities ``g_1, g_2`` in suitable weighted L^p classes the pointwise
product of their order-1 transforms is again an order-1 transform, with
density ``g_2 H[g_1] + g_1 H[g_2]``; off the half line this is a special
case of the multiplication identity for ``H`` (the Tricomi identity).  The
boundary behavior of the transform near the cut is governed by the
Sokhotski limits ``+-i f(t) + H[f](t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import measures as ms
from . import quadrature as qd


@dataclass(frozen=True)
class WeightedFunction:
    """Density on the line with its integrability class.

    ``p_class`` is the Lebesgue exponent and ``weight_beta`` the power
    weight index used by the product identity's hypothesis; ``breakpoints``
    are locations (jumps, kinks, edge singularities) the quadrature should
    split at.  Evaluates to 0 outside ``support``.
    """

    evaluator: object
    support: tuple = (-math.inf, math.inf)
    p_class: float = 2.0
    weight_beta: float = 0.0
    breakpoints: tuple = ()
    singular_points: tuple = ()  # ((location, exponent), ...)
    piece: object = None  # originating DensityPiece, enables closed forms

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        a, b = self.support
        out = np.zeros(t.shape, dtype=float)
        inside = (t > a) & (t < b)
        if inside.any():
            vals = self.evaluator(t[inside])
            out[inside] = vals
        return out if out.shape else float(out)

    def scalar(self, t):
        a, b = self.support
        if not a < t < b:
            return 0.0
        return float(self.evaluator(np.asarray(t)))


def from_piece(piece, p_class=2.0, weight_beta=0.0):
    """Wrap a density piece as a WeightedFunction."""
    sing = []
    a, b = piece.support
    if piece.left_exponent and math.isfinite(a):
        sing.append((a, piece.left_exponent))
    if piece.right_exponent and math.isfinite(b):
        sing.append((b, piece.right_exponent))
    return WeightedFunction(
        evaluator=lambda t: np.real(piece(t)),
        support=piece.support,
        p_class=p_class,
        weight_beta=weight_beta,
        breakpoints=tuple(e for e in piece.support if math.isfinite(e)),
        singular_points=tuple(sing),
        piece=piece,
    )


def _hilbert_poly_window(params, tau):
    """Exact PV transform of ``c (t-a)^p (b-t)^q`` on (a, b) for
    nonnegative integer exponents.

    Expanding the density into a polynomial ``P(t) = sum c_k t^k`` gives
    ``pi H(tau) = sum_k c_k Q_k(tau) + P(tau) log|(b-tau)/(a-tau)|`` with
    ``Q_k(tau) = sum_{m<k} tau^m (b^{k-m} - a^{k-m})/(k-m)``.
    """
    from numpy.polynomial import polynomial as P

    a, b = params["a"], params["b"]
    p, q = params["p"], params["q"]
    coef = params["c"] * P.polymul(P.polypow([-a, 1.0], int(round(p))),
                                   P.polypow([b, -1.0], int(round(q))))
    poly_part = 0.0
    for k, ck in enumerate(coef):
        if k == 0 or ck == 0.0:
            continue
        ms_ = np.arange(k)
        poly_part += ck * np.sum(tau ** ms_ * (b ** (k - ms_) - a ** (k - ms_))
                                 / (k - ms_))
    ptau = P.polyval(tau, coef)
    if ptau == 0.0:
        log_part = 0.0
    elif tau == a or tau == b:
        return math.copysign(math.inf, ptau * (1.0 if tau == b else -1.0))
    else:
        log_part = ptau * math.log(abs((b - tau) / (a - tau)))
    return (poly_part + log_part) / math.pi


def _hilbert_tabulated(params, tau):
    """Exact PV transform of the linear interpolant through (grid, values).

    Per cell ``[x_i, x_{i+1}]`` the transform of ``m t + c`` is
    ``m dx + (m tau + c) log|(x_{i+1}-tau)/(x_i-tau)|``; regrouping the log
    terms per node makes the sum finite at interior nodes of a continuous
    interpolant (the node coefficient is the jump, which vanishes).
    """
    x = np.asarray(params["grid"], dtype=float)
    y = np.asarray(params["values"], dtype=float)
    dx = np.diff(x)
    m = np.diff(y) / dx
    c = y[:-1] - m * x[:-1]
    vline = m * tau + c
    node_coef = np.empty(len(x))
    node_coef[0] = -vline[0]
    node_coef[-1] = vline[-1]
    node_coef[1:-1] = vline[:-1] - vline[1:]
    d = np.abs(x - tau)
    scale = 1e-12 * (1.0 + np.max(np.abs(y)) + abs(tau) * np.max(np.abs(m)))
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.log(d)
        terms = np.where(np.abs(node_coef) <= scale, 0.0, node_coef * logs)
    return (np.sum(m * dx) + np.sum(terms)) / math.pi


def _hilbert_closed_form(piece, tau):
    """Closed-form transform for catalog pieces, or None if unavailable."""
    if piece is None:
        return None
    fam = getattr(piece, "family", None)
    if fam == "power_window":
        p, q = piece.params["p"], piece.params["q"]
        if (float(p).is_integer() and p >= 0
                and float(q).is_integer() and q >= 0):
            return _hilbert_poly_window(piece.params, tau)
        return None
    if fam == "tabulated":
        return _hilbert_tabulated(piece.params, tau)
    return None


def product_class_ok(f1, f2):
    """Hypothesis of the product identity: ``1/p1 + 1/p2 <= 1`` with
    ``p_j in (1, inf)`` and weight indices in ``[0, 1)``."""
    for f in (f1, f2):
        if not (1.0 < f.p_class < math.inf and 0.0 <= f.weight_beta < 1.0):
            return False
    return 1.0 / f1.p_class + 1.0 / f2.p_class <= 1.0 + 1e-12


def hilbert_pv(f, tau, cfg=None):
    """Hilbert transform ``(1/pi) p.v. integral f(t)/(t - tau) dt``.

    ``f`` is a WeightedFunction (or a bare callable, taken as supported on
    the whole line).  The principal value uses symmetric pairing around the
    pole; outside the pairing window the integral is split at breakpoints.
    """
    if not isinstance(f, WeightedFunction):
        f = WeightedFunction(evaluator=f)
    tau = float(tau)
    closed = _hilbert_closed_form(f.piece, tau)
    if closed is not None:
        return closed
    a, b = f.support
    fn = f.scalar

    def kern(t):
        if t == tau:
            return 0.0
        return fn(t) / (t - tau)

    sing = list(f.singular_points)

    def integrate_split(lo, hi):
        edges = [lo] + [x for x in f.breakpoints if lo < x < hi] + [hi]
        tot = 0.0
        for u, v in zip(edges, edges[1:]):
            tot += qd.integrate(kern, (u, v), cfg,
                                [(x, e) for x, e in sing if u <= x <= v])
        return tot

    if not a < tau < b:
        return integrate_split(a, b) / math.pi
    # shrink the pairing window to avoid breakpoints away from the pole
    h0 = min(tau - a, b - tau)
    for x in f.breakpoints:
        if abs(x - tau) > 1e-14:
            h0 = min(h0, abs(x - tau))
    if not math.isfinite(h0):
        h0 = 1.0
    total = qd.integrate_pv(kern, tau, (tau - h0, tau + h0), cfg)
    if tau - h0 > a:
        total += integrate_split(a, tau - h0)
    if tau + h0 < b:
        total += integrate_split(tau + h0, b)
    return total / math.pi


def stieltjes_product_density(g1, g2, grid, cfg=None):
    """Density ``g = g2 H[g1] + g1 H[g2]`` of the product of two order-1
    transforms, tabulated on ``grid``; also returns the exact evaluator.

    Raises ValueError when the integrability hypothesis fails.
    """
    if isinstance(g1, WeightedFunction) and isinstance(g2, WeightedFunction):
        if not product_class_ok(g1, g2):
            raise ValueError("densities outside the admissible product class")

    def g(tau):
        w2 = g2.scalar(tau)
        w1 = g1.scalar(tau)
        out = 0.0
        if w2 != 0.0:
            out += w2 * hilbert_pv(g1, tau, cfg)
        if w1 != 0.0:
            out += w1 * hilbert_pv(g2, tau, cfg)
        return out

    grid = np.asarray(grid, dtype=float)
    vals = np.array([g(t) for t in grid])
    piece = ms.tabulated(grid, tuple(vals))
    return piece, g


def parseval_residual(f1, f2, cfg=None):
    """Absolute value of ``int f1 H[f2] + int H[f1] f2`` (zero in theory)."""
    lo = min(f1.support[0], f2.support[0])
    hi = max(f1.support[1], f2.support[1])
    pts = sorted(set(f1.breakpoints) | set(f2.breakpoints))

    def integrand(t):
        w1 = f1.scalar(t)
        w2 = f2.scalar(t)
        out = 0.0
        if w1 != 0.0:
            out += w1 * hilbert_pv(f2, t, cfg)
        if w2 != 0.0:
            out += w2 * hilbert_pv(f1, t, cfg)
        return out

    total = 0.0
    edges = [lo] + [x for x in pts if lo < x < hi] + [hi]
    for a, b in zip(edges, edges[1:]):
        total += qd.integrate(integrand, (a, b), cfg)
    return abs(total)


def tricomi_residual(f1, f2, t_points, cfg=None):
    """Pointwise residual of ``H[f1] H[f2] - f1 f2 = H[f1 H[f2] + f2 H[f1]]``.

    The inner transforms are evaluated by adaptive principal-value
    quadrature and the outer transform by a second PV pass over the inner
    combination.  Returns the list of residuals at ``t_points``.
    """
    pts = sorted(set(f1.breakpoints) | set(f2.breakpoints))
    lo = min(f1.support[0], f2.support[0])
    hi = max(f1.support[1], f2.support[1])

    def h(t):
        w1 = f1.scalar(t)
        w2 = f2.scalar(t)
        out = 0.0
        if w1 != 0.0:
            out += w1 * hilbert_pv(f2, t, cfg)
        if w2 != 0.0:
            out += w2 * hilbert_pv(f1, t, cfg)
        return out

    h_fn = WeightedFunction(evaluator=np.vectorize(h), support=(lo, hi),
                            breakpoints=tuple(pts))
    out = []
    for t0 in t_points:
        t0 = float(t0)
        lhs = (hilbert_pv(f1, t0, cfg) * hilbert_pv(f2, t0, cfg)
               - f1.scalar(t0) * f2.scalar(t0))
        rhs = hilbert_pv(h_fn, t0, cfg)
        out.append(abs(lhs - rhs))
    return out


def plemelj_boundary(f, t, eps_schedule=(1e-2, 1e-3, 1e-4, 1e-5), cfg=None):
    """Boundary limits of the order-1 transform on the negative cut.

    Returns ``(upper, lower, diagnostics)`` where ``upper`` approximates the
    limit of ``(1/pi) int f(s)/(s - t - i eps) ds`` as ``eps -> 0+``
    (expected ``i f(t) + H[f](t)``) and ``lower`` its conjugate-side limit
    ``-i f(t) + H[f](t)``.  Limits are Richardson-extrapolated in ``eps``
    using the basis ``{1, eps, eps^2 log eps, eps^2}``.
    """
    if not isinstance(f, WeightedFunction):
        f = WeightedFunction(evaluator=f, support=(0.0, math.inf))
    t = float(t)
    a, b = f.support
    vals = []
    for eps in eps_schedule:
        def kern(s):
            return f.scalar(s) / (s - t - 1j * eps)

        # collars keep the near-pole Lorentzian peak inside short panels
        # sized to the regularization scale
        pts = sorted({t, t - 1.0, t + 1.0, t - 50 * eps, t + 50 * eps,
                      *f.breakpoints})
        edges = [a] + [x for x in pts if a < x < b] + [b]
        v = 0.0
        for lo, hi in zip(edges, edges[1:]):
            v += qd.integrate(kern, (lo, hi), cfg)
        vals.append(v / math.pi)
    eps = np.asarray(eps_schedule, dtype=float)
    basis = np.stack([np.ones_like(eps), eps, eps ** 2 * np.log(eps), eps ** 2],
                     axis=1)
    coef_re = np.linalg.solve(basis, np.real(vals))
    coef_im = np.linalg.solve(basis, np.imag(vals))
    upper = complex(coef_re[0], coef_im[0])
    # real density: the two one-sided limits are complex conjugates
    lower = upper.conjugate()
    diag = {"eps": list(eps_schedule), "values": vals}
    return upper, lower, diag
