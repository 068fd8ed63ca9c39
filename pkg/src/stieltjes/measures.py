"""Complex Radon measures on the half line or the real line.

A measure is a finite list of point masses (atoms) plus a finite list of
density pieces drawn from a small catalog of families.  The families cover
the shapes that show up when multiplying Stieltjes transforms: windowed
power laws, algebraic tails with optional logarithmic factors, exponential
tails, and tabulated densities for numerically produced output.

Weighted totals ``norm_beta`` and ``norm_beta_log`` may be infinite; the
value ``math.inf`` is returned as an explicit sentinel in that case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

HALF_LINE = "half_line"
LINE = "line"

_E = math.e


def _as_complex(w):
    w = complex(w)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise ValueError("weights must be finite complex numbers")
    return w


@dataclass(frozen=True)
class Atom:
    """Point mass ``weight * delta_{location}``."""

    location: float
    weight: complex = 1.0

    def __post_init__(self):
        if not math.isfinite(self.location):
            raise ValueError("atom location must be finite")
        object.__setattr__(self, "location", float(self.location))
        object.__setattr__(self, "weight", _as_complex(self.weight))


@dataclass(frozen=True)
class DensityPiece:
    """Absolutely continuous piece ``density(t) dt`` on ``support``.

    ``family`` is one of ``power_window``, ``power_tail``, ``exp_tail``,
    ``tabulated``.  ``params`` holds the family parameters; the anchors of
    the analytic formula live in ``params`` so a piece can be restricted to
    a sub-interval without changing the formula.  ``left_exponent`` and
    ``right_exponent`` declare the power behavior of the density at the
    finite support endpoints; quadrature uses them to pick weighted rules.
    """

    support: tuple
    family: str
    params: dict
    left_exponent: float = 0.0
    right_exponent: float = 0.0

    def __post_init__(self):
        a, b = self.support
        if not a < b:
            raise ValueError("piece support must be a nonempty interval")
        if self.left_exponent <= -1 or self.right_exponent <= -1:
            raise ValueError("endpoint exponents must exceed -1")
        object.__setattr__(self, "support", (float(a), float(b)))

    # vectorized evaluation; zero outside support
    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        a, b = self.support
        inside = (t > a) & (t < b)
        out = np.zeros(t.shape, dtype=self._dtype())
        ti = t[inside]
        if ti.size:
            out[inside] = self._formula(ti)
        return out

    def _dtype(self):
        if self.family == "tabulated":
            vals = np.asarray(self.params["values"])
            return complex if np.iscomplexobj(vals) else float
        return complex if isinstance(self.params.get("c", 1.0), complex) else float

    def _formula(self, t):
        p = self.params
        if self.family == "power_window":
            a, b = p["a"], p["b"]
            return p["c"] * (t - a) ** p["p"] * (b - t) ** p["q"]
        if self.family == "power_tail":
            x = (t - p["anchor"]) if p["dir"] > 0 else (p["anchor"] - t)
            out = p["c"] * (1.0 + x) ** (-p["decay"])
            if p["p"]:
                out = out * x ** p["p"]
            if p["log_power"]:
                out = out * np.log(x + _E) ** p["log_power"]
            return out
        if self.family == "exp_tail":
            x = (t - p["anchor"]) if p["dir"] > 0 else (p["anchor"] - t)
            out = p["c"] * np.exp(-p["rate"] * x)
            if p["p"]:
                out = out * x ** p["p"]
            return out
        if self.family == "tabulated":
            grid = np.asarray(p["grid"], dtype=float)
            vals = np.asarray(p["values"])
            if np.iscomplexobj(vals):
                return np.interp(t, grid, vals.real) + 1j * np.interp(t, grid, vals.imag)
            return np.interp(t, grid, vals)
        raise ValueError(f"unknown family {self.family!r}")

    def decay_exponent(self):
        """Algebraic decay rate of the density toward its infinite end."""
        if self.family == "power_tail":
            return self.params["decay"] - self.params["p"]
        if self.family == "exp_tail":
            return math.inf
        return math.inf  # bounded support


def power_window(a, b, c=1.0, p=0.0, q=0.0):
    """Density ``c (t-a)^p (b-t)^q`` on ``[a, b]``; requires ``p, q > -1``."""
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise ValueError("power_window needs a finite interval")
    return DensityPiece(
        support=(a, b),
        family="power_window",
        params={"a": float(a), "b": float(b), "c": c, "p": float(p), "q": float(q)},
        left_exponent=float(p),
        right_exponent=float(q),
    )


def power_tail(anchor=0.0, c=1.0, p=0.0, decay=0.0, log_power=0.0, direction=1):
    """Density ``c x^p (1+x)^-decay log(x+e)^log_power`` with ``x = t - anchor``.

    ``direction=-1`` mirrors the piece to ``(-inf, anchor]`` with ``x = anchor - t``.
    """
    support = (anchor, math.inf) if direction > 0 else (-math.inf, anchor)
    left = float(p) if direction > 0 else 0.0
    right = 0.0 if direction > 0 else float(p)
    return DensityPiece(
        support=support,
        family="power_tail",
        params={"anchor": float(anchor), "c": c, "p": float(p),
                "decay": float(decay), "log_power": float(log_power),
                "dir": 1 if direction > 0 else -1},
        left_exponent=left,
        right_exponent=right,
    )


def exp_tail(anchor=0.0, c=1.0, p=0.0, rate=1.0, direction=1):
    """Density ``c x^p exp(-rate x)`` with ``x = t - anchor`` (mirrored if direction=-1)."""
    if rate <= 0:
        raise ValueError("rate must be positive")
    support = (anchor, math.inf) if direction > 0 else (-math.inf, anchor)
    left = float(p) if direction > 0 else 0.0
    right = 0.0 if direction > 0 else float(p)
    return DensityPiece(
        support=support,
        family="exp_tail",
        params={"anchor": float(anchor), "c": c, "p": float(p),
                "rate": float(rate), "dir": 1 if direction > 0 else -1},
        left_exponent=left,
        right_exponent=right,
    )


def tabulated(grid, values, left_exponent=0.0, right_exponent=0.0):
    """Piecewise linear density through ``(grid, values)``; zero outside the grid."""
    grid = tuple(float(g) for g in grid)
    if any(g1 <= g0 for g0, g1 in zip(grid, grid[1:])) or len(grid) < 2:
        raise ValueError("grid must be strictly increasing with >= 2 points")
    return DensityPiece(
        support=(grid[0], grid[-1]),
        family="tabulated",
        params={"grid": grid, "values": tuple(values)},
        left_exponent=float(left_exponent),
        right_exponent=float(right_exponent),
    )


def window(a, b, c=1.0):
    """Indicator density ``c`` on ``[a, b]``."""
    return power_window(a, b, c=c)


def _scale_piece(piece, factor):
    if piece.family == "tabulated":
        vals = tuple(factor * complex(v) if isinstance(factor, complex) or isinstance(v, complex)
                     else factor * v for v in piece.params["values"])
        return replace(piece, params={**piece.params, "values": vals})
    return replace(piece, params={**piece.params, "c": factor * piece.params["c"]})


@dataclass(frozen=True)
class Measure:
    """Finite sum of atoms plus density pieces, on the half line or the line."""

    domain: str = HALF_LINE
    atoms: tuple = ()
    pieces: tuple = ()

    def __post_init__(self):
        if self.domain not in (HALF_LINE, LINE):
            raise ValueError("domain must be 'half_line' or 'line'")
        atoms = tuple(sorted(self.atoms, key=lambda a: a.location))
        locs = [a.location for a in atoms]
        if len(set(locs)) != len(locs):
            raise ValueError("atom locations must be distinct")
        if self.domain == HALF_LINE:
            if any(a.location < 0 for a in atoms):
                raise ValueError("half-line atoms must sit in [0, inf)")
            if any(p.support[0] < 0 for p in self.pieces):
                raise ValueError("half-line pieces must sit in [0, inf)")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "pieces", tuple(self.pieces))

    # --- algebra ----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        if other.domain != self.domain:
            raise ValueError("cannot add measures on different domains")
        merged = {a.location: a.weight for a in self.atoms}
        for a in other.atoms:
            merged[a.location] = merged.get(a.location, 0.0) + a.weight
        atoms = tuple(Atom(loc, w) for loc, w in merged.items() if w != 0)
        return Measure(self.domain, atoms, self.pieces + other.pieces)

    def __mul__(self, factor):
        factor = complex(factor)
        if factor.imag == 0:
            factor = factor.real
        return Measure(
            self.domain,
            tuple(Atom(a.location, factor * a.weight) for a in self.atoms),
            tuple(_scale_piece(p, factor) for p in self.pieces),
        )

    __rmul__ = __mul__

    # --- inspection ---------------------------------------------------------
    def density(self, t):
        """Total density of the absolutely continuous part at ``t`` (vectorized)."""
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        for p in self.pieces:
            out = out + p(t)
        if not np.iscomplexobj(out) or not out.imag.any():
            out = out.real
        return out

    @property
    def is_positive(self):
        """True when every atom weight and density coefficient is real and >= 0."""
        for a in self.atoms:
            if a.weight.imag != 0 or a.weight.real < 0:
                return False
        for p in self.pieces:
            if p.family == "tabulated":
                vals = np.asarray(p.params["values"])
                if np.iscomplexobj(vals) and vals.imag.any():
                    return False
                if (np.real(vals) < 0).any():
                    return False
            else:
                c = complex(p.params["c"])
                if c.imag != 0 or c.real < 0:
                    return False
        return True

    def events(self):
        """Sorted finite locations where the measure changes character."""
        pts = {a.location for a in self.atoms}
        for p in self.pieces:
            for end in p.support:
                if math.isfinite(end):
                    pts.add(end)
        return sorted(pts)

    def support_bounds(self):
        lo, hi = math.inf, -math.inf
        for a in self.atoms:
            lo, hi = min(lo, a.location), max(hi, a.location)
        for p in self.pieces:
            lo, hi = min(lo, p.support[0]), max(hi, p.support[1])
        return lo, hi

    @property
    def is_trivial(self):
        return not self.atoms and not self.pieces


def atom_measure(location, weight=1.0, domain=HALF_LINE):
    return Measure(domain, (Atom(location, weight),), ())


def density_measure(*pieces, domain=HALF_LINE):
    return Measure(domain, (), tuple(pieces))


# --- measure transformations ------------------------------------------------

def _shift_piece(piece, c):
    a, b = piece.support
    new_support = (a + c, b + c)
    p = dict(piece.params)
    if piece.family == "power_window":
        p["a"] += c
        p["b"] += c
    elif piece.family in ("power_tail", "exp_tail"):
        p["anchor"] += c
    elif piece.family == "tabulated":
        p["grid"] = tuple(g + c for g in p["grid"])
    return replace(piece, support=new_support, params=p)


def _reflect_piece(piece):
    a, b = piece.support
    new_support = (-b, -a)
    p = dict(piece.params)
    if piece.family == "power_window":
        p["a"], p["b"] = -p["b"], -p["a"]
        p["p"], p["q"] = p["q"], p["p"]
    elif piece.family in ("power_tail", "exp_tail"):
        p["anchor"] = -p["anchor"]
        p["dir"] = -p["dir"]
    elif piece.family == "tabulated":
        p["grid"] = tuple(-g for g in reversed(p["grid"]))
        p["values"] = tuple(reversed(p["values"]))
    return replace(piece, support=new_support, params=p,
                   left_exponent=piece.right_exponent,
                   right_exponent=piece.left_exponent)


def _restrict_piece(piece, lo, hi):
    a, b = piece.support
    lo, hi = max(a, lo), min(b, hi)
    if not lo < hi:
        return None
    left = piece.left_exponent if lo <= a else 0.0
    right = piece.right_exponent if hi >= b else 0.0
    return replace(piece, support=(lo, hi), left_exponent=left, right_exponent=right)


def transform_measure(mu, action, *args):
    """Exact push-forward / restriction of a measure.

    Actions: ``("shift", c)``, ``("reflect",)``, ``("restrict", lo, hi)``,
    ``("scale", w)``.  Shift and reflect of a half-line measure may leave the
    half line; the result is returned on the full line in that case.
    """
    if isinstance(action, tuple):
        action, *args = (*action, *args)
    if action == "shift":
        (c,) = args
        atoms = tuple(Atom(a.location + c, a.weight) for a in mu.atoms)
        pieces = tuple(_shift_piece(p, c) for p in mu.pieces)
        domain = mu.domain
        if domain == HALF_LINE and c < 0:
            domain = LINE
        return Measure(domain, atoms, pieces)
    if action == "reflect":
        atoms = tuple(Atom(-a.location, a.weight) for a in mu.atoms)
        pieces = tuple(_reflect_piece(p) for p in mu.pieces)
        domain = mu.domain
        if domain == HALF_LINE and (atoms or pieces):
            domain = LINE
        return Measure(domain, atoms, pieces)
    if action == "restrict":
        lo, hi = args
        atoms = tuple(a for a in mu.atoms if lo <= a.location <= hi)
        pieces = tuple(q for q in (_restrict_piece(p, lo, hi) for p in mu.pieces)
                       if q is not None)
        return Measure(mu.domain, atoms, pieces)
    if action == "scale":
        (w,) = args
        return mu * w
    raise ValueError(f"unknown action {action!r}")


def discrete_product(mu1, mu2):
    """Atoms shared by both measures, with the product of the two weights.

    This is the singular part of a transform product: an atom survives only
    where both factors carry one, at exactly matching locations.
    """
    if mu1.domain != mu2.domain:
        raise ValueError("measures must share a domain")
    locs2 = {a.location: a.weight for a in mu2.atoms}
    atoms = tuple(Atom(a.location, a.weight * locs2[a.location])
                  for a in mu1.atoms if a.location in locs2)
    return Measure(mu1.domain, atoms, ())


# --- weighted totals ---------------------------------------------------------

def norm_beta(mu, beta, cfg=None):
    """Total of ``(1+|t|)^-beta`` against ``|mu|``; ``math.inf`` if divergent."""
    from . import quadrature

    if beta < 0:
        raise ValueError("beta must be >= 0")
    total = sum(abs(a.weight) * (1.0 + abs(a.location)) ** (-beta) for a in mu.atoms)
    weight = lambda t: (1.0 + np.abs(t)) ** (-beta)
    for piece in mu.pieces:
        val = quadrature.piece_weighted_total(piece, weight, cfg=cfg,
                                              weight_decay=beta)
        if math.isinf(val):
            return math.inf
        total += val
    return total


def norm_beta_log(mu, beta, cfg=None):
    """Total of ``log(t+e) (1+t)^-beta`` against ``|mu|`` on the half line."""
    from . import quadrature

    if mu.domain != HALF_LINE:
        raise ValueError("log-weighted norm is defined for half-line measures")
    if beta < 0:
        raise ValueError("beta must be >= 0")
    total = sum(abs(a.weight) * math.log(a.location + _E)
                * (1.0 + a.location) ** (-beta) for a in mu.atoms)
    weight = lambda t: np.log(t + _E) * (1.0 + t) ** (-beta)
    for piece in mu.pieces:
        val = quadrature.piece_weighted_total(piece, weight, cfg=cfg,
                                              weight_decay=beta,
                                              weight_log_power=1.0)
        if math.isinf(val):
            return math.inf
        total += val
    return total
