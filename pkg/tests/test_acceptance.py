"""End-to-end acceptance checks.

Each test prints a single pass/fail line so the suite output doubles as a
checklist.  Fixtures are small closed-form cases; tolerances are part of
the contract and should not be loosened.
"""

import math

import numpy as np
import pytest
from scipy.special import beta as beta_fn

import stieltjes.cauchy as cy
import stieltjes.hilbert as hb
import stieltjes.measures as ms
import stieltjes.quadrature as qd
import stieltjes.represent as rp
import stieltjes.stconv as sc
import stieltjes.transforms as tr

Z_POINTS = [0.5, 1.0, 10.0, 1 + 1j, -2 + 3j]


def _line(label, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'}: {label} ({detail})")
    assert ok, f"{label}: {detail}"


def test_product_identity_fixture_set():
    fixtures = [
        (ms.atom_measure(1.0), 1.0, ms.atom_measure(2.0), 1.0),
        (ms.Measure(ms.HALF_LINE, (ms.Atom(0.0, 1.0),),
                    (ms.window(0.0, 1.0, 1.0),)), 1.0,
         ms.density_measure(ms.exp_tail(anchor=0.0, c=1.0, rate=1.0)), 2.0),
        (ms.density_measure(ms.window(1.0, 2.0, 1.0)), 0.5,
         ms.density_measure(ms.window(0.0, 3.0, 1.0)), 0.5),
    ]
    worst = 0.0
    for mu1, a1, mu2, a2 in fixtures:
        report = sc.verify_product(mu1, a1, mu2, a2, Z_POINTS, tolerance=1e-6)
        worst = max(worst, report.max_residual)
    _line("product identity on the three-fixture set", worst <= 1e-6,
          f"max relative residual {worst:.3e} <= 1e-6")


def test_atom_pair_convolution_closed_form():
    a, b = 1.0, 3.0
    grid = np.linspace(a, b, 66)[1:-1]
    res = sc.convolve(ms.atom_measure(a), 1.0, ms.atom_measure(b), 1.0,
                      grid=grid)
    err = max(abs(res.density(float(t)) - 1.0 / (b - a)) for t in grid)
    _line("atom pair convolves to the uniform density", err <= 1e-10,
          f"max pointwise error {err:.3e} <= 1e-10 on 64 points")


def test_top_index_norm_equality():
    pairs = [
        (ms.atom_measure(1.0), 1.0, ms.atom_measure(2.0), 1.0),
        (ms.density_measure(ms.window(1.0, 2.0, 1.0)), 0.5,
         ms.density_measure(ms.window(0.0, 3.0, 1.0)), 0.5),
        (ms.Measure(ms.HALF_LINE, (ms.Atom(0.0, 1.0),),
                    (ms.window(0.0, 1.0, 1.0),)), 1.0,
         ms.density_measure(ms.exp_tail(anchor=0.0, c=1.0, rate=1.0)), 2.0),
    ]
    worst = 0.0
    for mu1, a1, mu2, a2 in pairs:
        n12 = sc.convolution_norm(mu1, a1, mu2, a2, a1 + a2)
        n1, n2 = ms.norm_beta(mu1, a1), ms.norm_beta(mu2, a2)
        worst = max(worst, abs(n12 - n1 * n2) / (1e-8 * n1 * n2))
    _line("top-index norm multiplies", worst <= 1.0,
          f"worst error / (1e-8 * norm product) = {worst:.3f}")


def test_inequality_suite_randomized():
    rng = np.random.default_rng(7)

    def random_atoms():
        n = int(rng.integers(1, 3))
        return ms.Measure(ms.HALF_LINE, tuple(
            ms.Atom(float(rng.uniform(0, 8)), float(rng.uniform(0.1, 2.0)))
            for _ in range(n)), ())

    failures = 0
    for _ in range(50):
        mu1, mu2 = random_atoms(), random_atoms()
        a1 = float(rng.uniform(0.3, 1.5))
        a2 = float(rng.uniform(0.3, 1.5))
        b1 = float(rng.uniform(0.05, 1.0)) * a1
        b2 = float(rng.uniform(0.05, 1.0)) * a2
        report = sc.verify_inequality_suite(mu1, a1, mu2, a2,
                                            beta1=b1, beta2=b2,
                                            tolerance=1e-9)
        consts = sc.inequality_constants(a1, a2, b1, b2)
        if not report.passed or consts.a1 < 1.0 or consts.a2 < 1.0:
            failures += 1
    # sharpness ratio for an atom pair delta_0, delta_a at index split 0.9
    d = 0.9
    ratios = []
    for a in (10.0, 100.0, 1000.0):
        mu1, mu2 = ms.atom_measure(0.0), ms.atom_measure(a)
        num = sc.convolution_norm(mu1, 1.0, mu2, 1.0, 1.0)
        den = ms.norm_beta(mu1, 1 - d) * ms.norm_beta(mu2, d)
        ratios.append(num / den)
    ok = failures == 0 and ratios[0] < ratios[1] < ratios[2]
    _line("norm inequality suite on 50 random positive pairs", ok,
          f"{failures} failures; sharpness ratios "
          f"{[round(r, 3) for r in ratios]} increase")


def test_kernel_density_representation():
    worst = 0.0
    for beta in (0.2, 0.5, 0.8):
        for s in (0.1, 1.0, 10.0):
            lhs = qd.integrate(
                lambda t: rp.phi_beta(beta, t) * (s + t) ** -beta,
                (0.0, math.inf), None, [(0.0, 2.0 * beta - 1.0)])
            worst = max(worst, abs(lhs - 1.0 / (s ** beta + 1.0)))
    closed = max(abs(rp.phi_beta(0.5, t) - 1.0 / (2.0 * (t + 1.0) ** 1.5))
                 for t in (0.5, 1.0, 10.0))
    ok = worst <= 1e-6 and closed <= 1e-8
    _line("order-beta kernel density represents 1/(s^b+1)", ok,
          f"identity residual {worst:.3e} <= 1e-6, "
          f"half-order closed form {closed:.3e} <= 1e-8")


def test_rescaling_log_identity():
    worst_direct = 0.0
    for s in (0.25, 1.0, 4.0):
        val = qd.integrate(
            lambda r: (r ** -0.5 - (1.0 + r) ** -0.5) * (s + r) ** -0.5,
            (0.0, math.inf), None, [(0.0, -0.5)])
        worst_direct = max(
            worst_direct, abs(0.5 * val - math.log(1.0 + s ** -0.5)))
    mu = ms.density_measure(ms.window(0.0, 1.0, 1.0))
    rep = rp.StieltjesRepresentation(order=1.0, constant=0.0, pole_mass=0.0,
                                     measure=mu)
    lifted = rp.rescale_beta(rep, 0.5, np.geomspace(1e-6, 1e6, 121))
    worst_lift = max(
        abs(complex(lifted.eval(s)).real - math.log(1.0 + s ** -0.5))
        for s in (0.25, 1.0, 4.0))
    ok = worst_direct <= 1e-8 and worst_lift <= 1e-8
    _line("half-order rescaling reproduces the log identity", ok,
          f"direct {worst_direct:.3e}, rescaled {worst_lift:.3e} <= 1e-8")


def test_hilbert_product_identities():
    f1 = hb.from_piece(ms.window(0.0, 2.0, 1.0))
    f2 = hb.from_piece(ms.window(1.0, 3.0, 1.0))
    res = hb.tricomi_residual(f1, f2, list(np.linspace(0.2, 2.8, 10)))
    pr = hb.parseval_residual(f1, f2)
    ok = max(res) <= 1e-5 and pr <= 1e-6
    _line("Hilbert product and orthogonality identities", ok,
          f"product residual {max(res):.3e} <= 1e-5, "
          f"orthogonality {pr:.3e} <= 1e-6")


def test_boundary_value_extrapolation():
    worst = 0.0
    for f in (hb.from_piece(ms.window(0.0, 2.0, 1.0)),
              hb.from_piece(ms.exp_tail(anchor=0.0, c=1.0, rate=1.0))):
        t = 1.0
        upper, lower, _ = hb.plemelj_boundary(f, t)
        h = hb.hilbert_pv(f, t)
        fv = f.scalar(t)
        worst = max(worst, abs(upper - (1j * fv + h)),
                    abs(lower - (-1j * fv + h)))
    _line("boundary values match the jump formula", worst <= 1e-5,
          f"max residual {worst:.3e} <= 1e-5")


def _one_sided_sqrt_tail(sign):
    piece = ms.power_tail(anchor=0.0, c=1.0, p=-0.5, direction=sign)
    mu = ms.density_measure(piece, domain=ms.LINE)
    if sign < 0:
        return ms.transform_measure(mu, ("restrict", -math.inf, -1.0))
    return ms.transform_measure(mu, ("restrict", 1.0, math.inf))


def test_positivity_verdicts_for_separated_pairs():
    verdict_no = cy.positivity_check_11(_one_sided_sqrt_tail(-1),
                                        _one_sided_sqrt_tail(1), a=0.0)
    partials = verdict_no.diagnostic.get("r_partials", [])
    slope_up = all(b > a for a, b in zip(partials, partials[1:]))
    m1 = ms.density_measure(ms.window(-2.0, -1.0, 1.0), domain=ms.LINE)
    m2 = ms.density_measure(ms.window(1.0, 2.0, 1.0), domain=ms.LINE)
    verdict_yes = cy.positivity_check_11(m1, m2, a=0.0)
    report = cy.verify_positivity_witness(m1, m2, verdict_yes, [1j, 2j],
                                          tolerance=1e-6)
    ok = (verdict_no.exists_positive == "no" and slope_up
          and verdict_yes.exists_positive == "yes" and report.passed)
    _line("positivity toolchain on heavy-tail vs truncated pairs", ok,
          f"heavy pair: no (rising partials over {len(partials)} rungs); "
          f"truncated pair: yes, witness residual "
          f"{report.max_residual:.3e} <= 1e-6")


def _log_tail_pair(alpha, d1, d2):
    p1 = ms.power_tail(anchor=0.0, c=1.0, p=alpha - 1.0,
                       log_power=-1.0 - d1, direction=-1)
    m1 = ms.transform_measure(ms.density_measure(p1, domain=ms.LINE),
                              ("restrict", -math.inf, -math.e))
    p2 = ms.power_tail(anchor=0.0, c=1.0, p=-alpha,
                       log_power=-1.0 - d2, direction=1)
    m2 = ms.transform_measure(ms.density_measure(p2, domain=ms.LINE),
                              ("restrict", math.e, math.inf))
    return m1, m2


def test_kernel_criterion_threshold():
    m1, m2 = _log_tail_pair(0.5, 0.4, 0.4)
    below = cy.criterion_g11(m1, m2, 0.5, a=math.e)
    m1, m2 = _log_tail_pair(0.5, 0.6, 0.6)
    above = cy.criterion_g11(m1, m2, 0.5, a=math.e)
    ok = below.exists_positive == "no" and above.exists_positive == "yes"
    _line("kernel criterion flips at logarithmic index 1", ok,
          f"index 0.8 -> {below.exists_positive}, "
          f"index 1.2 -> {above.exists_positive}")


def test_lifting_identities_and_obstruction():
    nu1 = ms.atom_measure(-1.0, 1.0, domain=ms.LINE)
    frac = cy.verify_lift(nu1, 1.0, 0.5, [1j, 2j, 1 + 1j], tolerance=1e-6)
    verdict = cy.lift_1_to_2(nu1)
    worst12 = max(abs(tr.cauchy_eval(verdict.witness, 2.0, z)
                      - 1.0 / (z - 1.0)) for z in (1j, 2j, -1 + 3j))
    alpha = 0.5
    heavy = _one_sided_sqrt_tail(-1)
    obstructed = cy.lift_1_to_2(heavy)
    z = 0.5j
    series = -sum(z ** n / (alpha + n) for n in range(200))
    hyp_err = abs(tr.cauchy_eval(heavy, 1.0, z) - series)
    ok = (frac.passed and verdict.exists_positive == "yes"
          and worst12 <= 1e-10 and obstructed.exists_positive == "no"
          and hyp_err <= 1e-8)
    _line("order liftings: fractional, 1 -> 2, and the obstruction", ok,
          f"fractional residual {frac.max_residual:.3e} <= 1e-6; "
          f"witness residual {worst12:.3e} <= 1e-10; heavy tail: no, "
          f"hypergeometric check {hyp_err:.3e} <= 1e-8")


def test_general_regime_kernel_norm_and_agreement():
    cfg = qd.QuadratureConfig(rel_tol=1e-8, abs_tol=1e-10)
    g = lambda tau: (abs(cy.cayley_G_kernel(tau, -1.0, 1.0, 1.0, 1.0))
                     * (1.0 + abs(tau)) ** -2.0)
    total = 0.0
    for a, b in ((-math.inf, -1.0), (-1.0, 1.0), (1.0, math.inf)):
        total += qd.integrate(g, (a, b), cfg,
                              [(x, -1e-6) for x in (-1.0, 1.0) if a <= x <= b])
    m1 = ms.atom_measure(-1.0, 1.0, domain=ms.LINE)
    m2 = ms.atom_measure(1.0, 1.0, domain=ms.LINE)
    res_j = cy.cauchy_convolve(m1, 1.0, m2, 1.0)
    res_g = cy.cauchy_convolve_general(m1, 1.0, m2, 1.0)
    agree = max(abs(res_j.transform(z) - res_g.transform(z))
                for z in (1j, 1 + 2j, -2 + 0.5j))
    ok = total <= 1.0 + 1e-6 and agree <= 1e-5
    _line("general-regime kernel norm and cross-regime agreement", ok,
          f"kernel norm {total:.6f} <= 1 + 1e-6; "
          f"regime disagreement {agree:.3e} <= 1e-5 at 3 points")


def test_quadrature_self_checks():
    rng = np.random.default_rng(11)
    worst_beta = 0.0
    for _ in range(100):
        p = float(rng.uniform(-0.9, 2.0))
        q = float(rng.uniform(-0.9, 2.0))
        val = qd.integrate(lambda t: t ** p * (1.0 - t) ** q, (0.0, 1.0),
                           None, [(0.0, p), (1.0, q)])
        worst_beta = max(worst_beta, abs(val - beta_fn(p + 1.0, q + 1.0)))
    worst_pv = max(
        abs(qd.integrate_pv(lambda t: 1.0 / (t - 2.0), 2.0, (-1.0, 5.0))),
        abs(qd.integrate_pv(lambda t: np.cos(t) / t, 0.0, (-3.0, 3.0))),
        abs(qd.integrate_pv(
            lambda t: np.exp(-(t - 1.0) ** 2) * (t - 1.0), 1.0,
            (-2.0, 4.0))))
    ok = worst_beta <= 1e-9 and worst_pv <= 1e-10
    _line("quadrature self-checks", ok,
          f"beta-integral residual {worst_beta:.3e} <= 1e-9, "
          f"odd principal values {worst_pv:.3e} <= 1e-10")
