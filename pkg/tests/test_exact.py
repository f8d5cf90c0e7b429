import cmath
import math
import random

import numpy as np
import pytest

from hexlat import exact
from hexlat import _algcoeffs as alg


# ---------------------------------------------------------------------------
# product parametrization
# ---------------------------------------------------------------------------

def test_products_low_density_limit():
    pt = exact.eval_products(-1e-9)
    assert pt.z_low == pytest.approx(1e-9, rel=1e-6)
    assert pt.kappa_low == pytest.approx(1.0, abs=1e-8)


def test_products_approach_critical_point():
    z1 = exact.eval_products(-0.9).z_low
    z2 = exact.eval_products(-0.95).z_low
    assert abs(z2 - exact.Z_CRIT) < abs(z1 - exact.Z_CRIT)
    assert z2 == pytest.approx(exact.Z_CRIT, rel=1e-3)


def test_products_domain():
    with pytest.raises(ValueError):
        exact.eval_products(1.2)
    with pytest.raises(ValueError):
        exact.eval_products(-0.99)


def test_parametric_pairs_solve_algebraic_equations():
    rng = np.random.default_rng(42)
    for x in rng.uniform(-0.9, -0.02, size=60):
        p = exact.eval_products(x)
        assert exact.f_minus(p.z_low, p.kappa_low) < 1e-10
    for x in rng.uniform(0.02, 0.9, size=60):
        p = exact.eval_products(x)
        assert exact.f_plus(p.z_high, p.kappa_high) < 1e-10


# ---------------------------------------------------------------------------
# singular-point constants
# ---------------------------------------------------------------------------

def test_critical_constants():
    assert exact.Z_CRIT == pytest.approx(11.0901699437, abs=1e-9)
    assert exact.Z_NEG == pytest.approx(-0.0901699437, abs=1e-9)
    assert exact.Z_CRIT * abs(exact.Z_NEG) == pytest.approx(1.0, abs=1e-14)
    assert exact.KAPPA_AT_CRIT == pytest.approx(2.3144003, abs=5e-8)
    assert exact.KAPPA_LOW_AT_NEG == pytest.approx(0.83475738, abs=5e-9)
    assert exact.KAPPA_HIGH_MOD_AT_NEG == pytest.approx(0.208689, abs=5e-7)
    assert exact.KAPPA_LOW_AT_NEG == pytest.approx(
        4 * exact.KAPPA_HIGH_MOD_AT_NEG, abs=1e-9)


def test_omega_values_at_singular_points():
    s = 5**2.5
    for z, o3_sign in ((exact.Z_CRIT, -1), (exact.Z_NEG, +1)):
        assert abs(alg.omega1(z)) < 1e-9
        assert alg.omega2(z) == pytest.approx((s * z) ** 2, rel=1e-12)
        assert alg.omega3(z) == pytest.approx(o3_sign * abs(s * z) ** 3
                                              * (1 if z > 0 else -1) ** 3,
                                              rel=1e-12)


def test_low_density_equation_factorizes_at_critical_point():
    # degree-11 reduction at the positive singular point factorizes as
    # (w + 16)^2 (w - 27)^3 (w - 432)^6
    from numpy.polynomial import polynomial as P
    factored = [1]
    for root, mult in ((-16, 2), (27, 3), (432, 6)):
        for _ in range(mult):
            factored = P.polymul(factored, [-root, 1])
    got = np.array(alg.C_MINUS_CRITICAL, dtype=float)
    assert np.allclose(factored, got, rtol=1e-12)


def test_f_plus_reduces_to_cubic_at_critical_point():
    # f+ at the critical point collapses to -z^22 (w + 3^9)^3 in the
    # rescaled variable; check the root value directly
    kc = exact.KAPPA_AT_CRIT
    assert exact.f_plus(exact.Z_CRIT, kc) < 1e-12
    assert exact.f_minus(exact.Z_CRIT, kc) < 1e-12


def test_f_minus_root_at_negative_point():
    assert exact.f_minus(exact.Z_NEG, exact.KAPPA_LOW_AT_NEG) < 1e-12


# ---------------------------------------------------------------------------
# inversion symmetry of both algebraic equations
# ---------------------------------------------------------------------------

def test_inversion_symmetry():
    rng = random.Random(1)
    for _ in range(100):
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        k = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(z) < 1e-3:
            continue
        for f in (exact.f_minus_raw, exact.f_plus_raw):
            lhs = z**44 * f(-1 / z, k / z)
            rhs = f(z, k)
            assert abs(lhs - rhs) <= 1e-8 * max(abs(lhs), abs(rhs), 1e-30)


# ---------------------------------------------------------------------------
# branch continuation
# ---------------------------------------------------------------------------

def test_kappa_minus_at_origin_limit():
    b = exact.kappa_minus(1e-8)
    assert b.value == pytest.approx(1.0, abs=1e-7)


def test_kappa_minus_at_singular_points():
    assert exact.kappa_minus(exact.Z_CRIT).value == pytest.approx(
        2.3144003, abs=5e-8)
    assert exact.kappa_minus(exact.Z_NEG).value == pytest.approx(
        0.83475738, abs=5e-9)


def test_kappa_minus_interior_real_positive():
    for z in (0.5, 1.0, 5.0, 10.0, -0.05):
        b = exact.kappa_minus(z)
        assert b.value.imag == 0
        assert b.value.real > 0
        assert b.residual < 1e-12


def test_kappa_minus_continuity_toward_critical_point():
    near = exact.kappa_minus(exact.Z_CRIT - 1e-3).value
    assert near.real == pytest.approx(exact.KAPPA_AT_CRIT, abs=5e-4)


def test_kappa_plus_series_agreement():
    b = exact.kappa_plus(1e6)
    series = exact.kappa_high_series(1e6)
    assert abs(b.value - series) / abs(series) < 1e-10


def test_kappa_plus_at_singular_points():
    assert exact.kappa_plus(exact.Z_CRIT).value == pytest.approx(
        2.3144003, abs=5e-8)
    plus = exact.kappa_plus(exact.Z_NEG, side=+1).value
    minus = exact.kappa_plus(exact.Z_NEG, side=-1).value
    assert abs(plus) == pytest.approx(0.208689, abs=5e-7)
    assert cmath.phase(plus) == pytest.approx(math.pi / 3, abs=1e-12)
    assert cmath.phase(minus) == pytest.approx(-math.pi / 3, abs=1e-12)


def test_kappa_plus_phase_on_cut():
    b = exact.kappa_plus(-2.0, side=+1)
    assert cmath.phase(b.value) == pytest.approx(math.pi / 3, abs=1e-6)
    assert b.residual < 1e-10


def test_branches_conjugate_symmetric():
    for fn in (exact.kappa_minus, exact.kappa_plus):
        up = fn(2 + 3j).value
        dn = fn(2 - 3j).value
        assert up == pytest.approx(dn.conjugate(), abs=1e-10)


def test_branch_residuals_off_axis():
    rng = np.random.default_rng(9)
    for _ in range(12):
        z = complex(rng.uniform(-5, 12), rng.uniform(0.3, 6))
        assert exact.kappa_minus(z).residual < 1e-11
        assert exact.kappa_plus(z).residual < 1e-11


def test_kappa_plus_rejects_origin():
    with pytest.raises(ValueError):
        exact.kappa_plus(0)


# ---------------------------------------------------------------------------
# Hauptmodul machinery
# ---------------------------------------------------------------------------

def test_hauptmodul_zero_at_critical_point():
    assert abs(exact.hauptmodul(exact.Z_CRIT)) < 1e-12


def test_hauptmodul_selected_point():
    assert exact.hauptmodul(-5.94254104).real == pytest.approx(
        1.2699348, abs=2e-7)


def test_hauptmodul_pole_signalled():
    # Omega3 vanishes at z = i among others
    with pytest.raises(ZeroDivisionError):
        exact.hauptmodul(1j)


def test_icosahedral_invariance():
    rng = random.Random(3)
    worst = 0.0
    count = 0
    while count < 100:
        zeta = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(zeta) < 0.3:
            continue
        count += 1
        h1 = exact.hauptmodul(zeta**5)
        for image in (exact.h5_transform(zeta), -1 / zeta,
                      exact.OMEGA5 * zeta):
            h2 = exact.hauptmodul(image**5)
            worst = max(worst, abs(h1 - h2) / max(1.0, abs(h1)))
    assert worst < 1e-10


def test_negative_axis_crossing_algebraic():
    h_star, z_star = exact.negative_axis_crossing()
    assert h_star == pytest.approx(1.2699347976, abs=1e-8)
    assert z_star == pytest.approx(-5.94254104, abs=1e-6)


def test_ratio_factorization_at_h_zero():
    # stored factor data: the only unit-modulus ratio at Hauptmodul zero is 1
    on_circle = []
    for lead, const, mult in alg.RATIO_AT_H0_FACTORS:
        r = -const / lead
        if abs(abs(r) - 1) < 1e-12:
            on_circle.append(r)
    assert on_circle == [1]


def test_selected_point_w_values():
    pt = exact.hauptmodul_point(-5.942541048263515)
    assert pt.w_plus.real == pytest.approx(-5404.2605, abs=2e-3)
    assert abs(pt.w_plus.imag) < 1e-4
    assert pt.w_minus.real == pytest.approx(2118.9287, abs=2e-3)
    assert abs(pt.w_minus.imag) == pytest.approx(4971.5363, abs=2e-3)
    r = pt.w_plus / pt.w_minus
    assert abs(r) == pytest.approx(1.0, abs=1e-9)
    assert r.real == pytest.approx(-0.3920, abs=1e-4)
    assert abs(r.imag) == pytest.approx(0.9199, abs=1e-4)
    kp6 = pt.w_plus / alg.omega3(pt.z) * pt.z**6
    assert kp6.real == pytest.approx(26.6786, abs=1e-4)
    assert pt.residual_plus < 1e-8 and pt.residual_minus < 1e-8


def test_w_at_negative_point_is_integer():
    # rescaled low-density variable equals -2^12 3^9 at the negative point
    z = exact.Z_NEG
    wm = alg.omega3(z) * (exact.KAPPA_LOW_AT_NEG / z) ** 6
    assert wm == pytest.approx(-(2**12) * 3**9, rel=1e-9)


def test_w_relation_exact_special_value():
    assert exact.w_relation_residual(w_minus=-3**9, w_plus=-3**9) == 0.0


def test_w_relation_self_pairing_roots():
    # setting both variables equal collapses the relation to the roots
    # {0 (sixfold), -3^9, -57707, 22743 +- 30268 i}; recover the integer
    # coefficients by exact interpolation at 11 points
    from fractions import Fraction
    xs = list(range(-5, 6))
    ys = [Fraction(exact.alg.w_relation(x, x)) for x in xs]
    n = len(xs)
    mat = [[Fraction(x) ** k for k in range(n)] for x in xs]
    # Gaussian elimination over Fractions
    aug = [row + [y] for row, y in zip(mat, ys)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    coeffs = [aug[r][-1] for r in range(n)]
    assert all(c.denominator == 1 for c in coeffs)
    assert coeffs[0] == coeffs[1] == 0  # at least a double root at w = 0
    ints = [int(c) for c in coeffs]
    scale = max(abs(c) for c in ints)
    roots = np.roots([c / scale for c in ints[::-1]])
    finite = sorted([r for r in roots if abs(r) > 1], key=lambda t: abs(t))
    assert finite[0] == pytest.approx(-19683, rel=1e-6)
    assert finite[1].real == pytest.approx(22743, rel=1e-5)
    assert abs(finite[1].imag) == pytest.approx(30268, rel=1e-5)
    assert finite[3].real == pytest.approx(-57707, rel=1e-6)


def test_w_relation_along_branches():
    rng = np.random.default_rng(17)
    for _ in range(8):
        z = complex(rng.uniform(-5, 12), rng.uniform(0.4, 5))
        assert exact.w_relation_residual(z) < 1e-8
    for zr in (11.5, 14.0, 19.0):
        assert exact.w_relation_residual(zr) < 1e-8


def test_rescaled_product_identity():
    rng = random.Random(7)
    for _ in range(100):
        z = complex(rng.uniform(0.3, 2), rng.uniform(-1.5, 1.5))
        k = complex(rng.uniform(0.3, 2), rng.uniform(-1.5, 1.5))
        assert exact.rescaled_product_identity_residual(z, k) < 1e-8


# ---------------------------------------------------------------------------
# equimodular curve of the per-site branches
# ---------------------------------------------------------------------------

def test_axis_crossings():
    neg, pos = exact.axis_crossings()
    assert pos == pytest.approx(exact.Z_CRIT, abs=1e-12)
    assert neg == pytest.approx(-5.94254104, abs=1e-6)


def test_gap_sign_change_at_crossings():
    for x0, halfwidth in ((-5.942541, 0.05), (exact.Z_CRIT, 0.7)):
        lo = exact._gap_at(complex(x0 - halfwidth, 0.02))
        hi = exact._gap_at(complex(x0 + halfwidth, 0.02))
        assert lo * hi < 0


def test_curve_is_conjugation_symmetric():
    # |kappa(z)| equals |kappa(conj z)| for both branches
    z = 3 + 2j
    assert abs(exact.kappa_plus(z).value) == pytest.approx(
        abs(exact.kappa_plus(z.conjugate()).value), rel=1e-12)
    assert abs(exact.kappa_minus(z).value) == pytest.approx(
        abs(exact.kappa_minus(z.conjugate()).value), rel=1e-12)


# ---------------------------------------------------------------------------
# density branch
# ---------------------------------------------------------------------------

def test_rho_at_critical_point():
    assert exact.rho_minus(exact.Z_CRIT).rho.real == pytest.approx(
        (1 - 5**-0.5) / 2, abs=1e-14)


def test_rho_vanishes_at_origin_limit():
    assert abs(exact.rho_minus(1e-8).rho) < 1e-6


def test_rho_negative_between_singularity_and_origin():
    for z in (-0.01, -0.05, -0.085):
        d = exact.rho_minus(z)
        assert d.rho.real < 0
        assert d.negative_on_axis
        assert d.residual < 1e-10


def test_rho_positive_on_physical_interval():
    assert exact.rho_minus(1.0).rho.real > 0


def test_rho_series_matches_continuation():
    t = 1e-3
    z = exact.Z_NEG * (1 - 5**1.5 * t)
    cont = exact.rho_minus(z).rho
    series = exact.rho_from_series(t, order=24)
    assert abs(cont - series) < 1e-8


def test_rho_divergence_rejected_at_singular_point():
    with pytest.raises(ValueError):
        exact.rho_minus(exact.Z_NEG)
