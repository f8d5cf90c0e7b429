from fractions import Fraction

import pytest

from hexlat.puiseux import (Q5, Q5_ONE, SQRT5, Z_NEG, Z_POS, RHO_AT_Z_POS,
                            density_equation_q5, rho_from_series, sigma_series,
                            solve_density_expansion)

INV5 = Q5_ONE / SQRT5
HALF = Q5(Fraction(1, 2), Fraction(0))


def _q(a, b=0):
    return Q5(Fraction(a), Fraction(b))


def test_field_arithmetic():
    x = Q5(Fraction(2), Fraction(3))
    y = Q5(Fraction(-1), Fraction(1, 2))
    assert (x * y) / y == x
    assert float(SQRT5 * SQRT5) == 5.0
    assert (SQRT5 ** 3) == 5 * SQRT5


def test_singular_point_values():
    # z+ * z- = -1 and z+ + z- = 11
    assert Z_POS * Z_NEG == _q(-1)
    assert Z_POS + Z_NEG == _q(11)


def test_density_equation_reduces_to_quintic_at_singular_points():
    """At both real singular points the degree-12 density equation collapses
    to a perfect fifth power -- a sharp transcription check on every
    coefficient of the stored equation."""
    rows = density_equation_q5()

    def coeffs_at(zval):
        out = []
        for row in rows:
            acc = Q5(Fraction(0), Fraction(0))
            zp = Q5_ONE
            for c in row:
                acc = acc + c * zp
                zp = zp * zval
            out.append(acc)
        return out

    scale8000 = Q5(Fraction(1, 8000), Fraction(0))
    for zval, sign_term, prefac in (
            (Z_POS, SQRT5, _q(275, 123)),
            (Z_NEG, -Q5_ONE * SQRT5, _q(275, -123))):
        got = coeffs_at(zval)
        # -(prefac/8000) * (10 rho - 5 + s)^5 expanded
        shift = _q(-5) + sign_term
        expect = []
        from math import comb
        for k in range(6):
            c = _q(comb(5, k) * 10**k) * shift ** (5 - k)
            expect.append(-(prefac * scale8000) * c)
        for k in range(13):
            want = expect[k] if k < 6 else Q5(Fraction(0), Fraction(0))
            assert got[k] == want, (zval, k)


def test_leading_coefficients_exact():
    sig = sigma_series(order=0)
    assert sig[0][0] == -INV5
    assert sig[1][0] == (Q5_ONE + INV5) * HALF
    assert sig[2][0] == -2 * INV5
    assert sig[3][0] == -3 * INV5
    assert sig[4][0] == -4 * INV5
    assert sig[5][0] == -6 * INV5


def test_higher_coefficients_exact():
    sig = sigma_series(order=3)
    assert sig[0][1] == (5 + 11 * INV5) * _q(Fraction(1, 12))
    assert sig[0][2] == (275 + 639 * INV5) * _q(Fraction(1, 144))
    assert sig[0][3] == (17765 + 37312 * INV5) * _q(Fraction(1, 1296))
    assert sig[1][1] == INV5
    assert sig[1][2] == (5 - INV5) * HALF
    assert sig[1][3] == -(5 - 83 * INV5) * HALF
    assert sig[2][1] == -(25 - 4 * SQRT5) * _q(Fraction(2, 15))
    assert sig[2][2] == (125 - 108 * SQRT5) * _q(Fraction(4, 45))
    assert sig[2][3] == -(16775 - 4621 * SQRT5) * _q(Fraction(4, 405))
    assert sig[3][1] == -(15 - 7 * INV5) * _q(Fraction(3, 4))
    assert sig[4][1] == -(175 - 13 * SQRT5) * _q(Fraction(2, 15))
    assert sig[5][1] == -(95 - 31 * INV5) * HALF


def test_forbidden_orders_vanish():
    b = solve_density_expansion(21)
    for g in (2, 3, 4, 8, 9, 14):
        assert not b[g]


def test_critical_density_constant():
    assert float(RHO_AT_Z_POS) == pytest.approx((1 - 5**-0.5) / 2, abs=1e-15)


def test_series_is_real_and_negative_near_singularity():
    val = rho_from_series(1e-3, order=20)
    assert val < 0
