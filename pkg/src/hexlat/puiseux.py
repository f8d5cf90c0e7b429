"""Exact fractional-power expansion of the low-density particle density.

At the negative-axis singular point the density diverges with exponent -1/6.
Writing t = 5^(-3/2) (1 - z/z_neg) and s = t^(1/6), the density has a
Laurent-type expansion rho = (1/s) * sum_m b_m s^m whose coefficients live in
the field Q(sqrt 5).  This module computes the b_m exactly from the
degree-12 density equation, order by order, and regroups them into the six
classical sub-series attached to exponents -1/6, 0, 2/3, 3/2, 7/3, 19/6.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._algcoeffs import density_poly_coeffs


@dataclass(frozen=True)
class Q5:
    """Element a + b*sqrt(5) with rational a, b."""

    a: Fraction
    b: Fraction

    def __add__(self, o):
        o = _lift(o)
        return Q5(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        o = _lift(o)
        return Q5(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return _lift(o) - self

    def __mul__(self, o):
        o = _lift(o)
        return Q5(self.a * o.a + 5 * self.b * o.b,
                  self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _lift(o)
        n = o.a * o.a - 5 * o.b * o.b
        return self * Q5(o.a / n, -o.b / n)

    def __neg__(self):
        return Q5(-self.a, -self.b)

    def __eq__(self, o):
        o = _lift(o)
        return self.a == o.a and self.b == o.b

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * 5**0.5

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt5)"

    def __pow__(self, n):
        out = Q5_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out


def _lift(x):
    if isinstance(x, Q5):
        return x
    return Q5(Fraction(x), Fraction(0))


Q5_ZERO = Q5(Fraction(0), Fraction(0))
Q5_ONE = Q5(Fraction(1), Fraction(0))
SQRT5 = Q5(Fraction(0), Fraction(1))

# z at the two real singular points and the critical density value
Z_NEG = Q5(Fraction(11, 2), Fraction(-5, 2))     # (11 - 5 sqrt5)/2 < 0
Z_POS = Q5(Fraction(11, 2), Fraction(5, 2))      # (11 + 5 sqrt5)/2
RHO_AT_Z_POS = Q5(Fraction(1, 2), Fraction(-1, 10))   # (1 - 1/sqrt5)/2


def _ser_add(u, v):
    n = max(len(u), len(v))
    return [(u[i] if i < len(u) else Q5_ZERO) + (v[i] if i < len(v) else Q5_ZERO)
            for i in range(n)]


def _ser_mul(u, v, order):
    out = [Q5_ZERO] * min(order + 1, len(u) + len(v) - 1)
    for i, x in enumerate(u):
        if not x or i > order:
            continue
        for j, y in enumerate(v):
            if i + j > order:
                break
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def _ser_scale(u, c):
    return [c * x for x in u]


def _ser_shift(u, k, order):
    return ([Q5_ZERO] * k + u)[: order + 1]


def density_equation_q5():
    """A_k(z) tables lifted to Q5, k = 0..12 (each a tuple of z-coefficients)."""
    return [tuple(_lift(c) for c in row) for row in density_poly_coeffs()]


@lru_cache(maxsize=4)
def solve_density_expansion(order=26):
    """Coefficients b_0..b_order of rho = (1/s) sum b_m s^m at the negative-axis point.

    The branch is pinned by the requirement that the density is real and
    negative just right of the singular point, which selects b_0 = -1/sqrt5.
    Returns an immutable tuple of Q5 values.
    """
    a_rows = density_equation_q5()
    # z(s) = Z_NEG (1 - 5 sqrt5 s^6), an exact polynomial in s
    zser = [Z_NEG] + [Q5_ZERO] * 5 + [-Z_NEG * 5 * SQRT5]

    def a_of_s(row):
        acc = [Q5_ZERO]
        zpow = [Q5_ONE]
        for c in row:
            if c:
                acc = _ser_add(acc, _ser_scale(zpow, c))
            zpow = _ser_mul(zpow, zser, order + 12)
        return acc

    a_ser = [a_of_s(row) for row in a_rows]

    def f_of(sigma):
        """Series of s^12 * P(sigma/s, z(s)) up to the working order."""
        total = [Q5_ZERO]
        sig_pow = [Q5_ONE]
        for k, a in enumerate(a_ser):
            term = _ser_mul(a, sig_pow, order + 12)
            term = _ser_shift(term, 12 - k, order + 12)
            total = _ser_add(total, term)
            if k < len(a_ser) - 1:
                sig_pow = _ser_mul(sig_pow, sigma, order + 12)
        return total

    def fprime_of(sigma):
        total = [Q5_ZERO]
        sig_pow = [Q5_ONE]
        for k, a in enumerate(a_ser):
            if k >= 1:
                term = _ser_mul(a, sig_pow, order + 12)
                term = _ser_shift(term, 12 - k, order + 12)
                total = _ser_add(total, _ser_scale(term, _lift(k)))
                if k < len(a_ser) - 1:
                    sig_pow = _ser_mul(sig_pow, sigma, order + 12)
            else:
                continue
        return total

    b0 = -Q5_ONE / SQRT5
    # consistency of the leading balance with the stored equation tables
    lead = a_ser[11][6] * b0 ** 11 + a_ser[5][0] * b0 ** 5
    if lead:
        raise AssertionError("leading Puiseux balance failed; coefficient tables wrong")

    sigma = [b0] + [Q5_ZERO] * order
    fp = fprime_of(sigma)
    nu = next(i for i, c in enumerate(fp) if c)
    if nu != 7:
        raise AssertionError(f"unexpected derivative valuation {nu}")
    # fp[nu] only involves the constant term of sigma, so one evaluation serves
    for m in range(1, order + 1):
        f = f_of(sigma)
        val = f[nu + m] if nu + m < len(f) else Q5_ZERO
        if val:
            sigma[m] = -val / fp[nu]
    # closing check: residual vanishes through the computed order
    f = f_of(sigma)
    for i in range(min(len(f), nu + order + 1)):
        if f[i]:
            raise AssertionError(f"expansion residual at order {i}")
    return tuple(sigma)


_GAP_INDICES = (2, 3, 4, 8, 9, 14)  # b_m forced to vanish by lattice symmetry


def sigma_series(order=3, expansion=None):
    """The six sub-series of the density expansion, exactly in Q5.

    Returns a list of six coefficient lists [Sigma_0, ..., Sigma_5], each
    truncated at the requested power of t; entries are Q5 values.
    """
    need = 6 * order + 21
    b = expansion if expansion is not None else solve_density_expansion(need)
    for g in _GAP_INDICES:
        if g < len(b) and b[g]:
            raise AssertionError(f"forbidden expansion coefficient b_{g} nonzero")
    starts = (0, 1, 5, 10, 15, 20)
    out = []
    for s0 in starts:
        coeffs = []
        for j in range(order + 1):
            m = s0 + 6 * j
            coeffs.append(b[m] if m < len(b) else Q5_ZERO)
        out.append(coeffs)
    return out


def rho_from_series(t, order=20):
    """Float density from the exact expansion at scaled distance t > 0."""
    b = solve_density_expansion(order)
    s = t ** (1.0 / 6.0)
    acc = 0.0
    for m, bm in enumerate(b):
        acc += float(bm) * s ** (m - 1)
    return acc
