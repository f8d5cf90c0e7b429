"""Simultaneous complex root finding for exact integer polynomials.

Aberth-Ehrlich iteration in configurable-precision arithmetic.  Hard-particle
partition polynomials have huge integer coefficients (hundreds of bits) and
roots spread over several orders of magnitude, so coefficients are kept exact
until they are rounded once at the working precision, and initial guesses are
placed on the Newton-polygon radii rather than a single circle.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp


@dataclass
class ZeroSet:
    """Roots of one polynomial plus a residual certificate."""

    zeros: list                    # python complex, sorted by (re, im)
    residual: float                # max |p(z)| / (||p|| max(1,|z|)^deg)
    degree: int
    multiplicities: list = field(default_factory=list)
    labels: dict = field(default_factory=dict)


def _newton_polygon_radii(coeffs):
    """Initial moduli from the upper convex hull of (k, log|a_k|)."""
    pts = [(k, math.log(abs(c)) if c else -math.inf)
           for k, c in enumerate(coeffs)]
    hull = []
    for k, h in pts:
        if h == -math.inf:
            continue
        while len(hull) >= 2:
            (k1, h1), (k2, h2) = hull[-2], hull[-1]
            if (h - h1) * (k2 - k1) >= (h2 - h1) * (k - k1):
                hull.pop()
            else:
                break
        hull.append((k, h))
    radii = []
    for (k1, h1), (k2, h2) in zip(hull, hull[1:]):
        r = math.exp((h1 - h2) / (k2 - k1))
        radii.extend([r] * (k2 - k1))
    return radii


def _horner2(coeffs, z):
    """Polynomial and derivative values at z (mpmath)."""
    p = coeffs[-1]
    dp = mp.mpc(0)
    for c in reversed(coeffs[:-1]):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def find_zeros(poly, precision_bits=212, tol=1e-13, max_iter=400):
    """All complex zeros of an ExactPolynomial (or coefficient list).

    Each zero z_k satisfies |p(z_k)| <= tol * ||p|| * max(1,|z_k|)^deg, with
    the residual certified by exact rational evaluation for the zeros nearest
    the real axis (where table-level accuracy matters most).
    """
    coeffs = list(getattr(poly, "coeffs", poly))
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    deg = len(coeffs) - 1
    if deg < 1:
        raise ValueError("degree must be at least 1")

    with mp.workprec(max(64, precision_bits)):
        cs = [mp.mpf(c) if isinstance(c, int) else mp.mpf(str(c)) for c in coeffs]
        radii = _newton_polygon_radii(coeffs)
        zs = []
        n = deg
        for j, r in enumerate(radii):
            theta = 2 * math.pi * j * (1 + math.sqrt(5)) / 2 + 0.42
            zs.append(mp.mpc(r * math.cos(theta), r * math.sin(theta)))
        converged = [False] * n
        for _ in range(max_iter):
            done = True
            news = list(zs)
            for k in range(n):
                if converged[k]:
                    continue
                p, dp = _horner2(cs, zs[k])
                if dp == 0:
                    news[k] = zs[k] * (1 + mp.mpf("1e-8")) + mp.mpf("1e-8")
                    done = False
                    continue
                newton = p / dp
                s = mp.mpc(0)
                for j in range(n):
                    if j != k:
                        d = zs[k] - zs[j]
                        if d != 0:
                            s += 1 / d
                denom = 1 - newton * s
                step = newton / denom if denom != 0 else newton
                news[k] = zs[k] - step
                if abs(step) <= tol * max(1, abs(zs[k])):
                    converged[k] = True
                else:
                    done = False
            zs = news
            if done:
                break

        norm = max(abs(c) for c in cs)
        worst = 0.0
        axis_candidates = sorted(range(n), key=lambda k: abs(mp.im(zs[k])))[:20]
        for k in range(n):
            if k in axis_candidates:
                r = _exact_residual(coeffs, zs[k])
            else:
                p, _ = _horner2(cs, zs[k])
                r = abs(p)
            rel = float(r / (norm * max(1, abs(zs[k])) ** deg))
            worst = max(worst, rel)

        out = [complex(mp.re(z), mp.im(z)) for z in zs]

    # real-coefficient symmetrization: snap near-real roots, pair conjugates
    scale = max(abs(z) for z in out)
    snapped = []
    for z in out:
        if abs(z.imag) < 1e-14 * max(1.0, abs(z.real)):
            z = complex(z.real, 0.0)
        snapped.append(z)
    snapped.sort(key=lambda z: (z.real, z.imag))
    zeros, mult = _merge_clusters(snapped, 10 * tol * max(1.0, scale))
    return ZeroSet(zeros=zeros, residual=worst, degree=deg, multiplicities=mult)


def _dyadic(x, bits=128):
    """Exact dyadic rational approximation of an mpmath float."""
    return Fraction(int(mp.floor(x * 2**bits + mp.mpf("0.5"))), 2**bits)


def _exact_residual(int_coeffs, z):
    """|p(z)| via exact rational Horner at the (dyadic-rounded) root."""
    re, im = _dyadic(mp.re(z)), _dyadic(mp.im(z))
    pr, pi = Fraction(0), Fraction(0)
    for c in reversed(int_coeffs):
        pr, pi = pr * re - pi * im + c, pr * im + pi * re
    mag2 = pr * pr + pi * pi
    return mp.sqrt(mp.mpf(mag2.numerator) / mp.mpf(mag2.denominator))


def _merge_clusters(zs, eps):
    zeros, mult = [], []
    for z in zs:
        if zeros and abs(z - zeros[-1]) <= eps:
            mult[-1] += 1
        else:
            zeros.append(z)
            mult.append(1)
    return zeros, mult


def classify_zeros(zset, axis_tol=1e-9, y_branch_re=None):
    """Label zeros: negative real axis, necklace candidates, endpoints.

    z_d(L) is the negative real zero nearest the origin; z_c(L) the complex
    zero of largest real part (upper half plane representative).  Necklace
    candidates are off-axis zeros left of the Y-branch abscissa, which
    defaults to the leftmost real zero when no traced value is supplied.
    """
    zeros = zset.zeros
    if not zeros:
        raise ValueError("empty zero set")
    scale = max(abs(z) for z in zeros)
    on_axis = [z for z in zeros
               if abs(z.imag) <= axis_tol * max(1.0, scale) and z.real < 0]
    labels = {"axis": sorted((z.real for z in on_axis), reverse=True)}
    labels["z_d"] = max((z.real for z in on_axis), default=None)
    upper = [z for z in zeros if z.imag > axis_tol * max(1.0, scale)]
    labels["z_c"] = max(upper, key=lambda z: z.real) if upper else None
    cutoff = y_branch_re
    if cutoff is None and labels["axis"]:
        cutoff = labels["axis"][-1]
    if cutoff is not None:
        labels["necklace"] = [z for z in upper if z.real < cutoff]
    else:
        labels["necklace"] = []
    zset.labels = labels
    return labels
