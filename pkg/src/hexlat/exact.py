"""Thermodynamic-limit functions of the hard-hexagon gas, evaluated exactly.

The partition function per site has a low-density branch kappa_-(z) and a
high-density branch kappa_+(z).  Both are algebraic: kappa_+^6 satisfies a
quartic and kappa_-^2 a degree-12 polynomial whose integer coefficients live
in _algcoeffs.  Off the real-axis cuts each branch is evaluated by homotopy
continuation from a point where its value is unambiguous (z -> 0 for the low
branch, large positive z for the high branch), tracking the nearest
polynomial root along a cut-avoiding path.

Also here: the classical nome-product parametrization of both branches, the
Hauptmodul change of variables with its rescaled-branch identities, the
equimodular curve |kappa_+| = |kappa_-|, and the algebraic density rho_-(z).
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import _algcoeffs as alg
from .puiseux import rho_from_series, sigma_series  # noqa: F401  (re-export)

SQRT5 = math.sqrt(5.0)
Z_CRIT = (11 + 5 * SQRT5) / 2          # positive singular point
Z_NEG = -1 / Z_CRIT                    # negative-axis singular point, -(11-5*sqrt5)/2
KAPPA_AT_CRIT = math.sqrt(27 * 5**-2.5 * Z_CRIT)          # 2.3144003...
KAPPA_LOW_AT_NEG = math.sqrt(16 * 27 * 5**-2.5 / Z_CRIT)  # 0.83475738...
KAPPA_HIGH_MOD_AT_NEG = (3**9 / 5**8 * (1525 - 682 * SQRT5)) ** (1 / 6)  # 0.208689...
RHO_AT_CRIT = (1 - 1 / SQRT5) / 2

_CUT_EPS = 1e-9


# ---------------------------------------------------------------------------
# nome-product parametrization
# ---------------------------------------------------------------------------

def _tail_terms(x, tol=1e-16):
    ax = abs(x)
    if ax >= 0.96:
        raise ValueError("parametric products need |x| <= 0.95")
    if ax == 0:
        return 1
    n = math.log(tol * (1 - ax)) / math.log(ax)
    return max(8, int(n) + 1)


def _prod_over(x, residues, period, nmax):
    """prod over n>=1, r in residues of (1 - x^(period*n - r))."""
    ns = np.arange(1, nmax + 1, dtype=float)
    acc = 1.0
    for r in residues:
        acc *= np.prod(1.0 - np.power(x, period * ns - r))
    return acc


def rogers_ramanujan_g(x, tol=1e-16):
    """prod 1/((1-x^(5n-4))(1-x^(5n-1)))."""
    return 1.0 / _prod_over(x, (4, 1), 5, _tail_terms(x, tol))


def rogers_ramanujan_h(x, tol=1e-16):
    """prod 1/((1-x^(5n-3))(1-x^(5n-2)))."""
    return 1.0 / _prod_over(x, (3, 2), 5, _tail_terms(x, tol))


def euler_q(x, tol=1e-16):
    """prod (1-x^n)."""
    return _prod_over(x, (0,), 1, _tail_terms(x, tol))


@dataclass
class ParametricPoint:
    """Both branch parametrizations evaluated at one nome value x."""

    x: float
    z_high: float
    kappa_high: float    # meaningful for 0 < x < 1
    z_low: float
    kappa_low: float     # meaningful for -1 < x < 0


def eval_products(x, tol=1e-16):
    """Fugacity and per-site partition function from the product formulas.

    For 0 < x < 1 the (z_high, kappa_high) pair covers the high-density
    regime z > z_crit; for -1 < x < 0 the (z_low, kappa_low) pair covers
    0 <= z < z_crit.  Products are truncated once the dropped tail changes
    the result by less than `tol`.
    """
    if not -1 < x < 1:
        raise ValueError("nome parameter must lie in (-1, 1)")
    n = _tail_terms(x, tol)
    g = rogers_ramanujan_g(x, tol)
    h = rogers_ramanujan_h(x, tol)
    q5 = euler_q(x**5, tol)
    z_high = (g / h) ** 5 / x if x != 0 else math.inf
    z_low = -x * (h / g) ** 5
    if x > 0:
        extra = _prod_over(x, (2, 1), 3, n) / _prod_over(x, (0,), 3, n) ** 2
        kappa_high = x ** (-1 / 3) * g**3 * q5**2 / h**2 * extra
    else:
        kappa_high = math.nan
    num = (_prod_over(x, (4,), 6, n) * _prod_over(x, (3,), 6, n) ** 2
           * _prod_over(x, (2,), 6, n))
    den = (_prod_over(x, (5,), 6, n) * _prod_over(x, (1,), 6, n)
           * _prod_over(x, (0,), 6, n) ** 2)
    kappa_low = h**3 * q5**2 / g**2 * num / den
    return ParametricPoint(x, z_high, kappa_high, z_low, kappa_low)


# ---------------------------------------------------------------------------
# algebraic equations and their normalized residuals
# ---------------------------------------------------------------------------

def f_plus(z, kappa):
    """Normalized residual of the high-density algebraic equation at (z, kappa)."""
    cs = alg.c_plus(complex(z))
    v = complex(kappa) ** 6
    acc, scale = 0j, 0.0
    vp = 1 + 0j
    for c in cs:
        acc += c * vp
        scale += abs(c) * abs(vp)
        vp *= v
    return abs(acc) / max(scale, 1e-300)


def f_minus(z, kappa):
    """Normalized residual of the low-density algebraic equation at (z, kappa)."""
    cs = alg.c_minus(complex(z))
    u = complex(kappa) ** 2
    acc, scale = 0j, 0.0
    up = 1 + 0j
    for c in cs:
        acc += c * up
        scale += abs(c) * abs(up)
        up *= u
    return abs(acc) / max(scale, 1e-300)


def f_plus_raw(z, kappa):
    """Unnormalized value of the high-density equation (exact coefficients)."""
    cs = alg.c_plus(z)
    v = kappa ** 6
    acc = 0
    for c in reversed(cs):
        acc = acc * v + c
    return acc


def f_minus_raw(z, kappa):
    cs = alg.c_minus(z)
    u = kappa ** 2
    acc = 0
    for c in reversed(cs):
        acc = acc * u + c
    return acc


def kappa_high_series(z, terms=5):
    """Large-z expansion of the high-density branch (five known terms)."""
    cs = [1, 1 / 3, 5 / 9, 158 / 81, 2348 / 243][:terms]
    w = z ** (-1.0 if not isinstance(z, complex) else -1)
    acc = 0j
    for j, c in enumerate(cs):
        acc += c * complex(z) ** (1 / 3 - j)
    return acc


# ---------------------------------------------------------------------------
# homotopy continuation along cut-avoiding paths
# ---------------------------------------------------------------------------

class ContinuationError(RuntimeError):
    pass


def _solve_poly(ascending):
    """Roots of an ascending coefficient list, orientation chosen for stability.

    When the leading coefficient degenerates (it carries a power of Omega1
    that vanishes at the two real singular points) some roots escape to
    infinity; solving the reciprocal polynomial keeps the finite roots well
    conditioned.  Escaped roots come back as infinities, which no caller
    selects.
    """
    cs = [complex(c) for c in ascending]
    if abs(cs[-1]) >= abs(cs[0]):
        return np.roots(cs[::-1])
    y = np.roots(cs)
    with np.errstate(divide="ignore"):
        u = np.where(y == 0, np.inf, 1.0 / np.where(y == 0, 1.0, y))
    return u


def _roots_at(coeff_fn, z):
    return _solve_poly(coeff_fn(z))


def _extend(coeff_fn, z_from, u_from, z_to, on_accept=None):
    """Track the root continuing u_from as z moves z_from -> z_to.

    Iterative bisection worklist: a step is accepted only when the nearest
    root at the trial point is unambiguous (closer than 0.35 times the
    distance to the runner-up).  Steps shrink without bound near root
    collisions; a genuinely degenerate pair is accepted once the ambiguity
    falls below working precision.
    """
    z, u = z_from, u_from
    stack = [z_to]
    budget = 200000
    while stack:
        budget -= 1
        if budget < 0:
            raise ContinuationError(f"root tracking exhausted near z={z}")
        target = stack[-1]
        roots = _roots_at(coeff_fn, target)
        d = np.abs(roots - u)
        order = np.argsort(d)
        best = d[order[0]]
        second = d[order[1]] if len(d) > 1 else math.inf
        tiny = abs(target - z) < 1e-12 * max(1.0, abs(z))
        if best < 0.35 * second or best < 1e-13 * max(1.0, abs(u)):
            z, u = target, roots[order[0]]
            stack.pop()
            if on_accept is not None:
                on_accept(u)
        elif tiny:
            # root cluster below resolution: every candidate is the branch
            # value to the achievable accuracy, so take the nearest
            if best < 1e-4 * max(1.0, abs(u)):
                z, u = target, roots[order[0]]
                stack.pop()
                if on_accept is not None:
                    on_accept(u)
            else:
                raise ContinuationError(f"root tracking stalled near z={target}")
        else:
            stack.append(0.5 * (z + target))
    return u


def _path_points(a, b, rel=0.12, floor=0.2):
    """Waypoints along a segment, spacing proportional to distance from 0."""
    pts = [a]
    length = abs(b - a)
    if length == 0:
        return pts
    direction = (b - a) / length
    p = a
    for _ in range(200000):
        left = abs(b - p)
        if left <= 1e-14 * max(1.0, abs(b)):
            break
        h = min(left, max(floor, rel * abs(p)))
        p = p + direction * h
        pts.append(p)
    if pts[-1] != b:
        pts.append(b)
    return pts


def _track_path(coeff_fn, path, u0):
    """Continue a root along a polyline of cut-avoiding waypoints."""
    u = u0
    for a, b in zip(path, path[1:]):
        pts = _path_points(a, b)
        for z_prev, z_next in zip(pts, pts[1:]):
            u = _extend(coeff_fn, z_prev, u, z_next)
    return u


def _nth_root_near(u, n, guide):
    """The n-th root of u closest to the guide value."""
    r = abs(u) ** (1.0 / n)
    base = cmath.phase(u) / n
    best, bd = None, math.inf
    for k in range(n):
        cand = r * cmath.exp(1j * (base + 2 * math.pi * k / n))
        d = abs(cand - guide)
        if d < bd:
            best, bd = cand, d
    return best


@dataclass
class AlgebraicBranch:
    """One branch value with its residual certificate and anchor."""

    which: str
    z: complex
    value: complex
    residual: float
    anchor: complex


def _low_path(z):
    """Cut-avoiding polyline from the small-z anchor to the target."""
    z0 = complex(1 / 128)
    if abs(z.imag) < 1e-300 and Z_NEG < z.real < Z_CRIT:
        return [z0, z]
    s = 1.0 if z.imag >= 0 else -1.0
    lift = s * 1j * max(1.0, 0.6 * abs(z))
    return [z0, z0 + lift, z]


def kappa_minus(z, side=1):
    """Low-density per-site partition function, continued from kappa(0) = 1.

    `side` picks the +i0 or -i0 limit when z sits on a real cut
    (z <= z_neg or z >= z_crit).
    """
    z = complex(z)
    if abs(z - Z_CRIT) < 1e-12:
        val = complex(KAPPA_AT_CRIT)
        return AlgebraicBranch("low", z, val, f_minus(Z_CRIT, val), 0j)
    if abs(z - Z_NEG) < 1e-12:
        val = complex(KAPPA_LOW_AT_NEG)
        return AlgebraicBranch("low", z, val, f_minus(Z_NEG, val), 0j)
    on_window = z.imag == 0 and Z_NEG < z.real < Z_CRIT
    if z.imag == 0 and not on_window:
        z = complex(z.real, (1 if side >= 0 else -1) * _CUT_EPS)
    val = _walk_root(lambda w: alg.c_minus(w), _low_path(z), 1.0 + 0j, 2)
    if on_window and abs(val.imag) < 1e-3 * abs(val):
        val = complex(val.real)  # branch is real positive on the open window
    return AlgebraicBranch("low", z, val, f_minus(z, val), 0j)


def _high_path(z):
    z0 = 1e5
    if abs(z.imag) < 1e-300 and z.real > Z_CRIT:
        return [z0, z.real]
    s = 1.0 if z.imag > 0 else -1.0
    radius = max(30.0, 2.0 * abs(z))
    return [z0, s * 1j * radius, z]


def _walk_root(coeff_fn, path, kappa0, root_power):
    """Track kappa itself (not just kappa^n) along a path.

    The n-th root phase is re-anchored at every accepted continuation step,
    so the phase never jumps by more than the step's root rotation.
    """
    state = {"kappa": kappa0}

    def on_accept(u_new):
        state["kappa"] = _nth_root_near(u_new, root_power, state["kappa"])

    u = kappa0 ** root_power
    for a, b in zip(path, path[1:]):
        pts = _path_points(a, b)
        for z_prev, z_next in zip(pts, pts[1:]):
            u = _extend(coeff_fn, z_prev, u, z_next, on_accept=on_accept)
    return state["kappa"]


def kappa_plus(z, side=1):
    """High-density per-site partition function, anchored by its large-z series.

    On the real cut (anywhere left of z_crit) the `side` argument selects the
    +i0 / -i0 limit; at the two singular points the exact algebraic values
    are returned directly.
    """
    z = complex(z)
    if z == 0:
        raise ValueError("high-density branch is singular at z = 0")
    if abs(z - Z_CRIT) < 1e-12:
        val = complex(KAPPA_AT_CRIT)
        return AlgebraicBranch("high", z, val, f_plus(Z_CRIT, val), 0j)
    if abs(z - Z_NEG) < 1e-12:
        phase = cmath.exp(1j * math.pi / 3 * (1 if side >= 0 else -1))
        val = KAPPA_HIGH_MOD_AT_NEG * phase
        return AlgebraicBranch("high", z, val, f_plus(Z_NEG, val), 1e5 + 0j)
    on_window = z.imag == 0 and z.real > Z_CRIT
    if z.imag == 0 and not on_window:
        z = complex(z.real, (1 if side >= 0 else -1) * _CUT_EPS)
    z0 = 1e5
    kappa0 = kappa_high_series(z0)
    val = _walk_root(lambda w: alg.c_plus(w), _high_path(z), kappa0, 6)
    if on_window and abs(val.imag) < 1e-3 * abs(val):
        val = complex(val.real)  # branch is real positive beyond the critical point
    return AlgebraicBranch("high", z, val, f_plus(z, val), z0)


# ---------------------------------------------------------------------------
# Hauptmodul change of variables
# ---------------------------------------------------------------------------

@dataclass
class HauptmodulPoint:
    z: complex
    h: complex
    w_plus: complex
    w_minus: complex
    residual_plus: float
    residual_minus: float


def hauptmodul(z):
    """The modular variable 1728 z Omega1^5 / Omega3^2 (pole at Omega3 roots)."""
    z = complex(z)
    o3 = alg.omega3(z)
    if o3 == 0:
        raise ZeroDivisionError("Hauptmodul pole: Omega3 vanishes here")
    return 1728 * z * alg.omega1(z) ** 5 / o3 ** 2


def hauptmodul_point(z, side=1):
    """H and both rescaled branch variables W = Omega3 (kappa/z)^6 at z."""
    z = complex(z)
    h = hauptmodul(z)
    o3 = alg.omega3(z)
    kp = kappa_plus(z, side).value
    km = kappa_minus(z, side).value
    wp = o3 * (kp / z) ** 6
    wm = o3 * (km / z) ** 6
    rp = _normalized_terms_residual(_p_plus_terms(wp, h))
    rm = _normalized_terms_residual(_p_minus_terms(wm, h))
    return HauptmodulPoint(z, h, wp, wm, rp, rm)


def _normalized_terms_residual(terms):
    tot = sum(terms)
    scale = sum(abs(t) for t in terms)
    return abs(tot) / max(scale, 1e-300)


def _p_plus_terms(w, h):
    return [h * h * w**4,
            2**7 * 3**6 * (27 * h - 32) * w**3,
            2**7 * 3**16 * (45 * h - 32) * w * w,
            -(2**12) * 3**25 * w,
            -(2**12) * 3**33]


def _p_minus_terms(w, h):
    rows = [alg._P11, alg._P10, alg._P9, alg._P8, alg._P7, alg._P6,
            alg._P5, alg._P4, alg._P3, alg._P2]
    scales = [2**12 * 3**7, 2**19 * 3**13, -(2**32) * 3**18, -(2**36) * 3**29,
              2**52 * 3**38, 2**62 * 3**46, -(2**77) * 3**56, -(2**85) * 3**65,
              2**100 * 3**73, -(2**110) * 3**83]
    terms = [h**6 * w**12]
    for i, (row, s) in enumerate(zip(rows, scales)):
        terms.append(s * alg._poly_desc(row, h) * w ** (11 - i))
    terms.append(47 * 2**126 * 3**92 * w)
    terms.append(-(2**132) * 3**99)
    return terms


def _w_relation_terms(wm, wp):
    return [wm**4 * wp**6,
            32 * wm**3 * wp**5 * (1509 * wm - 512 * wp),
            -2 * wm**2 * wp**3 * (wm**3 - 411832512 * wm**2 * wp
                                  + 937623552 * wm * wp**2 - 50331648 * wp**3),
            -32 * wm * wp**2 * (34791 * wm**4 - 182579836224 * wm**3 * wp
                                - 1128985165824 * wm**2 * wp**2
                                - 549067948032 * wm * wp**3
                                + 8589934592 * wp**4),
            (wm**4 - 84091500544 * wm**3 * wp - 1482164797440 * wm**2 * wp**2
             - 8145942347776 * wm * wp**3 + 68719476736 * wp**4)
            * (wm**2 - 172928 * wm * wp + 4096 * wp**2)]


def _p_plus_coeffs(h):
    """Ascending coefficients of the rescaled high-density relation in W."""
    return [-(2**12) * 3**33, -(2**12) * 3**25,
            2**7 * 3**16 * (45 * h - 32), 2**7 * 3**6 * (27 * h - 32), h * h]


def _p_minus_coeffs(h):
    """Ascending coefficients of the rescaled low-density relation in W."""
    rows = [alg._P2, alg._P3, alg._P4, alg._P5, alg._P6, alg._P7,
            alg._P8, alg._P9, alg._P10, alg._P11]
    scales = [-(2**110) * 3**83, 2**100 * 3**73, -(2**85) * 3**65,
              -(2**77) * 3**56, 2**62 * 3**46, 2**52 * 3**38,
              -(2**36) * 3**29, -(2**32) * 3**18, 2**19 * 3**13,
              2**12 * 3**7]
    out = [-(2**132) * 3**99, 47 * 2**126 * 3**92]
    for row, s in zip(rows, scales):
        out.append(s * alg._poly_desc(row, h))
    out.append(h**6)
    return out


def _w_relation_normres(wm, wp):
    """Normalized relation residual; overflowing sheets report as inf."""
    with np.errstate(over="ignore", invalid="ignore"):
        terms = _w_relation_terms(complex(wm), complex(wp))
        if not all(cmath.isfinite(t) for t in terms):
            return math.inf
        r = _normalized_terms_residual(terms)
    return r if r == r else math.inf


def w_relation_residual(z=None, w_minus=None, w_plus=None, side=1):
    """Normalized residual of the relation linking the two rescaled branches.

    With explicit W values the relation is evaluated directly.  Given z, the
    relation couples each computed branch with one sheet of the other
    branch's rescaled equation over the shared Hauptmodul, so the residual
    is taken against the best-matching sheet in both directions; near-zero
    certifies the printed relation against both branch computations.
    """
    if w_minus is not None and w_plus is not None:
        return _w_relation_normres(w_minus, w_plus)
    pt = hauptmodul_point(z, side)
    wp_sheets = _solve_poly(_p_plus_coeffs(pt.h))
    wm_sheets = _solve_poly(_p_minus_coeffs(pt.h))
    r_low = min(_w_relation_normres(pt.w_minus, s) for s in wp_sheets)
    r_high = min(_w_relation_normres(s, pt.w_plus) for s in wm_sheets)
    return max(r_low, r_high)


def rescaled_product_identity_residual(z, kappa):
    """Normalized defect of z^66 P-(W,H) = 12^18 f-(z,k) f-(z,wk) f-(z,w^2 k).

    An identity in both variables; holds for arbitrary complex z, kappa.
    """
    z, kappa = complex(z), complex(kappa)
    h = hauptmodul(z)
    wm = alg.omega3(z) * (kappa / z) ** 6
    lhs_terms = [z**66 * t for t in _p_minus_terms(wm, h)]
    w3 = cmath.exp(2j * math.pi / 3)
    rhs = 12**18
    for rot in (1, w3, w3.conjugate()):
        rhs *= f_minus_raw(z, kappa * rot)
    terms = lhs_terms + [-rhs]
    return _normalized_terms_residual(terms)


# icosahedral symmetry generators of the Hauptmodul in the zeta plane, z = zeta^5
OMEGA5 = cmath.exp(2j * math.pi / 5)
TAU = (1 + SQRT5) / 2


def h5_transform(zeta):
    """Order-five Moebius map leaving the Hauptmodul of zeta^5 invariant."""
    return TAU * (OMEGA5 + (1 - TAU) * zeta) / (OMEGA5 + TAU * zeta)


def axis_crossings():
    """Both real-axis crossings of the per-site equimodular curve, exactly.

    The positive crossing is the positive root of Omega1 (where the
    Hauptmodul vanishes and the branch ratio is forced to unit modulus by
    the stored ratio factorization); the negative one follows from the
    degree-12 Hauptmodul polynomial.  Returns (negative, positive).
    """
    _, z_minus = negative_axis_crossing()
    return z_minus, Z_CRIT


def negative_axis_crossing():
    """Hauptmodul root and fugacity of the equimodular curve's negative crossing.

    Isolates the real root near 1.27 of the stored degree-12 polynomial and
    maps it back to z on the negative axis through the Hauptmodul relation.
    """
    coeffs = alg.P12_H[::-1]
    roots = np.roots([float(c) for c in coeffs])
    real = [r.real for r in roots if abs(r.imag) < 1e-8 and 1.0 < r.real < 1.5]
    if not real:
        raise RuntimeError("expected a real Hauptmodul root in (1, 1.5)")
    h_star = _polish_real_root([float(c) for c in alg.P12_H], real[0])

    def f(x):
        return hauptmodul(x).real - h_star

    lo, hi = -6.5, -5.5
    flo = f(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if flo * fm <= 0:
            hi = mid
        else:
            lo, flo = mid, fm
    return h_star, 0.5 * (lo + hi)


def _polish_real_root(asc_coeffs, x0, iters=60):
    """Newton polish with exact integer coefficients in float horner."""
    x = x0
    for _ in range(iters):
        p, dp = 0.0, 0.0
        for c in reversed(asc_coeffs):
            dp = dp * x + p
            p = p * x + float(c)
        if dp == 0:
            break
        step = p / dp
        x -= step
        if abs(step) < 1e-15 * max(1.0, abs(x)):
            break
    return x


# ---------------------------------------------------------------------------
# equimodular curve of the two branches
# ---------------------------------------------------------------------------

def _branch_row(coeff_fn, u_anchor_z, u_anchor, xs, y, root_power, kappa_guide):
    """Moduli of a branch along one horizontal grid row (Im z = y)."""
    out = np.empty(len(xs))
    z_first = complex(xs[0], y)
    u = _track_path(coeff_fn, [u_anchor_z, complex(u_anchor_z.real, y), z_first],
                    u_anchor)
    out[0] = abs(u) ** (1.0 / root_power)
    for i in range(1, len(xs)):
        u = _extend(coeff_fn, complex(xs[i - 1], y), u, complex(xs[i], y))
        out[i] = abs(u) ** (1.0 / root_power)
    return out


def baxter_equimodular_curve(resolution=0.25, box=(-9.0, 13.5, 0.12, 13.0),
                             refine_tol=1e-10):
    """Points of the |kappa_+| = |kappa_-| locus, upper half plane.

    Returns (points, crossings): curve points as complex values (conjugates
    implied), and the two real-axis crossings (negative, positive).
    Sign changes of |kappa_+| - |kappa_-| on a rectangular grid are refined
    by bisection along grid edges.
    """
    x0, x1, y0, y1 = box
    xs = np.arange(x0, x1 + resolution / 2, resolution)
    ys = np.arange(y0, y1 + resolution / 2, resolution)
    km0 = 1.0 + 0j
    kp0 = kappa_high_series(1e5) ** 6
    gap = np.empty((len(ys), len(xs)))
    for i, y in enumerate(ys):
        low = _branch_row(lambda w: alg.c_minus(w), complex(1 / 128), km0,
                          xs, y, 2, None)
        high = _branch_row(lambda w: alg.c_plus(w), complex(1e5), kp0,
                           xs, y, 6, None)
        gap[i] = high - low
    pts = []
    for i, y in enumerate(ys):
        for j in range(len(xs) - 1):
            if gap[i, j] == 0 or gap[i, j] * gap[i, j + 1] < 0:
                z = _bisect_gap(complex(xs[j], y), complex(xs[j + 1], y),
                                refine_tol)
                pts.append(z)
    for j, x in enumerate(xs):
        for i in range(len(ys) - 1):
            if gap[i, j] * gap[i + 1, j] < 0:
                z = _bisect_gap(complex(x, ys[i]), complex(x, ys[i + 1]),
                                refine_tol)
                pts.append(z)
    # crossings come from the algebra; require the numeric gap to bracket
    # them (the positive one needs a wide bracket: the branch collision
    # there makes the gap contact high order and noisy up close)
    crossings = axis_crossings()
    for x, halfwidth in zip(crossings, (0.05, 0.7)):
        lo = _gap_at(complex(x - halfwidth, 0.02))
        hi = _gap_at(complex(x + halfwidth, 0.02))
        if not (lo < 0 < hi or hi < 0 < lo):
            raise RuntimeError("numeric curve does not bracket an axis crossing")
    return pts, crossings


def _gap_at(z, side=1):
    kp = kappa_plus(z, side).value
    km = kappa_minus(z, side).value
    return abs(kp) - abs(km)


def _bisect_gap(a, b, tol):
    fa = _gap_at(a)
    for _ in range(200):
        if abs(b - a) < tol:
            break
        m = 0.5 * (a + b)
        fm = _gap_at(m)
        if fa * fm <= 0:
            b = m
        else:
            a, fa = m, fm
    return 0.5 * (a + b)


def _axis_crossing(x_lo, x_hi, eps=1e-7):
    """Real-axis crossing of the branch-modulus gap, via the +i eps limit."""
    f = lambda x: _gap_at(complex(x, eps))
    flo = f(x_lo)
    for _ in range(100):
        mid = 0.5 * (x_lo + x_hi)
        fm = f(mid)
        if flo * fm <= 0:
            x_hi = mid
        else:
            x_lo, flo = mid, fm
        if x_hi - x_lo < 1e-11:
            break
    return 0.5 * (x_lo + x_hi)


# ---------------------------------------------------------------------------
# low-density particle density
# ---------------------------------------------------------------------------

@dataclass
class DensityBranch:
    z: complex
    rho: complex
    residual: float
    negative_on_axis: bool


def _density_coeff_fn(z):
    rows = alg.density_poly_coeffs()
    out = []
    for row in rows:
        acc = 0j
        for c in reversed(row):
            acc = acc * z + c
        out.append(acc)
    return out


def rho_minus(z, side=1):
    """Physical low-density density branch, continued from rho(0) = 0."""
    z = complex(z)
    if abs(z - Z_CRIT) < 1e-12:
        return DensityBranch(z, complex(RHO_AT_CRIT), 0.0, False)
    if abs(z - Z_NEG) < 1e-12:
        raise ValueError("density diverges at the negative singular point")
    on_window = z.imag == 0 and Z_NEG < z.real < Z_CRIT
    if z.imag == 0 and not on_window:
        z = complex(z.real, (1 if side >= 0 else -1) * _CUT_EPS)
    roots = _roots_at(_density_coeff_fn, 1 / 128)
    rho0 = roots[np.argmin(np.abs(roots))]
    rho = _track_path(_density_coeff_fn, _low_path(z), rho0)
    if on_window and abs(rho.imag) < 1e-3 * max(abs(rho), 1e-6):
        rho = complex(rho.real)
    cs = _density_coeff_fn(z)
    acc, scale, rp = 0j, 0.0, 1 + 0j
    for c in cs:
        acc += c * rp
        scale += abs(c) * abs(rp)
        rp *= rho
    res = abs(acc) / max(scale, 1e-300)
    neg = (abs(z.imag) < 1e-300 and Z_NEG < z.real < 0
           and rho.real < 0 and abs(rho.imag) < 1e-9)
    return DensityBranch(z, rho, res, neg)
